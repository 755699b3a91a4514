use super::gauss::GaussRat;

/// Dense univariate polynomial in `s`, coefficients in ascending degree.
/// The zero polynomial is the empty vector; otherwise the last entry is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Poly(pub Vec<GaussRat>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: GaussRat) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly(vec![c])
        }
    }

    pub fn one() -> Self {
        Poly::constant(GaussRat::one())
    }

    pub fn monomial(c: GaussRat, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![GaussRat::zero(); k + 1];
        v[k] = c;
        Poly(v)
    }

    fn trim(mut v: Vec<GaussRat>) -> Self {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        Poly(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&GaussRat> {
        self.0.last()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    pub fn is_monomial(&self) -> bool {
        self.0.iter().filter(|c| !c.is_zero()).count() == 1
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            v.push(match (self.0.get(k), o.0.get(k)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::trim(v)
    }

    pub fn neg(&self) -> Self {
        Poly(self.0.iter().map(|c| c.neg()).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![GaussRat::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                v[i + j] = v[i + j].add(&a.mul(b));
            }
        }
        Poly::trim(v)
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|a| a.mul(c)).collect())
    }

    /// Multiply by `s^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut v = vec![GaussRat::zero(); k];
        v.extend(self.0.iter().cloned());
        Poly(v)
    }

    /// Divide by `s^k`; the caller guarantees divisibility.
    pub fn shift_down(&self, k: usize) -> Self {
        Poly(self.0[k.min(self.0.len())..].to_vec())
    }

    pub fn conj(&self) -> Self {
        Poly(self.0.iter().map(|c| c.conj()).collect())
    }

    /// Euclidean division; `d` must be nonzero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc_inv = d.lead().unwrap().inv().unwrap();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![GaussRat::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = r[k].mul(&lc_inv);
            if c.is_zero() {
                continue;
            }
            for (j, b) in d.0.iter().enumerate() {
                let idx = k - dd + j;
                r[idx] = r[idx].sub(&c.mul(b));
            }
            q[k - dd] = c;
        }
        r.truncate(dd);
        (Poly::trim(q), Poly::trim(r))
    }

    pub fn make_monic(&self) -> Self {
        match self.lead() {
            None => Poly::zero(),
            Some(lc) => self.scale(&lc.inv().unwrap()),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.make_monic();
        }
        a.make_monic()
    }

    pub fn eval(&self, x: &GaussRat) -> GaussRat {
        let mut acc = GaussRat::zero();
        for c in self.0.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Square root whose leading coefficient is the canonical root of the
    /// leading coefficient, when one exists.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let deg = self.degree().unwrap();
        if deg % 2 == 1 {
            return None;
        }
        let m = deg / 2;
        let top = self.lead().unwrap().sqrt()?;
        let two_top_inv = top.add(&top).inv()?;
        let mut r = vec![GaussRat::zero(); m + 1];
        r[m] = top;
        for k in 1..=m {
            // coefficient of s^(2m-k) in r^2 determines r[m-k]
            let idx = 2 * m - k;
            let mut acc = self.0[idx].clone();
            for i in (m - k + 1)..=m {
                let j = idx as isize - i as isize;
                if j > (m - k) as isize && (j as usize) <= m {
                    acc = acc.sub(&r[i].mul(&r[j as usize]));
                }
            }
            r[m - k] = acc.mul(&two_top_inv);
        }
        let root = Poly::trim(r);
        if root.mul(&root) == *self {
            Some(root)
        } else {
            None
        }
    }
}
