use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// A Gaussian rational `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn zero() -> Self {
        GaussRat::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        GaussRat::from_int(1)
    }

    pub fn i() -> Self {
        GaussRat::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_rational(r: BigRational) -> Self {
        GaussRat::new(r, BigRational::zero())
    }

    pub fn from_frac(p: i64, r: i64) -> Self {
        GaussRat::from_rational(BigRational::new(BigInt::from(p), BigInt::from(r)))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        GaussRat::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Self) -> Self {
        GaussRat::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn neg(&self) -> Self {
        GaussRat::new(-&self.re, -&self.im)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussRat::new(&self.re * &o.re, BigRational::zero());
        }
        GaussRat::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -&self.im)
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(GaussRat::new(self.re.recip(), BigRational::zero()));
        }
        let n = &self.re * &self.re + &self.im * &self.im;
        Some(GaussRat::new(&self.re / &n, -&self.im / &n))
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|v| self.mul(&v))
    }

    /// True when the first nonzero component is negative.
    pub fn is_negative(&self) -> bool {
        if !self.re.is_zero() {
            self.re.is_negative()
        } else {
            self.im.is_negative()
        }
    }

    /// Rational square root of a nonnegative real value, if it exists.
    pub fn sqrt_nonneg_real(&self) -> Option<Self> {
        if !self.im.is_zero() || self.re.is_negative() {
            return None;
        }
        let n = self.re.numer();
        let d = self.re.denom();
        let rn = n.sqrt();
        let rd = d.sqrt();
        if &(&rn * &rn) == n && &(&rd * &rd) == d {
            Some(GaussRat::from_rational(BigRational::new(rn, rd)))
        } else {
            None
        }
    }

    /// Square root in `ℚ(i)` with positive real part (positive imaginary
    /// part when the root is imaginary), if it exists.
    pub fn sqrt(&self) -> Option<Self> {
        if self.im.is_zero() {
            if !self.re.is_negative() {
                return self.sqrt_nonneg_real();
            }
            let r = GaussRat::from_rational(-self.re.clone()).sqrt_nonneg_real()?;
            return Some(r.mul(&GaussRat::i()));
        }
        // (x + iy)² = a + ib with x² = (a + |z|)/2 and y = b/(2x).
        let norm = GaussRat::from_rational(&self.re * &self.re + &self.im * &self.im).sqrt_nonneg_real()?;
        let two = BigRational::from_integer(2.into());
        let x = GaussRat::from_rational((&self.re + &norm.re) / &two).sqrt_nonneg_real()?;
        let y = &self.im / (&two * &x.re);
        Some(GaussRat::new(x.re, y))
    }

    /// True when the value prints as a single signed token (no `+` inside).
    pub(crate) fn is_atomic(&self) -> bool {
        self.re.is_zero() || self.im.is_zero()
    }
}

fn fmt_rat(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => fmt_rat(&self.re, f),
            (true, false) => {
                if self.im.is_one() {
                    write!(f, "i")
                } else if (-&self.im).is_one() {
                    write!(f, "-i")
                } else {
                    fmt_rat(&self.im, f)?;
                    write!(f, " i")
                }
            }
            (false, false) => {
                write!(f, "(")?;
                fmt_rat(&self.re, f)?;
                let im_abs = self.im.abs();
                write!(f, " {} ", if self.im.is_negative() { "-" } else { "+" })?;
                if im_abs.is_one() {
                    write!(f, "i")?;
                } else {
                    fmt_rat(&im_abs, f)?;
                    write!(f, " i")?;
                }
                write!(f, ")")
            }
        }
    }
}
