use crate::scalar::Scalar;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

/// A monomial: generator indices in order.
pub type Word = Vec<u8>;

/// Linear combination of monomials. Elements produced by a presentation keep
/// every stored word irreducible; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct AlgElem {
    terms: BTreeMap<Word, Scalar>,
}

impl AlgElem {
    pub fn zero() -> Self {
        AlgElem::default()
    }

    pub fn one() -> Self {
        AlgElem::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        AlgElem::term(Vec::new(), c)
    }

    pub fn term(w: Word, c: Scalar) -> Self {
        let mut e = AlgElem::zero();
        e.add_term(w, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, Scalar)> {
        self.terms.into_iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[u8]) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The scalar value if the element is a multiple of 1.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Scalar, o: &AlgElem) {
        for (w, d) in &o.terms {
            self.add_term(w.clone(), c.mul(d));
        }
    }

    pub fn add(&self, o: &AlgElem) -> AlgElem {
        let mut r = self.clone();
        r.add_scaled(&Scalar::one(), o);
        r
    }

    pub fn sub(&self, o: &AlgElem) -> AlgElem {
        let mut r = self.clone();
        r.add_scaled(&-Scalar::one(), o);
        r
    }

    pub fn neg(&self) -> AlgElem {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, c: &Scalar) -> AlgElem {
        if c.is_zero() {
            return AlgElem::zero();
        }
        AlgElem {
            terms: self.terms.iter().map(|(w, d)| (w.clone(), c.mul(d))).collect(),
        }
    }

    pub fn map_coeffs<F: Fn(&Scalar) -> Scalar>(&self, f: F) -> AlgElem {
        let mut r = AlgElem::zero();
        for (w, c) in &self.terms {
            r.add_term(w.clone(), f(c));
        }
        r
    }
}
