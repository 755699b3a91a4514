//! Exact arithmetic in ℚ(i)(s) where `s` is the square root of the deformation
//! parameter `q`. The involution conjugates coefficients and fixes `s`.

mod gauss;
mod poly;

pub use gauss::GaussRat;
pub use poly::Poly;

use num_bigint::BigInt;
use num_rational::BigRational;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at s = {0}")]
    PoleAtEvaluationPoint(String),
}

/// Canonical reduced fraction `num/den` of polynomials in `s`.
/// `den` is monic, `gcd(num, den) = 1`, and zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Scalar {
    fn from_parts(num: Poly, den: Poly) -> Scalar {
        if num.is_zero() {
            return Scalar::zero();
        }
        // Cheap path: strip common powers of s before any gcd.
        let kn = num.low_degree().unwrap();
        let kd = den.low_degree().unwrap();
        let k = kn.min(kd);
        let (num, den) = if k > 0 {
            (num.shift_down(k), den.shift_down(k))
        } else {
            (num, den)
        };
        if den.is_monomial() {
            let lc = den.lead().unwrap().clone();
            if lc.is_one() {
                return Scalar { num, den };
            }
            let inv = lc.inv().unwrap();
            return Scalar {
                num: num.scale(&inv),
                den: den.scale(&inv),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.divrem(&g).0, den.divrem(&g).0)
        };
        let inv = den.lead().unwrap().inv().unwrap();
        Scalar {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn zero() -> Scalar {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Scalar {
        Scalar::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Scalar {
        Scalar {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::constant(GaussRat::from_int(n))
    }

    pub fn from_frac(p: i64, r: i64) -> Scalar {
        Scalar::constant(GaussRat::from_frac(p, r))
    }

    pub fn from_rational(r: BigRational) -> Scalar {
        Scalar::constant(GaussRat::from_rational(r))
    }

    pub fn i() -> Scalar {
        Scalar::constant(GaussRat::i())
    }

    /// The variable `s = q^(1/2)`.
    pub fn s() -> Scalar {
        Scalar::s_pow(1)
    }

    /// `s^k` for any integer `k`.
    pub fn s_pow(k: i64) -> Scalar {
        let m = Poly::monomial(GaussRat::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            Scalar {
                num: m,
                den: Poly::one(),
            }
        } else {
            Scalar {
                num: Poly::one(),
                den: m,
            }
        }
    }

    /// `q^k = s^(2k)`.
    pub fn q_pow(k: i64) -> Scalar {
        Scalar::s_pow(2 * k)
    }

    pub fn q() -> Scalar {
        Scalar::q_pow(1)
    }

    /// The polynomial `p(s)` as a scalar.
    pub fn from_poly(p: Poly) -> Scalar {
        Scalar::from_parts(p, Poly::one())
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.degree() == Some(0) && self.num.degree() == Some(0) && self.num.0[0].is_one()
    }

    /// True when the value does not depend on `s`.
    pub fn is_constant(&self) -> bool {
        self.den.degree() == Some(0) && self.num.degree().is_none_or(|d| d == 0)
    }

    pub fn as_constant(&self) -> Option<GaussRat> {
        if self.is_zero() {
            Some(GaussRat::zero())
        } else if self.is_constant() {
            Some(self.num.0[0].clone())
        } else {
            None
        }
    }

    /// `c·s^k` form, when the value is a single Laurent term.
    pub fn as_laurent_monomial(&self) -> Option<(GaussRat, i64)> {
        if self.is_zero() || !self.num.is_monomial() || !self.den.is_monomial() {
            return None;
        }
        let kn = self.num.low_degree().unwrap() as i64;
        let kd = self.den.low_degree().unwrap() as i64;
        Some((self.num.lead().unwrap().clone(), kn - kd))
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Scalar::from_parts(self.num.add(&o.num), self.den.clone());
        }
        if self.den.is_monomial() && o.den.is_monomial() {
            // Both are Laurent polynomials: align on the larger power of s.
            let a = self.den.degree().unwrap();
            let b = o.den.degree().unwrap();
            let k = a.max(b);
            let n = self.num.shift_up(k - a).add(&o.num.shift_up(k - b));
            return Scalar::from_parts(n, Poly::monomial(GaussRat::one(), k));
        }
        let n = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        Scalar::from_parts(n, self.den.mul(&o.den))
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        Scalar::from_parts(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::from_parts(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, k: i64) -> Result<Scalar, ScalarError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// The *-involution: conjugate coefficients, fix `s`.
    pub fn star(&self) -> Scalar {
        Scalar {
            num: self.num.conj(),
            den: self.den.conj(),
        }
    }

    /// `[n]_{q^k} = 1 + q^k + … + q^{k(n-1)}`.
    pub fn qint(n: u32, k: i64) -> Scalar {
        let mut acc = Scalar::zero();
        for j in 0..n as i64 {
            acc = &acc + &Scalar::q_pow(k * j);
        }
        acc
    }

    /// Exact evaluation at `s = s0`.
    pub fn specialize(&self, s0: &BigRational) -> Result<GaussRat, ScalarError> {
        let x = GaussRat::from_rational(s0.clone());
        let d = self.den.eval(&x);
        if d.is_zero() {
            return Err(ScalarError::PoleAtEvaluationPoint(s0.to_string()));
        }
        Ok(self.num.eval(&x).div(&d).unwrap())
    }

    /// Replace `s` by a concrete rational value and keep the result as a scalar.
    pub fn substitute(&self, s0: &BigRational) -> Result<Scalar, ScalarError> {
        self.specialize(s0).map(Scalar::constant)
    }

    /// Square root with positive leading coefficient, when it lies in the field.
    pub fn sqrt(&self) -> Option<Scalar> {
        let n = self.num.sqrt()?;
        let d = self.den.sqrt()?;
        Some(Scalar::from_parts(n, d))
    }

    /// True when the value has one term whose coefficient is negative.
    pub(crate) fn is_negative_monomial(&self) -> bool {
        self.as_laurent_monomial()
            .is_some_and(|(c, _)| c.is_atomic() && c.is_negative())
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::from_int(n)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Scalar {
        Scalar::from_rational(BigRational::from_integer(n))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                Scalar::$m(self, o)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                Scalar::$m(&self, &o)
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

fn fmt_q_power(k: i64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if k % 2 == 0 {
        match k / 2 {
            1 => write!(f, "q"),
            e => write!(f, "q^{}", e),
        }
    } else {
        write!(f, "q^({}/2)", k)
    }
}

/// Prints a Laurent polynomial (`p(s)/s^shift`) in powers of q, ascending.
/// Terms in order of increasing `|exponent|`, the lower exponent first on ties.
fn fmt_laurent(p: &Poly, shift: i64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut terms: Vec<(i64, &GaussRat)> = p
        .0
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k as i64 - shift, c))
        .collect();
    terms.sort_by_key(|&(e, _)| (e.abs(), e));
    let mut first = true;
    for (e, c) in terms {
        let neg = c.is_atomic() && c.is_negative();
        let c_abs = if neg { c.neg() } else { c.clone() };
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        first = false;
        if e == 0 {
            write!(f, "{}", c_abs)?;
        } else {
            if !c_abs.is_one() {
                write!(f, "{} ", c_abs)?;
            }
            fmt_q_power(e, f)?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_monomial() {
            let shift = self.den.degree().unwrap() as i64;
            return fmt_laurent(&self.num, shift, f);
        }
        // Print as (p)/(r) with both sides Laurent-free: shift the lowest
        // power of s out of the denominator first.
        write!(f, "(")?;
        fmt_laurent(&self.num, 0, f)?;
        write!(f, ")/(")?;
        fmt_laurent(&self.den, 0, f)?;
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_examples() {
        let q = Scalar::q();
        assert_eq!(&q * &q, Scalar::q_pow(2));
        let d = Scalar::one() - Scalar::q_pow(-2);
        assert_eq!(d.to_string(), "1 - q^-2");
        let iq = Scalar::i() * q.clone();
        assert_eq!(&iq * &iq, -Scalar::q_pow(2));
    }

    #[test]
    fn qint_values() {
        assert_eq!(Scalar::qint(2, 2), Scalar::one() + Scalar::q_pow(2));
        assert_eq!(Scalar::qint(1, -2), Scalar::one());
        assert_eq!(Scalar::qint(0, 5), Scalar::zero());
        assert_eq!(
            Scalar::qint(3, -2),
            Scalar::one() + Scalar::q_pow(-2) + Scalar::q_pow(-4)
        );
    }

    #[test]
    fn star_fixes_s() {
        assert_eq!(Scalar::i().star(), -Scalar::i());
        let x = Scalar::q() + Scalar::i() * Scalar::q_pow(3);
        assert_eq!(x.star(), Scalar::q() - Scalar::i() * Scalar::q_pow(3));
        assert_eq!(Scalar::s().star(), Scalar::s());
    }

    #[test]
    fn specialize_examples() {
        let two = BigRational::from_integer(2.into());
        assert_eq!(Scalar::q_pow(2).specialize(&two).unwrap(), GaussRat::from_int(16));
        let one = BigRational::from_integer(1.into());
        let x = Scalar::one().div(&(Scalar::one() + Scalar::q_pow(2))).unwrap();
        assert_eq!(x.specialize(&one).unwrap(), GaussRat::from_frac(1, 2));
        let y = Scalar::one().div(&(Scalar::q() - Scalar::one())).unwrap();
        assert!(matches!(
            y.specialize(&one),
            Err(ScalarError::PoleAtEvaluationPoint(_))
        ));
    }

    #[test]
    fn reduced_fraction_is_canonical() {
        let a = Scalar::q() - Scalar::one();
        let b = Scalar::q_pow(2) - Scalar::one();
        let r = a.div(&b).unwrap();
        let expect = Scalar::one().div(&(Scalar::q() + Scalar::one())).unwrap();
        assert_eq!(r, expect);
        assert!(r.denom().is_monic());
        assert_eq!(r.to_string(), "(1)/(1 + q)");
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(Scalar::one().div(&Scalar::zero()), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn square_roots() {
        assert_eq!(Scalar::q_pow(2).sqrt(), Some(Scalar::q()));
        assert_eq!(Scalar::q_pow(3).sqrt(), Some(Scalar::s_pow(3)));
        assert_eq!((Scalar::from_int(2) * Scalar::q_pow(2)).sqrt(), None);
        assert_eq!(Scalar::from_int(-1).sqrt(), Some(Scalar::i()));
        assert_eq!(Scalar::from_int(-2).sqrt(), None);
        let p = (Scalar::one() + Scalar::q()) * (Scalar::one() + Scalar::q());
        assert_eq!(p.sqrt(), Some(Scalar::one() + Scalar::q()));
    }

    #[test]
    fn half_powers_print() {
        assert_eq!(Scalar::s_pow(-1).to_string(), "q^(-1/2)");
        assert_eq!((Scalar::from_int(-2) * Scalar::s_pow(3)).to_string(), "-2 q^(3/2)");
    }
}
