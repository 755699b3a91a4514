//! The algebra of 2×2 matrices over the Gaussian rationals, graded in degree 0.

use super::ModelError;
use crate::ncalg::{render_terms, StarAlgebra};
use crate::scalar::{GaussRat, Scalar};

/// A 2×2 matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2(pub [GaussRat; 4]);

impl Mat2 {
    pub fn zero() -> Mat2 {
        Mat2(std::array::from_fn(|_| GaussRat::zero()))
    }

    pub fn identity() -> Mat2 {
        Mat2::diag(GaussRat::one(), GaussRat::one())
    }

    pub fn diag(a: GaussRat, d: GaussRat) -> Mat2 {
        Mat2([a, GaussRat::zero(), GaussRat::zero(), d])
    }

    /// The matrix unit `E_ij` with `i, j ∈ {1, 2}`.
    pub fn unit(i: usize, j: usize) -> Mat2 {
        let mut m = Mat2::zero();
        m.0[2 * (i - 1) + (j - 1)] = GaussRat::one();
        m
    }

    pub fn from_ints(a: [i64; 4]) -> Mat2 {
        Mat2(a.map(GaussRat::from_int))
    }

    pub fn entry(&self, i: usize, j: usize) -> &GaussRat {
        &self.0[2 * (i - 1) + (j - 1)]
    }

    pub fn add(&self, o: &Mat2) -> Mat2 {
        Mat2(std::array::from_fn(|k| self.0[k].add(&o.0[k])))
    }

    pub fn neg(&self) -> Mat2 {
        Mat2(std::array::from_fn(|k| self.0[k].neg()))
    }

    pub fn sub(&self, o: &Mat2) -> Mat2 {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &GaussRat) -> Mat2 {
        Mat2(std::array::from_fn(|k| self.0[k].mul(c)))
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let m = |i: usize, j: usize| self.0[2 * i].mul(&o.0[j]).add(&self.0[2 * i + 1].mul(&o.0[2 + j]));
        Mat2([m(0, 0), m(0, 1), m(1, 0), m(1, 1)])
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Mat2 {
        let a = &self.0;
        Mat2([a[0].conj(), a[2].conj(), a[1].conj(), a[3].conj()])
    }

    pub fn commutator(&self, o: &Mat2) -> Mat2 {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn trace(&self) -> GaussRat {
        self.0[0].add(&self.0[3])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(GaussRat::is_zero)
    }
}

/// `M₂(ℂ)` with the conjugate transpose as star; `q = 1`.
#[derive(Clone, Debug, Default)]
pub struct M2Algebra;

fn constant(c: &Scalar) -> crate::Result<GaussRat> {
    c.as_constant()
        .ok_or_else(|| ModelError::NotConstant(c.to_string()).into())
}

impl StarAlgebra for M2Algebra {
    type Elem = Mat2;

    fn zero(&self) -> Mat2 {
        Mat2::zero()
    }

    fn one(&self) -> Mat2 {
        Mat2::identity()
    }

    fn is_zero(&self, x: &Mat2) -> bool {
        x.is_zero()
    }

    fn add(&self, x: &Mat2, y: &Mat2) -> Mat2 {
        x.add(y)
    }

    fn neg(&self, x: &Mat2) -> Mat2 {
        x.neg()
    }

    fn scale(&self, c: &Scalar, x: &Mat2) -> crate::Result<Mat2> {
        Ok(x.scale(&constant(c)?))
    }

    fn mul(&self, x: &Mat2, y: &Mat2) -> crate::Result<Mat2> {
        Ok(x.mul(y))
    }

    fn star(&self, x: &Mat2) -> crate::Result<Mat2> {
        Ok(x.adjoint())
    }

    fn grade_components(&self, x: &Mat2) -> Vec<(i32, Mat2)> {
        if x.is_zero() {
            Vec::new()
        } else {
            vec![(0, x.clone())]
        }
    }

    fn render(&self, x: &Mat2) -> String {
        let labels = ["E11", "E12", "E21", "E22"];
        render_terms(
            x.0.iter()
                .zip(labels)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, l)| (l.to_string(), Scalar::constant(c.clone()))),
        )
    }

    fn s_value(&self) -> Scalar {
        Scalar::one()
    }
}
