//! Built-in geometries: 2×2 matrices, the standard q-sphere inside quantum
//! SU(2), and the quantum disk (with and without `w⁻¹`), together with their
//! test sets, Chern bundles and model-specific checks.

pub mod disk;
pub mod m2;
pub mod mat2;
pub mod sphere;

use crate::bimod::{Ctx, ModElem, Symbols};
use crate::calculus::{check_d_consistency, Calculus};
use crate::ncalg::{check_presentation, AlgElem, Presentation, StarAlgebra};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::spectral::{SpectralTriple, State};
use mat2::{M2Algebra, Mat2};
use std::collections::BTreeMap;
use thiserror::Error;

type R<T> = crate::Result<T>;

pub const SU2_PRES: &str = include_str!("../../presentations/su2.pres");
pub const DISK_PRES: &str = include_str!("../../presentations/disk.pres");
pub const DISK_LOCALIZED_PRES: &str = include_str!("../../presentations/disk_localized.pres");
pub const M2_PRES: &str = include_str!("../../presentations/m2.pres");

pub const MODEL_NAMES: [&str; 4] = ["m2", "qsphere", "qdisk", "qdisk-localized"];
pub const BUNDLE_NAMES: [&str; 5] = ["m2-omega10", "qsphere-splus", "qsphere-omega10", "qdisk-omega10", "qdisk-splus"];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("parameter not representable: {0}")]
    ParameterNotRepresentable(String),
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),
    #[error("expected a constant scalar, got {0}")]
    NotConstant(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    M2,
    QSphere,
    QDisk,
    QDiskLocalized,
}

/// A geometry: algebra, calculus, and (when present) a spectral triple.
pub struct Model<A: StarAlgebra> {
    pub name: String,
    pub kind: Kind,
    pub alg: A,
    pub syms: Symbols,
    pub cal: Calculus<A::Elem>,
    pub triple: Option<SpectralTriple<A>>,
    pub params: BTreeMap<String, Scalar>,
}

impl<A: StarAlgebra> Model<A> {
    pub fn ctx(&self) -> Ctx<'_, A> {
        Ctx::new(&self.alg, &self.syms)
    }

    fn base_report(&self, cutoff: u32) -> Report {
        let mut rep = Report::new(&self.name);
        rep.cutoff = Some(cutoff);
        rep.parameters = self.params.iter().map(|(k, v)| (k.clone(), v.to_string())).collect();
        rep
    }
}

/// Parse `name=expr` assignments, evaluating each right-hand side in `alg`.
pub fn parse_params(alg: &Presentation, raw: &[(String, String)], allowed: &[&str]) -> R<BTreeMap<String, Scalar>> {
    let mut out = BTreeMap::new();
    for (k, v) in raw {
        if !allowed.contains(&k.as_str()) {
            return Err(ModelError::UnknownParameter(k.clone()).into());
        }
        let e = alg.parse_expr(v)?;
        let c = e
            .as_scalar()
            .ok_or_else(|| ModelError::ParameterNotRepresentable(format!("{} = {} is not a scalar", k, v)))?;
        out.insert(k.clone(), c);
    }
    Ok(out)
}

/// Split `name=value`.
pub fn split_param(s: &str) -> Option<(String, String)> {
    let (k, v) = s.split_once('=')?;
    let k = k.trim();
    (!k.is_empty()).then(|| (k.to_string(), v.trim().to_string()))
}

/// The normalized trace on `M₂`; it is tracial, so `ς = id`.
pub struct MatrixTrace;

impl State<M2Algebra> for MatrixTrace {
    fn name(&self) -> &str {
        "trace"
    }

    fn eval(&self, _alg: &M2Algebra, x: &Mat2) -> R<Scalar> {
        Ok(Scalar::constant(x.trace()))
    }

    fn modular(&self, _alg: &M2Algebra, x: &Mat2, _inverse: bool) -> R<Mat2> {
        Ok(x.clone())
    }
}

/// Parse an element of `M₂` written in the matrix units `E11 … E22`.
pub fn parse_m2(text: &str) -> R<Mat2> {
    let p = Presentation::parse_with(M2_PRES, Scalar::one())?;
    let e = p.parse_expr(text)?;
    let names = ["E11", "E12", "E21", "E22"];
    let units: Vec<Mat2> = p
        .generators()
        .iter()
        .map(|g| {
            let k = names.iter().position(|n| *n == g.name).expect("matrix unit");
            Mat2::unit(k / 2 + 1, k % 2 + 1)
        })
        .collect();
    let mut acc = Mat2::zero();
    for (w, c) in e.terms() {
        let m = w.iter().fold(Mat2::identity(), |m, &g| m.mul(&units[g as usize]));
        let c = c.as_constant().ok_or_else(|| ModelError::NotConstant(c.to_string()))?;
        acc = acc.add(&m.scale(&c));
    }
    Ok(acc)
}

/// A model of either algebra type.
pub enum AnyModel {
    M2(Box<Model<M2Algebra>>),
    Presented(Box<Model<Presentation>>),
}

impl AnyModel {
    /// Build a model by name. `s` fixes `s = q^{1/2}` to a number; `None` keeps it symbolic.
    pub fn build(name: &str, s: Option<Scalar>, params: &[(String, String)]) -> R<AnyModel> {
        Ok(match name {
            "m2" => {
                if let Some((k, _)) = params.first() {
                    return Err(ModelError::UnknownParameter(k.clone()).into());
                }
                AnyModel::M2(Box::new(m2::build()?))
            }
            "qsphere" => AnyModel::Presented(Box::new(sphere::build(s, params)?)),
            "qdisk" => AnyModel::Presented(Box::new(disk::build(s, params)?)),
            "qdisk-localized" => {
                if let Some((k, _)) = params.first() {
                    return Err(ModelError::UnknownParameter(k.clone()).into());
                }
                AnyModel::Presented(Box::new(disk::build_localized(s)?))
            }
            other => return Err(ModelError::UnknownModel(other.to_string()).into()),
        })
    }

    pub fn name(&self) -> &str {
        match self {
            AnyModel::M2(m) => &m.name,
            AnyModel::Presented(m) => &m.name,
        }
    }

    pub fn kind(&self) -> Kind {
        match self {
            AnyModel::M2(m) => m.kind,
            AnyModel::Presented(m) => m.kind,
        }
    }

    pub fn params(&self) -> BTreeMap<String, String> {
        let p = match self {
            AnyModel::M2(m) => &m.params,
            AnyModel::Presented(m) => &m.params,
        };
        p.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()
    }

    /// Run every check for the model with test sets bounded by `cutoff`.
    pub fn check(&self, cutoff: u32) -> Report {
        match self {
            AnyModel::M2(m) => {
                let mut rep = m.base_report(cutoff);
                let ctx = m.ctx();
                rep.extend(check_d_consistency(&ctx, &m.cal, &m2::calculus_tests(m)));
                if let Some(t) = &m.triple {
                    rep.extend(t.check(&ctx, &m.cal, &m2::spectral_tests(m)));
                }
                rep.extend(m2::extra_checks(m));
                rep
            }
            AnyModel::Presented(m) => {
                let mut rep = m.base_report(cutoff);
                rep.extend(check_presentation(&m.alg, cutoff.max(4) as usize + 2));
                let ctx = m.ctx();
                match m.kind {
                    Kind::QSphere => {
                        rep.extend(check_d_consistency(&ctx, &m.cal, &sphere::calculus_tests(m)));
                        if let Some(t) = &m.triple {
                            rep.extend(t.check(&ctx, &m.cal, &sphere::spectral_tests(m, cutoff)));
                        }
                        rep.extend(sphere::extra_checks(m));
                    }
                    Kind::QDisk | Kind::QDiskLocalized => {
                        rep.extend(check_d_consistency(&ctx, &m.cal, &disk::calculus_tests(m)));
                        if let Some(t) = &m.triple {
                            rep.extend(t.check(&ctx, &m.cal, &disk::spectral_tests(m, cutoff)));
                        }
                        rep.extend(disk::extra_checks(m));
                    }
                    Kind::M2 => unreachable!("m2 uses the matrix algebra"),
                }
                rep
            }
        }
    }

    /// Normal form of an expression in the model's algebra.
    pub fn eval(&self, expr: &str) -> R<String> {
        match self {
            AnyModel::M2(m) => Ok(m.alg.render(&parse_m2(expr)?)),
            AnyModel::Presented(m) => Ok(m.alg.render(&m.alg.parse_expr(expr)?)),
        }
    }
}

/// Outcome of the Chern construction on one bundle: the suite plus rendered
/// connection data.
pub struct ChernRun {
    pub report: Report,
    pub lines: Vec<(String, String)>,
}

/// Run the Chern suite on a named bundle.
pub fn run_chern(bundle: &str, s: Option<Scalar>) -> R<ChernRun> {
    match bundle {
        "m2-omega10" => m2::chern_omega10(),
        "qsphere-splus" => sphere::chern(s, false),
        "qsphere-omega10" => sphere::chern(s, true),
        "qdisk-omega10" => disk::chern(s, true),
        "qdisk-splus" => disk::chern(s, false),
        other => Err(ModelError::UnknownModel(other.to_string()).into()),
    }
}

/// Render the Chern output lines shared by every bundle.
pub(crate) fn chern_lines<A: StarAlgebra>(
    ctx: &Ctx<A>,
    inp: &crate::connect::ChernInput<A::Elem>,
    out: &crate::connect::ChernOutput<A::Elem>,
) -> Vec<(String, String)> {
    let mut lines = Vec::new();
    let n = inp.n();
    for i in 0..n {
        for j in 0..n {
            lines.push((format!("Gamma+[{}][{}]", i, j), ctx.render(&out.gamma_plus[i][j])));
        }
    }
    lines.push((format!("nabla({})", ctx.syms.render_sym(&inp.eps)), ctx.render(&out.nabla_eps)));
    lines
}

/// `x^n` in a presented algebra.
pub(crate) fn power(alg: &Presentation, x: &AlgElem, n: usize) -> R<AlgElem> {
    (0..n).try_fold(AlgElem::one(), |acc, _| Ok(alg.multiply(&acc, x)?))
}

/// `Σ c·[ω]` from `(coefficient, symbol name)` pairs.
pub(crate) fn form<A: StarAlgebra>(ctx: &Ctx<A>, parts: &[(A::Elem, &str)]) -> ModElem<A::Elem> {
    let mut out = ModElem::zero();
    for (c, name) in parts {
        out = ctx.add(&out, &ctx.term(c.clone(), vec![ctx.syms.get(name)]));
    }
    out
}
