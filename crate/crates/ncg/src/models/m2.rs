//! `M₂(ℂ)` with the inner calculus `θ = E12 s + E21 t`, spinors `v1, v2`
//! and KO-dimension 2.

use super::mat2::{M2Algebra, Mat2};
use super::{chern_lines, form, ChernRun, Kind, MatrixTrace, Model};
use crate::bimod::{BasisMap, Ctx, ModElem, Symbols};
use crate::calculus::{Calculus, CalculusTests, Derivation};
use crate::connect::{chern_report, ChernExpect, ChernInput, Connection};
use crate::report::{run_check, Outcome, Report};
use crate::scalar::{GaussRat, Scalar};
use crate::spectral::{SpectralTests, SpectralTriple};
use std::collections::{BTreeMap, HashMap};

type R<T> = crate::Result<T>;

fn e(i: usize, j: usize) -> Mat2 {
    Mat2::unit(i, j)
}

fn symbols() -> Symbols {
    let mut syms = Symbols::new();
    syms.add("s", 0, 0, (1, 0));
    syms.add("t", 0, 0, (0, 1));
    syms.add("st", 0, 0, (1, 1));
    syms.add("v1", 0, 0, (0, 0));
    syms.add("v2", 0, 0, (0, 0));
    syms
}

/// The calculus: `dx = [θ, x]`, `s∧t = t∧s`, `s* = −t`, and `dω = θ∧ω + ω∧θ`.
fn calculus(ctx: &Ctx<M2Algebra>) -> R<Calculus<Mat2>> {
    let (s, t, st) = (ctx.syms.get("s"), ctx.syms.get("t"), ctx.syms.get("st"));
    let theta = form(ctx, &[(e(1, 2), "s"), (e(2, 1), "t")]);
    let mut cal = Calculus::new(vec![s.clone(), t.clone()], vec![s.clone(), t.clone()], Derivation::Inner(theta.clone()), vec![st.clone()]);
    cal.set_wedge(&s, &t, Some((Scalar::one(), st.clone())));
    cal.set_wedge(&t, &s, Some((Scalar::one(), st.clone())));
    cal.set_wedge(&s, &s, None);
    cal.set_wedge(&t, &t, None);
    cal.star_table.insert(s.clone(), ctx.neg(&ctx.basis(&t)));
    cal.star_table.insert(t.clone(), ctx.neg(&ctx.basis(&s)));
    for w in [&s, &t] {
        let b = ctx.basis(w);
        let dw = ctx.add(&cal.wedge(ctx, &theta, &b)?, &cal.wedge(ctx, &b, &theta)?);
        cal.d_basis.insert(w.clone(), dw);
    }
    Ok(cal)
}

pub fn build() -> R<Model<M2Algebra>> {
    let alg = M2Algebra;
    let syms = symbols();
    let ctx = Ctx::new(&alg, &syms);
    let cal = calculus(&ctx)?;
    let (s, t) = (syms.get("s"), syms.get("t"));
    let (v1, v2) = (syms.get("v1"), syms.get("v2"));
    let mut nabla = BasisMap::new();
    let mut sigma = BasisMap::new();
    let mut sigma_inv = BasisMap::new();
    for v in [&v1, &v2] {
        nabla.insert(vec![v.clone()], ModElem::zero());
        for w in [&s, &t] {
            sigma.insert(vec![v.clone(), w.clone()], ctx.unit(vec![w.clone(), v.clone()]));
            sigma_inv.insert(vec![w.clone(), v.clone()], ctx.unit(vec![v.clone(), w.clone()]));
        }
    }
    let mut cliff = BasisMap::new();
    cliff.insert(vec![s.clone(), v2.clone()], ctx.basis(&v1));
    cliff.insert(vec![t.clone(), v1.clone()], ctx.basis(&v2));
    cliff.insert(vec![s.clone(), v1.clone()], ModElem::zero());
    cliff.insert(vec![t.clone(), v2.clone()], ModElem::zero());
    let mut j = BasisMap::new();
    j.insert(vec![v1.clone()], ctx.basis(&v2));
    j.insert(vec![v2.clone()], ctx.neg(&ctx.basis(&v1)));
    let gamma = HashMap::from([(v1.clone(), -1), (v2.clone(), 1)]);
    let hmat = HashMap::from([((v1.clone(), v1.clone()), Mat2::identity()), ((v2.clone(), v2.clone()), Mat2::identity())]);
    let triple = SpectralTriple {
        spinors: vec![v1, v2],
        conn: Connection {
            rank: 1,
            nabla,
            sigma,
            sigma_inv: Some(sigma_inv),
        },
        cliff,
        j,
        gamma,
        hmat,
        state: Box::new(MatrixTrace),
        n: 2,
        strict_isometry: true,
        twisted_isometry: None,
        declare_sufficient: true,
    };
    Ok(Model {
        name: "m2".into(),
        kind: Kind::M2,
        alg,
        syms,
        cal,
        triple: Some(triple),
        params: BTreeMap::new(),
    })
}

fn test_matrices() -> Vec<Mat2> {
    vec![
        e(1, 1),
        e(1, 2),
        e(2, 1),
        e(2, 2),
        Mat2([GaussRat::one(), GaussRat::i(), GaussRat::from_int(2), GaussRat::from_int(-1)]),
    ]
}

pub fn calculus_tests(_m: &Model<M2Algebra>) -> CalculusTests<Mat2> {
    let gens = test_matrices();
    let mut closed = gens.clone();
    closed.push(e(1, 2).mul(&gens[4]));
    CalculusTests {
        generators: gens.clone(),
        closed,
        pairs: vec![(gens[4].clone(), gens[4].adjoint())],
        relations: Vec::new(),
    }
}

pub fn spectral_tests(m: &Model<M2Algebra>) -> SpectralTests<Mat2> {
    let ctx = m.ctx();
    let algebra = test_matrices();
    let mut spinors = Vec::new();
    for v in ["v1", "v2"] {
        for a in &algebra {
            spinors.push(ctx.term(a.clone(), vec![ctx.syms.get(v)]));
        }
    }
    let mut forms: Vec<ModElem<Mat2>> = algebra.iter().map(|a| m.cal.dh(&ctx, a).unwrap()).collect();
    forms.push(form(&ctx, &[(e(1, 2), "s")]));
    forms.push(form(&ctx, &[(e(2, 1), "t"), (e(1, 1), "s")]));
    let i = GaussRat::i();
    let fluctuations = vec![
        form(&ctx, &[(e(1, 2), "s"), (e(2, 1), "t")]),
        form(&ctx, &[(e(1, 1), "s"), (e(1, 1), "t")]),
        form(&ctx, &[(e(2, 2), "s"), (e(2, 2), "t")]),
        form(&ctx, &[(e(1, 2).scale(&i), "s"), (e(2, 1).scale(&i.neg()), "t")]),
        form(&ctx, &[(e(2, 1), "s"), (e(1, 2), "t")]),
    ];
    SpectralTests {
        algebra,
        spinors,
        forms,
        fluctuations,
    }
}

/// `D(x v1 + u v2)` from the Clifford-algebra formula
/// `D = −½(γ¹⊗[γ¹,·] − γ²⊗[γ²,·])`, `γ^k = iσ^k`, on `ℂ²⊗M₂`.
pub fn clifford_form_dirac(x: &Mat2, u: &Mat2) -> (Mat2, Mat2) {
    let i = GaussRat::i();
    let z = GaussRat::zero();
    let g1 = Mat2([z.clone(), i.clone(), i.clone(), z.clone()]);
    let g2 = Mat2::from_ints([0, 1, -1, 0]);
    let comp = [x, u];
    let half = GaussRat::from_frac(-1, 2);
    let out: Vec<Mat2> = (1..=2)
        .map(|a| {
            let mut acc = Mat2::zero();
            for b in 1..=2 {
                acc = acc.add(&g1.commutator(comp[b - 1]).scale(g1.entry(a, b)));
                acc = acc.sub(&g2.commutator(comp[b - 1]).scale(g2.entry(a, b)));
            }
            acc.scale(&half)
        })
        .collect();
    (out[0].clone(), out[1].clone())
}

pub fn extra_checks(m: &Model<M2Algebra>) -> Report {
    let ctx = m.ctx();
    let mut rep = Report::new("m2");
    rep.push(run_check("m2-d-forms", "ds = 2E21 s∧t, dt = 2E12 s∧t", false, || {
        let two = |a: Mat2| a.scale(&GaussRat::from_int(2));
        let ds = m.cal.d1(&ctx, &ctx.basis(&ctx.syms.get("s")))?;
        let dt = m.cal.d1(&ctx, &ctx.basis(&ctx.syms.get("t")))?;
        let eds = form(&ctx, &[(two(e(2, 1)), "st")]);
        let edt = form(&ctx, &[(two(e(1, 2)), "st")]);
        Ok(Outcome::from_first((ds != eds || dt != edt).then(|| format!("ds = {}, dt = {}", ctx.render(&ds), ctx.render(&dt)))))
    }));
    rep.push(run_check("m2-clifford-form", "D = −½(γ¹⊗[γ¹,·] − γ²⊗[γ²,·])", false, || {
        let t = m.triple.as_ref().expect("m2 has a spectral triple");
        let (v1, v2) = (ctx.syms.get("v1"), ctx.syms.get("v2"));
        for x in test_matrices() {
            for u in test_matrices() {
                let phi = ctx.add(&ctx.term(x.clone(), vec![v1.clone()]), &ctx.term(u.clone(), vec![v2.clone()]));
                let d = t.dirac(&ctx, &m.cal, &phi)?;
                let (a, b) = clifford_form_dirac(&x, &u);
                let expect = ctx.add(&ctx.term(a, vec![v1.clone()]), &ctx.term(b, vec![v2.clone()]));
                if d != expect {
                    return Ok(Outcome::Violated(format!("φ = {}: {} vs {}", ctx.render(&phi), ctx.render(&d), ctx.render(&expect))));
                }
            }
        }
        Ok(Outcome::holds())
    }));
    rep
}

/// The Chern connection on `Ω^{1,0}` with `∂̄(s) = 2E21 t⊗s`.
pub fn chern_omega10() -> R<ChernRun> {
    let m = build()?;
    let ctx = m.ctx();
    let (s, t) = (ctx.syms.get("s"), ctx.syms.get("t"));
    let two = |a: Mat2| a.scale(&GaussRat::from_int(2));
    let mut sigma01 = BasisMap::new();
    sigma01.insert(vec![s.clone(), t.clone()], ctx.neg(&ctx.unit(vec![t.clone(), s.clone()])));
    let inp = ChernInput {
        name: "m2-omega10".into(),
        eps: s.clone(),
        u: vec![Mat2::identity()],
        v: vec![Mat2::identity()],
        g: Mat2::identity(),
        g_lower: vec![vec![Mat2::identity()]],
        dbar_eps: ctx.term(two(e(2, 1)), vec![t.clone(), s.clone()]),
        sigma01,
    };
    let nabla = ctx.add(
        &ctx.term(two(e(1, 2)), vec![s.clone(), s.clone()]),
        &ctx.term(two(e(2, 1)), vec![t.clone(), s.clone()]),
    );
    let mut extra = Vec::new();
    for xi in [form(&ctx, &[(Mat2::identity(), "s")]), form(&ctx, &[(e(1, 2), "t")]), form(&ctx, &[(e(2, 1), "s"), (e(1, 1), "t")])] {
        let es = ctx.basis(&s);
        let got = inp.sigma_full(&ctx, &m.cal, &es, &xi)?;
        let expect = ctx.neg(&ctx.tensor(&xi, &es)?);
        extra.push(("chern-m2-sigma".to_string(), "σ_E(s⊗ξ) = −ξ⊗s".to_string(), expect, got));
    }
    let expect = ChernExpect {
        gamma_plus: Some(vec![vec![form(&ctx, &[(two(e(1, 2)).neg(), "s")])]]),
        nabla_eps: Some(nabla),
        coeffs: test_matrices(),
        elems: test_matrices(),
        check_q: true,
        extra,
    };
    let (report, out) = chern_report(&ctx, &m.cal, &inp, &expect);
    let lines = out.map(|o| chern_lines(&ctx, &inp, &o)).unwrap_or_default();
    Ok(ChernRun { report, lines })
}
