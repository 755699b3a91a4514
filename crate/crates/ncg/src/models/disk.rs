//! The quantum disk `z̄z = 1 − w`, its calculus `dz, dz̄`, spinors `s, s̄`
//! weighted by `w`, the integral `∫wᵐ = 1/[m−1]_{q⁻²}`, and the localized
//! algebra with `w⁻¹` carrying the hyperbolic metric.

use super::sphere::relation_tests;
use super::{chern_lines, form, parse_params, power, ChernRun, Kind, Model, ModelError, DISK_LOCALIZED_PRES, DISK_PRES};
use crate::bimod::{BasisMap, Ctx, ModElem, Symbols};
use crate::calculus::{Calculus, CalculusTests, Derivation};
use crate::connect::{chern_report, ChernExpect, ChernInput, Connection};
use crate::hopfact::{check_action, check_integral_invariance, check_metric_invariance, DiskAction, HopfTests};
use crate::ncalg::{AlgElem, Presentation, StarAlgebra};
use crate::report::{run_check, Outcome, Report};
use crate::scalar::Scalar;
use crate::spectral::{DiskIntegral, SpectralTests, SpectralTriple, State};
use std::collections::HashMap;

type R<T> = crate::Result<T>;

fn presentation(text: &str, s: Option<Scalar>) -> R<Presentation> {
    Ok(match s {
        None => Presentation::parse(text)?,
        Some(s) => Presentation::parse_with(text, s)?,
    })
}

pub fn symbols() -> Symbols {
    let mut syms = Symbols::new();
    syms.add("dz", 2, 1, (1, 0));
    syms.add("dzb", 2, -1, (0, 1));
    syms.add("dz^dzb", 4, 0, (1, 1));
    syms.add("s", 1, 0, (0, 0));
    syms.add("sbar", 1, 0, (0, 0));
    syms
}

/// `dw = −z̄ dz − q² z dz̄`, `dw⁻¹ = −w⁻¹ dw w⁻¹`, `dz̄∧dz = −q² dz∧dz̄`.
pub fn calculus(ctx: &Ctx<Presentation>) -> R<Calculus<AlgElem>> {
    let alg = ctx.alg;
    let (dz, dzb, top) = (ctx.syms.get("dz"), ctx.syms.get("dzb"), ctx.syms.get("dz^dzb"));
    let mut table = vec![ModElem::zero(); alg.generators().len()];
    table[alg.generator("z").expect("z") as usize] = ctx.basis(&dz);
    table[alg.generator("zb").expect("zb") as usize] = ctx.basis(&dzb);
    let dw = form(ctx, &[(alg.gen("zb").neg(), "dz"), (alg.gen("z").scale(&alg.q_pow(2).neg()), "dzb")]);
    if let Some(k) = alg.generator("winv") {
        let winv = alg.gen("winv");
        let dwinv = ctx.left_mul(&winv.neg(), &ctx.right_mul(&dw, &winv)?)?;
        table[k as usize] = dwinv;
    }
    table[alg.generator("w").expect("w") as usize] = dw;
    let mut cal = Calculus::new(
        vec![dz.clone(), dzb.clone()],
        vec![dz.clone(), dzb.clone()],
        Derivation::Generators(table),
        vec![top.clone()],
    );
    cal.set_wedge(&dz, &dzb, Some((Scalar::one(), top.clone())));
    cal.set_wedge(&dzb, &dz, Some((alg.q_pow(2).neg(), top.clone())));
    cal.set_wedge(&dz, &dz, None);
    cal.set_wedge(&dzb, &dzb, None);
    cal.d_basis.insert(dz.clone(), ModElem::zero());
    cal.d_basis.insert(dzb.clone(), ModElem::zero());
    cal.star_table.insert(dz.clone(), ctx.basis(&dzb));
    cal.star_table.insert(dzb.clone(), ctx.basis(&dz));
    Ok(cal)
}

/// Resolve `δ² = −β*/(qα)` and `μ = q⁻¹δ⁻²`.
pub fn resolve(alg: &Presentation, alpha: &Scalar, beta: &Scalar) -> R<(Scalar, Scalar)> {
    let d2 = beta.star().neg().div(&(&alg.q_pow(1) * alpha))?;
    let delta = d2
        .sqrt()
        .ok_or_else(|| ModelError::ParameterNotRepresentable(format!("δ² = {} has no square root", d2)))?;
    if delta.star() != delta {
        return Err(ModelError::ConstraintViolated(format!("δ = {} is not real", delta)).into());
    }
    let mu = alg.q_pow(-1).div(&(&delta * &delta))?;
    Ok((delta, mu))
}

pub fn build(s: Option<Scalar>, raw: &[(String, String)]) -> R<Model<Presentation>> {
    let alg = presentation(DISK_PRES, s)?;
    let mut params = parse_params(&alg, raw, &["alpha", "beta"])?;
    let alpha = params.entry("alpha".into()).or_insert_with(Scalar::one).clone();
    let beta = params.entry("beta".into()).or_insert_with(|| alg.q_pow(1).neg()).clone();
    let (delta, mu) = resolve(&alg, &alpha, &beta)?;
    params.insert("delta".into(), delta.clone());
    params.insert("mu".into(), mu.clone());
    let syms = symbols();
    let ctx = Ctx::new(&alg, &syms);
    let cal = calculus(&ctx)?;
    let sy = |n: &str| syms.get(n);
    let (dz, dzb, sp, sm) = (sy("dz"), sy("dzb"), sy("s"), sy("sbar"));
    let q = |k: i64| AlgElem::scalar(alg.q_pow(k));
    let mut nabla = BasisMap::new();
    let mut sigma = BasisMap::new();
    let mut sigma_inv = BasisMap::new();
    for f in [&sp, &sm] {
        nabla.insert(vec![f.clone()], ModElem::zero());
        for (w, k) in [(&dz, 1), (&dzb, -1)] {
            sigma.insert(vec![f.clone(), w.clone()], ctx.term(q(k), vec![w.clone(), f.clone()]));
            sigma_inv.insert(vec![w.clone(), f.clone()], ctx.term(q(-k), vec![f.clone(), w.clone()]));
        }
    }
    let w = alg.gen("w");
    let mut cliff = BasisMap::new();
    cliff.insert(vec![dz.clone(), sm.clone()], ctx.term(w.scale(&alpha), vec![sp.clone()]));
    cliff.insert(vec![dzb.clone(), sp.clone()], ctx.term(w.scale(&beta), vec![sm.clone()]));
    cliff.insert(vec![dz.clone(), sp.clone()], ModElem::zero());
    cliff.insert(vec![dzb.clone(), sm.clone()], ModElem::zero());
    let mut j = BasisMap::new();
    j.insert(vec![sp.clone()], ctx.term(AlgElem::scalar(delta.clone()), vec![sm.clone()]));
    j.insert(vec![sm.clone()], ctx.term(AlgElem::scalar(delta.inv()?.neg()), vec![sp.clone()]));
    let gamma = HashMap::from([(sp.clone(), 1), (sm.clone(), -1)]);
    let hmat = HashMap::from([((sp.clone(), sp.clone()), w.clone()), ((sm.clone(), sm.clone()), w.scale(&mu))]);
    let triple = SpectralTriple {
        spinors: vec![sp.clone(), sm.clone()],
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
        state: Box::new(DiskIntegral::new(&alg)),
        n: 2,
        strict_isometry: false,
        twisted_isometry: Some(HashMap::from([(sp, -1), (sm, 1)])),
        declare_sufficient: true,
    };
    Ok(Model {
        name: "qdisk".into(),
        kind: Kind::QDisk,
        alg,
        syms,
        cal,
        triple: Some(triple),
        params,
    })
}

/// The disk with `w⁻¹` adjoined: calculus and Hopf action only.
pub fn build_localized(s: Option<Scalar>) -> R<Model<Presentation>> {
    let alg = presentation(DISK_LOCALIZED_PRES, s)?;
    let syms = symbols();
    let cal = calculus(&Ctx::new(&alg, &syms))?;
    Ok(Model {
        name: "qdisk-localized".into(),
        kind: Kind::QDiskLocalized,
        alg,
        syms,
        cal,
        triple: None,
        params: Default::default(),
    })
}

fn parse_all(alg: &Presentation, xs: &[&str]) -> Vec<AlgElem> {
    xs.iter().map(|x| alg.parse_expr(x).expect("built-in test element")).collect()
}

fn localized(m: &Model<Presentation>) -> bool {
    m.alg.generator("winv").is_some()
}

pub fn calculus_tests(m: &Model<Presentation>) -> CalculusTests<AlgElem> {
    let ctx = m.ctx();
    let alg = &m.alg;
    let mut gens = vec!["z", "zb", "w"];
    let mut closed = vec!["z", "zb", "w", "z*zb", "w*z", "zb*w*w", "z*z*zb"];
    if localized(m) {
        gens.push("winv");
        closed.extend(["winv", "winv*z", "zb*winv*winv"]);
    }
    let p = |x: &str| alg.parse_expr(x).unwrap();
    CalculusTests {
        generators: parse_all(alg, &gens),
        closed: parse_all(alg, &closed),
        pairs: vec![(p("z*w"), p("zb")), (p("w*w"), p("z*z"))],
        relations: relation_tests(&ctx, &m.cal),
    }
}

/// `w·wⁱzᵏ` and `w·wⁱz̄ᵏ` with `i + k ≤ cutoff − 2`.
fn weighted_monomials(alg: &Presentation, cutoff: u32) -> R<Vec<AlgElem>> {
    let top = cutoff.saturating_sub(2) as usize;
    let (w, z, zb) = (alg.gen("w"), alg.gen("z"), alg.gen("zb"));
    let mut out = Vec::new();
    for i in 0..=top {
        let wi = power(alg, &w, i + 1)?;
        out.push(wi.clone());
        for k in 1..=top - i {
            out.push(alg.multiply(&wi, &power(alg, &z, k)?)?);
            out.push(alg.multiply(&wi, &power(alg, &zb, k)?)?);
        }
    }
    Ok(out)
}

pub fn spectral_tests(m: &Model<Presentation>, cutoff: u32) -> SpectralTests<AlgElem> {
    let ctx = m.ctx();
    let alg = &m.alg;
    let mut spinors = Vec::new();
    for x in weighted_monomials(alg, cutoff).expect("disk monomials") {
        for key in ["s", "sbar"] {
            spinors.push(ctx.term(x.clone(), vec![ctx.syms.get(key)]));
        }
    }
    let algebra = parse_all(alg, &["z", "zb", "w"]);
    let mut forms: Vec<ModElem<AlgElem>> = algebra.iter().map(|a| m.cal.dh(&ctx, a).unwrap()).collect();
    forms.push(form(&ctx, &[(alg.gen("w"), "dz")]));
    forms.push(form(&ctx, &[(alg.gen("z"), "dzb")]));
    let antiherm = |xi: ModElem<AlgElem>| ctx.sub(&xi, &m.cal.star1(&ctx, &xi).unwrap());
    let fluctuations = [
        (AlgElem::one(), "dz"),
        (alg.gen("w"), "dz"),
        (alg.gen("z"), "dzb"),
        (AlgElem::scalar(Scalar::i()), "dz"),
        (alg.gen("zb"), "dz"),
    ]
    .into_iter()
    .map(|(c, k)| antiherm(form(&ctx, &[(c, k)])))
    .collect();
    SpectralTests {
        algebra,
        spinors,
        forms,
        fluctuations,
    }
}

/// `∫ w (∂a/∂z̄) w` where `∂a/∂z̄` is the `dz̄` coefficient of `da`.
pub fn hermiticity_defect(m: &Model<Presentation>, a: &AlgElem) -> R<Scalar> {
    let ctx = m.ctx();
    let alg = &m.alg;
    let w = alg.gen("w");
    let part = m.cal.component(&ctx, a, &ctx.syms.get("dzb"))?;
    let x = alg.multiply(&alg.multiply(&w, &part)?, &w)?;
    DiskIntegral::new(alg).eval(alg, &x)
}

fn hermiticity_condition(m: &Model<Presentation>, powers: std::ops::RangeInclusive<usize>) -> R<Outcome> {
    let alg = &m.alg;
    for k in powers {
        let a = alg.multiply(&alg.gen("zb"), &power(alg, &alg.gen("w"), k)?)?;
        let v = hermiticity_defect(m, &a)?;
        if !v.is_zero() {
            return Ok(Outcome::Violated(format!("a = {}: ∫w(∂a/∂z̄)w = {}", alg.render(&a), v)));
        }
    }
    Ok(Outcome::holds())
}

fn hopf_tests(alg: &Presentation) -> HopfTests {
    let mut elements = vec!["z", "zb", "w", "z*zb", "w*z", "zb*zb*w", "z*z*w"];
    if alg.generator("winv").is_some() {
        elements.extend(["winv", "winv*z", "zb*winv"]);
    }
    HopfTests {
        elements: parse_all(alg, &elements),
        weights: parse_all(alg, &["z", "zb", "w", "z*z", "w*zb"]),
    }
}

/// `g = w⁻²(dz⊗dz̄ + q⁻² dz̄⊗dz)`.
pub fn hyperbolic_metric(ctx: &Ctx<Presentation>) -> R<ModElem<AlgElem>> {
    let alg = ctx.alg;
    let (dz, dzb) = (ctx.syms.get("dz"), ctx.syms.get("dzb"));
    let winv2 = power(alg, &alg.gen("winv"), 2)?;
    let g = ctx.add(
        &ctx.term(winv2.clone(), vec![dz.clone(), dzb.clone()]),
        &ctx.term(winv2.scale(&alg.q_pow(-2)), vec![dzb, dz]),
    );
    Ok(g)
}

pub fn extra_checks(m: &Model<Presentation>) -> Report {
    let ctx = m.ctx();
    let alg = &m.alg;
    let mut rep = Report::new(&m.name);
    let act = match DiskAction::new(&ctx) {
        Ok(a) => a,
        Err(e) => {
            rep.push(run_check("hopf-construct", "U_q(su₁,₁) action", false, || Err(e)));
            return rep;
        }
    };
    rep.extend(check_action(&ctx, &m.cal, &act, &hopf_tests(alg)));
    if localized(m) {
        match hyperbolic_metric(&ctx) {
            Ok(g) => rep.extend(check_metric_invariance(&ctx, &act, &g)),
            Err(e) => rep.push(run_check("hopf-metric-invariance", "h▷g = ε(h)g", false, || Err(e))),
        }
        return rep;
    }
    rep.push(run_check("disk-integral-values", "∫wᵐ = 1/[m−1]_{q⁻²}, ∫ of nonzero grade = 0", false, || {
        let int = DiskIntegral::new(alg);
        for m in 2..=5usize {
            let x = power(alg, &alg.gen("w"), m)?;
            // [m−1]_{q⁻²}·∫wᵐ = 1 computed independently of `of_power`.
            let mut qi = Scalar::zero();
            for j in 0..(m as i64 - 1) {
                qi = &qi + &alg.q_pow(-2 * j);
            }
            let v = int.eval(alg, &x)?;
            if !(&qi * &v).is_one() {
                return Ok(Outcome::Violated(format!("∫w^{} = {}", m, v)));
            }
        }
        let v = int.eval(alg, &alg.parse_expr("z*w*w")?)?;
        Ok(Outcome::from_first((!v.is_zero()).then(|| format!("∫zw² = {}", v))))
    }));
    rep.push(run_check("disk-hermiticity-condition", "∫w(∂a/∂z̄)w = 0 for a = z̄wᵐ, m = 1..5", false, || {
        hermiticity_condition(m, 1..=5)
    }));
    rep.push(run_check("disk-hermiticity-boundary", "∫w(∂a/∂z̄)w = 0 for a = z̄", true, || hermiticity_condition(m, 0..=0)));
    rep.extend(check_integral_invariance(alg, &act, &DiskIntegral::new(alg)));
    rep
}

/// Chern connections on the localized disk: `Ω^{1,0}` with `G = w²`, or the
/// spinor bundle `S` spanned by `s` with `G = δ²μ w`.
pub fn chern(s: Option<Scalar>, omega10: bool) -> R<ChernRun> {
    let m = build_localized(s)?;
    let ctx = m.ctx();
    let alg = &m.alg;
    let q = |k: i64| alg.q_pow(k);
    let (w, winv, zb) = (alg.gen("w"), alg.gen("winv"), alg.gen("zb"));
    let (dz, dzb) = (ctx.syms.get("dz"), ctx.syms.get("dzb"));
    let zb_winv = alg.multiply(&zb, &winv)?;
    let mut sigma01 = BasisMap::new();
    let mut extra = Vec::new();
    let (name, eps, g, g_lower, gamma_plus) = if omega10 {
        sigma01.insert(vec![dz.clone(), dzb.clone()], ctx.term(AlgElem::scalar(q(-2)), vec![dzb.clone(), dz.clone()]));
        let one_q = &Scalar::one() + &q(-2);
        (
            "qdisk-omega10",
            dz.clone(),
            power(alg, &w, 2)?,
            power(alg, &winv, 2)?,
            form(&ctx, &[(zb_winv.scale(&one_q), "dz")]),
        )
    } else {
        let sp = ctx.syms.get("s");
        sigma01.insert(vec![sp.clone(), dzb.clone()], ctx.term(AlgElem::scalar(q(-1)), vec![dzb.clone(), sp.clone()]));
        // The defaults δ = 1, μ = q⁻¹ give G = δ²μ w = q⁻¹w.
        (
            "qdisk-splus",
            sp,
            w.scale(&q(-1)),
            winv.scale(&q(1)),
            form(&ctx, &[(zb_winv, "dz")]),
        )
    };
    let inp = ChernInput {
        name: name.into(),
        eps: eps.clone(),
        u: vec![AlgElem::one()],
        v: vec![AlgElem::one()],
        g,
        g_lower: vec![vec![g_lower]],
        dbar_eps: ModElem::zero(),
        sigma01,
    };
    if !omega10 {
        let es = ctx.basis(&eps);
        // The Chern connection has ∇s ≠ 0, so on dz it braids with q⁻¹ rather
        // than the q of the flat spinor connection.
        for (k, xi) in [(-1, &dz), (-1, &dzb)] {
            let got = inp.sigma_full(&ctx, &m.cal, &es, &ctx.basis(xi))?;
            let expect = ctx.term(AlgElem::scalar(q(k)), vec![xi.clone(), eps.clone()]);
            extra.push(("chern-disk-sigma".to_string(), "σ_E(s⊗dz) = q⁻¹dz⊗s, σ_E(s⊗dz̄) = q⁻¹dz̄⊗s".to_string(), expect, got));
        }
    }
    let expect = ChernExpect {
        gamma_plus: Some(vec![vec![gamma_plus]]),
        nabla_eps: None,
        coeffs: parse_all(alg, &["1", "z", "zb", "w", "winv", "z*winv"]),
        elems: parse_all(alg, &["z", "zb", "w"]),
        check_q: true,
        extra,
    };
    let (report, out) = chern_report(&ctx, &m.cal, &inp, &expect);
    let lines = out.map(|o| chern_lines(&ctx, &inp, &o)).unwrap_or_default();
    Ok(ChernRun { report, lines })
}
