//! The standard q-sphere as the degree-0 part of quantum SU(2), with the
//! horizontal part of the 3D calculus, the monopole spinor bundles `f±` and
//! the Haar state.

use super::{chern_lines, form, parse_params, ChernRun, Kind, Model, ModelError, SU2_PRES};
use crate::bimod::{BasisMap, Ctx, ModElem, Symbols};
use crate::calculus::{Calculus, CalculusTests, Derivation};
use crate::connect::{chern_report, ChernExpect, ChernInput, Connection};
use crate::ncalg::{AlgElem, Presentation, StarAlgebra, Word};
use crate::report::{run_check, Outcome, Report};
use crate::scalar::Scalar;
use crate::spectral::{HaarState, SpectralTests, SpectralTriple, State};
use std::collections::HashMap;

type R<T> = crate::Result<T>;

/// Coefficients `x` with `x f⁺` in the test set.
pub const SPLUS_BASIS: [&str; 6] = ["b", "d", "a*b*b", "b*b*c", "b*c*d", "c*d*d"];
/// Coefficients `x` with `x f⁻` in the test set.
pub const SMINUS_BASIS: [&str; 6] = ["a", "c", "a*a*b", "a*b*c", "b*c*c", "c*c*d"];
/// Degree-0 algebra elements used as `a, b` in the axioms.
pub const ALGEBRA_BASIS: [&str; 3] = ["a*b", "b*c", "c*d"];

pub fn presentation(s: Option<Scalar>) -> R<Presentation> {
    Ok(match s {
        None => Presentation::parse(SU2_PRES)?,
        Some(s) => Presentation::parse_with(SU2_PRES, s)?,
    })
}

pub fn symbols() -> Symbols {
    let mut syms = Symbols::new();
    syms.add("e0", 2, 0, (0, 0));
    syms.add("e+", 1, 2, (1, 0));
    syms.add("e-", 1, -2, (0, 1));
    syms.add("e+^e-", 2, 0, (1, 1));
    syms.add("f+", 0, 1, (0, 0));
    syms.add("f-", 0, -1, (0, 0));
    syms
}

/// `da = a e⁰ + q b e⁺`, `db = a e⁻ − q⁻² b e⁰`, `dc = c e⁰ + q d e⁺`,
/// `dd = c e⁻ − q⁻² d e⁰`, with `e⁻∧e⁺ = −q² e⁺∧e⁻`.
pub fn calculus(ctx: &Ctx<Presentation>) -> R<Calculus<AlgElem>> {
    let alg = ctx.alg;
    let sy = |n: &str| ctx.syms.get(n);
    let g = |n: &str| alg.gen(n);
    let q = |k: i64| alg.q_pow(k);
    let mut table = vec![ModElem::zero(); alg.generators().len()];
    let entries = [
        ("a", form(ctx, &[(g("a"), "e0"), (g("b").scale(&q(1)), "e+")])),
        ("b", form(ctx, &[(g("a"), "e-"), (g("b").scale(&q(-2).neg()), "e0")])),
        ("c", form(ctx, &[(g("c"), "e0"), (g("d").scale(&q(1)), "e+")])),
        ("d", form(ctx, &[(g("c"), "e-"), (g("d").scale(&q(-2).neg()), "e0")])),
    ];
    for (n, v) in entries {
        table[alg.generator(n).expect("su2 generator") as usize] = v;
    }
    let (e0, ep, em, top) = (sy("e0"), sy("e+"), sy("e-"), sy("e+^e-"));
    let mut cal = Calculus::new(
        vec![e0.clone(), ep.clone(), em.clone()],
        vec![ep.clone(), em.clone()],
        Derivation::Generators(table),
        vec![top.clone()],
    );
    cal.set_wedge(&ep, &em, Some((Scalar::one(), top.clone())));
    cal.set_wedge(&em, &ep, Some((q(2).neg(), top.clone())));
    cal.set_wedge(&ep, &ep, None);
    cal.set_wedge(&em, &em, None);
    cal.d_basis.insert(ep.clone(), ModElem::zero());
    cal.d_basis.insert(em.clone(), ModElem::zero());
    cal.star_table.insert(e0.clone(), ctx.neg(&ctx.basis(&e0)));
    cal.star_table.insert(ep.clone(), ctx.scale(&q(-1).neg(), &ctx.basis(&em))?);
    cal.star_table.insert(em.clone(), ctx.scale(&q(1).neg(), &ctx.basis(&ep))?);
    Ok(cal)
}

/// Resolve `δ = sqrt(βq²/α*)` and `μ = qδ⁻²`.
pub fn resolve(alg: &Presentation, alpha: &Scalar, beta: &Scalar) -> R<(Scalar, Scalar)> {
    let d2 = (beta * &alg.q_pow(2)).div(&alpha.star())?;
    let delta = d2
        .sqrt()
        .ok_or_else(|| ModelError::ParameterNotRepresentable(format!("δ² = {} has no square root", d2)))?;
    if delta.star() != delta {
        return Err(ModelError::ConstraintViolated(format!("δ = {} is not real", delta)).into());
    }
    let mu = alg.q_pow(1).div(&(&delta * &delta))?;
    Ok((delta, mu))
}

pub fn build(s: Option<Scalar>, raw: &[(String, String)]) -> R<Model<Presentation>> {
    let alg = presentation(s)?;
    let mut params = parse_params(&alg, raw, &["alpha", "beta"])?;
    let alpha = params.entry("alpha".into()).or_insert_with(Scalar::one).clone();
    let beta = params.entry("beta".into()).or_insert_with(Scalar::one).clone();
    let (delta, mu) = resolve(&alg, &alpha, &beta)?;
    params.insert("delta".into(), delta.clone());
    params.insert("mu".into(), mu.clone());
    let syms = symbols();
    let ctx = Ctx::new(&alg, &syms);
    let cal = calculus(&ctx)?;
    let sy = |n: &str| syms.get(n);
    let (ep, em, fp, fm) = (sy("e+"), sy("e-"), sy("f+"), sy("f-"));
    let mut nabla = BasisMap::new();
    let mut sigma = BasisMap::new();
    let mut sigma_inv = BasisMap::new();
    for f in [&fp, &fm] {
        nabla.insert(vec![f.clone()], ModElem::zero());
        for w in [&ep, &em] {
            sigma.insert(vec![f.clone(), w.clone()], ctx.unit(vec![w.clone(), f.clone()]));
            sigma_inv.insert(vec![w.clone(), f.clone()], ctx.unit(vec![f.clone(), w.clone()]));
        }
    }
    let sc = |c: Scalar| AlgElem::scalar(c);
    let mut cliff = BasisMap::new();
    cliff.insert(vec![ep.clone(), fm.clone()], ctx.term(sc(&alpha * &alg.q_pow(-1)), vec![fp.clone()]));
    cliff.insert(vec![em.clone(), fp.clone()], ctx.term(sc(&beta * &alg.q_pow(1)), vec![fm.clone()]));
    cliff.insert(vec![ep.clone(), fp.clone()], ModElem::zero());
    cliff.insert(vec![em.clone(), fm.clone()], ModElem::zero());
    let mut j = BasisMap::new();
    j.insert(vec![fp.clone()], ctx.term(sc(delta.clone()), vec![fm.clone()]));
    j.insert(vec![fm.clone()], ctx.term(sc(delta.inv()?.neg()), vec![fp.clone()]));
    let gamma = HashMap::from([(fp.clone(), 1), (fm.clone(), -1)]);
    let hmat = HashMap::from([((fp.clone(), fp.clone()), AlgElem::one()), ((fm.clone(), fm.clone()), sc(mu))]);
    let state = HaarState::new(&alg);
    let triple = SpectralTriple {
        spinors: vec![fp.clone(), fm.clone()],
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
        state: Box::new(state),
        n: 2,
        strict_isometry: false,
        twisted_isometry: Some(HashMap::from([(fp, 1), (fm, -1)])),
        declare_sufficient: false,
    };
    Ok(Model {
        name: "qsphere".into(),
        kind: Kind::QSphere,
        alg,
        syms,
        cal,
        triple: Some(triple),
        params,
    })
}

fn parse_all(alg: &Presentation, xs: &[&str]) -> Vec<AlgElem> {
    xs.iter().map(|x| alg.parse_expr(x).expect("built-in test element")).collect()
}

/// `d` of every rewrite rule `lhs − rhs` and every unit relation `u − 1`.
pub fn relation_tests(ctx: &Ctx<Presentation>, cal: &Calculus<AlgElem>) -> Vec<(String, ModElem<AlgElem>)> {
    let alg = ctx.alg;
    let mut out = Vec::new();
    for (lhs, rhs) in alg.rule_pairs() {
        let l = cal.d_raw(ctx, &[(lhs.clone(), Scalar::one())]).expect("d on a word");
        let r = cal.d(ctx, &rhs).expect("d on a normal form");
        out.push((format!("{} -> {}", alg.render_word(&lhs), alg.render(&rhs)), ctx.sub(&l, &r)));
    }
    for (name, rel) in alg.unit_relations() {
        let terms: Vec<(Word, Scalar)> = rel.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        out.push((format!("{} = 1", name), cal.d_raw(ctx, &terms).expect("d on a relation")));
    }
    out
}

pub fn calculus_tests(m: &Model<Presentation>) -> CalculusTests<AlgElem> {
    let ctx = m.ctx();
    let alg = &m.alg;
    let gens = parse_all(alg, &["a", "b", "c", "d"]);
    let closed = parse_all(alg, &["a*b", "b*c", "c*d", "a*d", "a*b*c*d", "a*a*b*b", "b*c*b*c"]);
    let pairs = vec![
        (alg.parse_expr("a*b").unwrap(), alg.parse_expr("c*d").unwrap()),
        (alg.parse_expr("d*d").unwrap(), alg.parse_expr("a*c").unwrap()),
    ];
    CalculusTests {
        generators: gens,
        closed,
        pairs,
        relations: relation_tests(&ctx, &m.cal),
    }
}

fn word_len(x: &str) -> usize {
    x.split('*').count()
}

pub fn spectral_tests(m: &Model<Presentation>, cutoff: u32) -> SpectralTests<AlgElem> {
    let ctx = m.ctx();
    let alg = &m.alg;
    let mut spinors = Vec::new();
    for (basis, key) in [(SPLUS_BASIS, "f+"), (SMINUS_BASIS, "f-")] {
        for x in basis.iter().filter(|x| word_len(x) < cutoff.max(2) as usize) {
            spinors.push(ctx.term(alg.parse_expr(x).unwrap(), vec![ctx.syms.get(key)]));
        }
    }
    let algebra = parse_all(alg, &ALGEBRA_BASIS);
    let mut forms: Vec<ModElem<AlgElem>> = algebra.iter().map(|a| m.cal.dh(&ctx, a).unwrap()).collect();
    forms.push(form(&ctx, &[(alg.parse_expr("b*b").unwrap(), "e+")]));
    forms.push(form(&ctx, &[(alg.parse_expr("a*a").unwrap(), "e-")]));
    let antiherm = |xi: ModElem<AlgElem>| ctx.sub(&xi, &m.cal.star1(&ctx, &xi).unwrap());
    let i = AlgElem::scalar(Scalar::i());
    let fluctuations = vec![
        antiherm(form(&ctx, &[(alg.parse_expr("b*b").unwrap(), "e+")])),
        antiherm(form(&ctx, &[(alg.parse_expr("d*d").unwrap(), "e+")])),
        antiherm(form(&ctx, &[(alg.parse_expr("b*d").unwrap(), "e+")])),
        antiherm(form(&ctx, &[(alg.multiply(&i, &alg.parse_expr("b*b").unwrap()).unwrap(), "e+")])),
        antiherm(m.cal.dh(&ctx, &algebra[0]).unwrap()),
    ];
    SpectralTests {
        algebra,
        spinors,
        forms,
        fluctuations,
    }
}

/// `Δ` of a word as a list of `(left word, right word)` pairs.
pub fn coproduct_word(alg: &Presentation, w: &[u8]) -> Vec<(Word, Word)> {
    let g = |n: &str| alg.generator(n).expect("su2 generator");
    let (a, b, c, d) = (g("a"), g("b"), g("c"), g("d"));
    let delta = |x: u8| -> [(u8, u8); 2] {
        if x == a {
            [(a, a), (b, c)]
        } else if x == b {
            [(a, b), (b, d)]
        } else if x == c {
            [(c, a), (d, c)]
        } else {
            [(c, b), (d, d)]
        }
    };
    let mut out = vec![(Word::new(), Word::new())];
    for &x in w {
        let mut next = Vec::with_capacity(out.len() * 2);
        for (l, r) in &out {
            for (lx, rx) in delta(x) {
                let (mut l2, mut r2) = (l.clone(), r.clone());
                l2.push(lx);
                r2.push(rx);
                next.push((l2, r2));
            }
        }
        out = next;
    }
    out
}

/// Left and right invariance `(id⊗h)Δx = h(x)1 = (h⊗id)Δx` on words.
pub fn haar_invariance(alg: &Presentation, h: &HaarState, words: &[Word]) -> R<Outcome> {
    for w in words {
        let hx = h.eval(alg, &alg.normal_form_word(w)?)?;
        let expect = AlgElem::scalar(hx);
        let mut left = AlgElem::zero();
        let mut right = AlgElem::zero();
        for (l, r) in coproduct_word(alg, w) {
            let ln = alg.normal_form_word(&l)?;
            let rn = alg.normal_form_word(&r)?;
            left = left.add(&ln.scale(&h.eval(alg, &rn)?));
            right = right.add(&rn.scale(&h.eval(alg, &ln)?));
        }
        if left != expect || right != expect {
            return Ok(Outcome::Violated(format!(
                "x = {}: (id⊗h)Δx = {}, (h⊗id)Δx = {}, h(x) = {}",
                alg.render_word(w),
                alg.render(&left),
                alg.render(&right),
                alg.render(&expect)
            )));
        }
    }
    Ok(Outcome::Holds(Some(format!("{} words", words.len()))))
}

pub fn extra_checks(m: &Model<Presentation>) -> Report {
    let ctx = m.ctx();
    let alg = &m.alg;
    let mut rep = Report::new("qsphere");
    rep.push(run_check("sphere-haar-invariance", "(id⊗h)Δ = h(·)1 = (h⊗id)Δ", false, || {
        let h = HaarState::new(alg);
        let words: Vec<Word> = ["a*d", "b*c", "a*b*c*d", "a*a*d*d", "b*b*c*c", "a*b", "c*d"]
            .iter()
            .map(|x| {
                let names: Vec<&str> = x.split('*').collect();
                alg.word_from_names(&names)
            })
            .collect();
        haar_invariance(alg, &h, &words)
    }));
    rep.push(run_check(
        "calculus-pd-star-product",
        "πd(x*y) = (x*∂₊y − q(∂₋x)*y)e⁺ + (x*∂₋y − q³(∂₊x)*y)e⁻ for |x| = −1, |y| = 1",
        false,
        || {
            let (ep, em) = (ctx.syms.get("e+"), ctx.syms.get("e-"));
            let part = |x: &AlgElem, e: &crate::bimod::Sym| m.cal.component(&ctx, x, e);
            let mut pairs = 0;
            for x in parse_all(alg, &SPLUS_BASIS) {
                let xs = alg.star_elem(&x)?;
                for y in parse_all(alg, &SMINUS_BASIS) {
                    let lhs = m.cal.dh(&ctx, &alg.multiply(&xs, &y)?)?;
                    let plus = alg
                        .multiply(&xs, &part(&y, &ep)?)?
                        .sub(&alg.multiply(&alg.star_elem(&part(&x, &em)?)?, &y)?.scale(&alg.q_pow(1)));
                    let minus = alg
                        .multiply(&xs, &part(&y, &em)?)?
                        .sub(&alg.multiply(&alg.star_elem(&part(&x, &ep)?)?, &y)?.scale(&alg.q_pow(3)));
                    let rhs = form(&ctx, &[(plus, "e+"), (minus, "e-")]);
                    if lhs != rhs {
                        return Ok(Outcome::Violated(format!(
                            "x = {}, y = {}: {} vs {}",
                            alg.render(&x),
                            alg.render(&y),
                            ctx.render(&lhs),
                            ctx.render(&rhs)
                        )));
                    }
                    pairs += 1;
                }
            }
            Ok(Outcome::Holds(Some(format!("{} pairs", pairs))))
        },
    ));
    rep.push(run_check("sphere-dirac-formula", "D(x f⁺) = βq ∂₋x f⁻, D(x f⁻) = αq⁻¹ ∂₊x f⁺", false, || {
        let t = m.triple.as_ref().expect("sphere triple");
        let (alpha, beta) = (&m.params["alpha"], &m.params["beta"]);
        let (ep, em) = (ctx.syms.get("e+"), ctx.syms.get("e-"));
        for (basis, key, other, e, c) in [
            (SPLUS_BASIS, "f+", "f-", &em, beta * &alg.q_pow(1)),
            (SMINUS_BASIS, "f-", "f+", &ep, alpha * &alg.q_pow(-1)),
        ] {
            for x in parse_all(alg, &basis) {
                let phi = ctx.term(x.clone(), vec![ctx.syms.get(key)]);
                let dphi = t.dirac(&ctx, &m.cal, &phi)?;
                let part = m.cal.component(&ctx, &x, e)?.scale(&c);
                let expect = ctx.term(part, vec![ctx.syms.get(other)]);
                if dphi != expect {
                    return Ok(Outcome::Violated(format!("D({}) = {}, expected {}", ctx.render(&phi), ctx.render(&dphi), ctx.render(&expect))));
                }
            }
        }
        Ok(Outcome::holds())
    }));
    rep
}

/// Chern connections on the spinor bundle `S⁺` (sections `x f⁺`) or on
/// `Ω^{1,0}` (sections `x e⁺`), both with the holomorphic structure `∂̄ε = 0`.
pub fn chern(s: Option<Scalar>, omega10: bool) -> R<ChernRun> {
    let m = build(s, &[])?;
    let ctx = m.ctx();
    let alg = &m.alg;
    let q = |k: i64| alg.q_pow(k);
    let p = |x: &str| alg.parse_expr(x).expect("built-in element");
    let (ep, em) = (ctx.syms.get("e+"), ctx.syms.get("e-"));
    let (name, eps, u, v, g, coeffs, sig) = if omega10 {
        (
            "qsphere-omega10",
            ep.clone(),
            vec![p("d*d"), p("b*d"), p("d*b"), p("b*b")],
            vec![p("a*a"), p("a*c").scale(&q(-1).neg()), p("c*a").scale(&q(-1).neg()), p("c*c").scale(&q(-2))],
            AlgElem::scalar(q(-4)),
            parse_all(alg, &["b*b", "b*d", "d*d", "a*b*b*b"]),
            q(-2),
        )
    } else {
        (
            "qsphere-splus",
            ctx.syms.get("f+"),
            vec![p("d"), p("b")],
            vec![p("a"), p("c").scale(&q(-1).neg())],
            AlgElem::one(),
            parse_all(alg, &SPLUS_BASIS),
            Scalar::one(),
        )
    };
    let n = u.len();
    let mut g_lower = vec![vec![AlgElem::zero(); n]; n];
    for a in 0..n {
        for b in 0..n {
            g_lower[a][b] = alg.multiply(&alg.star_elem(&v[a])?, &v[b])?;
        }
    }
    let mut sigma01 = BasisMap::new();
    sigma01.insert(vec![eps.clone(), em.clone()], ctx.term(AlgElem::scalar(sig), vec![em.clone(), eps.clone()]));
    let inp = ChernInput {
        name: name.into(),
        eps: eps.clone(),
        u,
        v,
        g,
        g_lower,
        dbar_eps: ModElem::zero(),
        sigma01,
    };
    let mut extra = Vec::new();
    if !omega10 {
        // On S⁺ the braiding must be the flip used by the spinor connection.
        for xi in [
            form(&ctx, &[(p("b*b"), "e+")]),
            form(&ctx, &[(p("a*a"), "e-")]),
            m.cal.dh(&ctx, &p("a*b"))?,
        ] {
            let e0 = inp.dual(&ctx, 0);
            let got = inp.sigma_full(&ctx, &m.cal, &e0, &xi)?;
            let expect = ctx.tensor(&ctx.left_mul(&inp.u[0], &xi)?, &ctx.basis(&eps))?;
            extra.push(("chern-sphere-sigma".to_string(), "σ_E(e⊗ξ) = ξ⊗e on S⁺".to_string(), expect, got));
        }
    }
    // ∇(x ε) = πdx⊗ε on every test section.
    let conn = inp.chern_matrix(&ctx, &m.cal)?.connection;
    for x in &coeffs {
        let got = conn.apply(&ctx, &m.cal, &ctx.term(x.clone(), vec![eps.clone()]))?;
        let expect = ctx.tensor(&m.cal.dh(&ctx, x)?, &ctx.basis(&eps))?;
        extra.push(("chern-sphere-sections".to_string(), format!("∇({} ε) = πd({})⊗ε", alg.render(x), alg.render(x)), expect, got));
    }
    let expect = ChernExpect {
        gamma_plus: None,
        nabla_eps: Some(ModElem::zero()),
        coeffs,
        elems: parse_all(alg, &ALGEBRA_BASIS),
        check_q: false,
        extra,
    };
    let (mut report, out) = chern_report(&ctx, &m.cal, &inp, &expect);
    let norm = if omega10 {
        "⟨e+, bar(e+)⟩ = q^-4, so ⟨x e+, bar(y e+)⟩ = x y* for |x| = |y| = -2"
    } else {
        "⟨f+, bar(f+)⟩ = 1, so ⟨x f+, bar(y f+)⟩ = x y*"
    };
    report.metadata.insert("pairing-normalization".into(), norm.into());
    let lines = out.map(|o| chern_lines(&ctx, &inp, &o)).unwrap_or_default();
    Ok(ChernRun { report, lines })
}
