use ncg::bimod::{Ctx, ModElem};
use ncg::calculus::{Calculus, Derivation};
use ncg::models::{disk, m2, run_chern, sphere, AnyModel, ModelError, BUNDLE_NAMES, MODEL_NAMES, SU2_PRES};
use ncg::ncalg::AlgElem;
use ncg::report::Status;
use ncg::spectral::{DiskIntegral, HaarState, State};
use ncg::{Error, Presentation, Scalar};
use num_rational::BigRational;
use std::collections::BTreeMap;

fn params(kv: &[(&str, &str)]) -> Vec<(String, String)> {
    kv.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

fn q(k: i64) -> Scalar {
    Scalar::q_pow(k)
}

/// `[n]_k = 1 + q^k + … + q^{k(n−1)}`.
fn qint(n: i64, k: i64) -> Scalar {
    (0..n).fold(Scalar::zero(), |acc, j| &acc + &q(k * j))
}

#[test]
fn sphere_default_parameters() {
    let m = sphere::build(None, &[]).unwrap();
    assert_eq!(m.params["delta"], q(1));
    assert_eq!(m.params["mu"], q(-1));
}

#[test]
fn sphere_beta_q() {
    let m = sphere::build(None, &params(&[("beta", "q")])).unwrap();
    assert_eq!(m.params["delta"], Scalar::s_pow(3));
    assert_eq!(m.params["mu"], q(-2));
    assert!(AnyModel::Presented(Box::new(m)).check(3).all_ok());
}

#[test]
fn sphere_unrepresentable_and_nonreal_parameters() {
    let err = sphere::build(None, &params(&[("beta", "2")])).err().unwrap();
    assert!(matches!(err, Error::Model(ModelError::ParameterNotRepresentable(_))), "{err}");
    let err = sphere::build(None, &params(&[("beta", "-1")])).err().unwrap();
    assert!(matches!(err, Error::Model(ModelError::ConstraintViolated(_))), "{err}");
    let err = sphere::build(None, &params(&[("gamma", "1")])).err().unwrap();
    assert!(matches!(err, Error::Model(ModelError::UnknownParameter(_))), "{err}");
}

#[test]
fn disk_default_parameters() {
    let m = disk::build(None, &[]).unwrap();
    assert_eq!(m.params["alpha"], Scalar::one());
    assert_eq!(m.params["beta"], q(1).neg());
    assert_eq!(m.params["delta"], Scalar::one());
    assert_eq!(m.params["mu"], q(-1));
    let err = disk::build(None, &params(&[("beta", "q")])).err().unwrap();
    assert!(matches!(err, Error::Model(ModelError::ConstraintViolated(_))), "{err}");
}

#[test]
fn every_model_passes_at_cutoff_4() {
    for name in MODEL_NAMES {
        let rep = AnyModel::build(name, None, &[]).unwrap().check(4);
        assert!(rep.all_ok(), "{}", rep.render_text());
    }
}

#[test]
fn every_bundle_passes() {
    for b in BUNDLE_NAMES {
        let run = run_chern(b, None).unwrap();
        assert!(run.report.all_ok(), "{}", run.report.render_text());
    }
}

#[test]
fn expected_failures_are_recorded() {
    let rep = AnyModel::build("qdisk", None, &[]).unwrap().check(4);
    for id in ["spectral-strict-isometry", "disk-hermiticity-boundary", "hopf-integral-invariance-n1"] {
        assert_eq!(rep.get(id).unwrap().status, Status::XfailPass, "{id}");
    }
    let rep = AnyModel::build("qsphere", None, &[]).unwrap().check(4);
    assert_eq!(rep.get("spectral-sufficient-ii").unwrap().status, Status::Skip);
}

#[test]
fn m2_clifford_form_and_signs() {
    let m = m2::build().unwrap();
    let rep = AnyModel::M2(Box::new(m)).check(1);
    assert_eq!(rep.get("m2-clifford-form").unwrap().status, Status::Pass);
    assert_eq!(rep.get("spectral-strict-isometry").unwrap().status, Status::Pass);
    let signs = rep.get("spectral-sign-table").unwrap().detail.clone().unwrap();
    assert!(signs.contains("ε = -1, ε′ = 1, ε″ = Some(-1)"), "{signs}");
}

#[test]
fn haar_values_match_closed_form() {
    let alg = Presentation::parse(SU2_PRES).unwrap();
    let h = HaarState::new(&alg);
    for k in 0..6 {
        let sign = if k % 2 == 0 { Scalar::one() } else { Scalar::from_int(-1) };
        let want = (&sign * &q(k)).div(&qint(k + 1, 2)).unwrap();
        assert_eq!(h.value(&alg, k as usize).unwrap(), want, "k = {k}");
    }
    assert_eq!(h.value(&alg, 1).unwrap().to_string(), "(-q)/(1 + q^2)");
    assert_eq!(h.value(&alg, 2).unwrap().to_string(), "(q^2)/(1 + q^2 + q^4)");
}

#[test]
fn haar_on_monomials() {
    let alg = Presentation::parse(SU2_PRES).unwrap();
    let h = HaarState::new(&alg);
    let ev = |x: &str| h.eval(&alg, &alg.parse_expr(x).unwrap()).unwrap();
    let two = qint(2, 2);
    assert_eq!(ev("1"), Scalar::one());
    assert_eq!(ev("a*d"), q(2).div(&two).unwrap());
    assert_eq!(ev("b*c"), q(1).neg().div(&two).unwrap());
    assert!(ev("a").is_zero());
    assert!(ev("a*b").is_zero());
    // b* b = −q⁻¹ c b
    assert_eq!(ev("-q^-1*c*b"), two.inv().unwrap());
}

#[test]
fn disk_integral_values() {
    let alg = Presentation::parse(ncg::models::DISK_PRES).unwrap();
    let int = DiskIntegral::new(&alg);
    for m in 1..=5 {
        let want = qint(m, -2).inv().unwrap();
        assert_eq!(int.of_power(&alg, m as usize + 1).unwrap(), want);
    }
    assert_eq!(int.of_power(&alg, 3).unwrap().to_string(), "(q^2)/(1 + q^2)");
    assert!(int.of_power(&alg, 1).is_err());
    assert!(int.of_power(&alg, 0).is_err());
    let ev = |x: &str| int.eval(&alg, &alg.parse_expr(x).unwrap());
    assert!(ev("z*w*w").unwrap().is_zero());
    assert_eq!(ev("w*w - w*w*w").unwrap(), &Scalar::one() - &qint(2, -2).inv().unwrap());
    assert!(ev("w").is_err());
}

/// Linear span coordinates of a list of module elements.
fn flatten(tests: &[(String, ModElem<AlgElem>)]) -> BTreeMap<String, Scalar> {
    let mut out = BTreeMap::new();
    for (i, (_, m)) in tests.iter().enumerate() {
        for (k, c) in m.terms() {
            for (w, s) in c.terms() {
                out.insert(format!("{i}:{k:?}:{w:?}"), s.clone());
            }
        }
    }
    out
}

fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv().unwrap();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] * &inv;
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot) {
                    *x = &*x - &(&f * &y);
                }
            }
        }
        r += 1;
    }
    r
}

/// Every graded ansatz `dx = Σ λ·y e` that kills all relations is a rescaling
/// of the built-in table by one factor per basis 1-form.
#[test]
fn sphere_d_table_is_unique_up_to_form_scaling() {
    let alg = Presentation::parse(SU2_PRES).unwrap();
    let syms = sphere::symbols();
    let ctx = Ctx::new(&alg, &syms);
    let slots: Vec<(&str, &str, &str)> = vec![
        ("a", "a", "e0"), ("a", "c", "e0"), ("a", "b", "e+"), ("a", "d", "e+"),
        ("b", "b", "e0"), ("b", "d", "e0"), ("b", "a", "e-"), ("b", "c", "e-"),
        ("c", "a", "e0"), ("c", "c", "e0"), ("c", "b", "e+"), ("c", "d", "e+"),
        ("d", "b", "e0"), ("d", "d", "e0"), ("d", "a", "e-"), ("d", "c", "e-"),
    ];
    let cal_for = |coeffs: &[Scalar]| {
        let mut table = vec![ModElem::zero(); 4];
        for ((x, y, e), c) in slots.iter().zip(coeffs) {
            let gi = alg.generator(x).unwrap() as usize;
            table[gi] = ctx.add(&table[gi], &ctx.term(alg.gen(y).scale(c), vec![syms.get(e)]));
        }
        let base = sphere::calculus(&ctx).unwrap();
        Calculus::new(base.one_forms.clone(), base.horizontal.clone(), Derivation::Generators(table), base.two_forms.clone())
    };
    let columns: Vec<BTreeMap<String, Scalar>> = (0..slots.len())
        .map(|i| {
            let mut v = vec![Scalar::zero(); slots.len()];
            v[i] = Scalar::one();
            flatten(&sphere::relation_tests(&ctx, &cal_for(&v)))
        })
        .collect();
    let mut coords: Vec<String> = columns.iter().flat_map(|c| c.keys().cloned()).collect();
    coords.sort();
    coords.dedup();
    let rows: Vec<Vec<Scalar>> = coords
        .iter()
        .map(|k| columns.iter().map(|c| c.get(k).cloned().unwrap_or_else(Scalar::zero)).collect())
        .collect();
    assert_eq!(slots.len() - rank(rows), 3);
}

/// The star table `b* = −q c, c* = −q⁻¹ b` is also an algebra involution, but
/// it breaks `d(x*) = (dx)*` for the calculus star `e±* = −q^{∓1} e∓`.
#[test]
fn alternative_star_table_breaks_calculus_star() {
    let alt = SU2_PRES.replace("b -> -q^-1 c", "b -> -q c").replace("c -> -q b", "c -> -q^-1 b");
    assert_ne!(alt, SU2_PRES);
    for (text, want) in [(SU2_PRES, true), (alt.as_str(), false)] {
        let alg = Presentation::parse(text).unwrap();
        assert!(ncg::ncalg::check_presentation(&alg, 4).all_ok());
        let syms = sphere::symbols();
        let ctx = Ctx::new(&alg, &syms);
        let cal = sphere::calculus(&ctx).unwrap();
        let ok = ["a", "b", "c", "d"].iter().all(|g| {
            let x = alg.gen(g);
            cal.d(&ctx, &alg.star_elem(&x).unwrap()).unwrap() == cal.star1(&ctx, &cal.d(&ctx, &x).unwrap()).unwrap()
        });
        assert_eq!(ok, want);
    }
}

#[test]
fn numeric_rebuild_matches_specialization() {
    for (n, d) in [(2, 1), (3, 2)] {
        let s0 = Scalar::from_frac(n, d);
        let s0r = BigRational::new(n.into(), d.into());
        let sym = Presentation::parse(SU2_PRES).unwrap();
        let num = Presentation::parse_with(SU2_PRES, s0.clone()).unwrap();
        let (hs, hn) = (HaarState::new(&sym), HaarState::new(&num));
        for k in 0..4 {
            let a = hs.value(&sym, k).unwrap().specialize(&s0r).unwrap();
            assert_eq!(Scalar::constant(a), hn.value(&num, k).unwrap());
        }
        for name in MODEL_NAMES {
            let rep = AnyModel::build(name, Some(s0.clone()), &[]).unwrap().check(3);
            assert!(rep.all_ok(), "{}", rep.render_text());
        }
    }
}
