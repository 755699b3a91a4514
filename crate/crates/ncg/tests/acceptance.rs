//! Acceptance suite: one PASS/FAIL line per criterion. Every comparison is
//! exact (rational or rational-function equality), so the tolerance is zero.
//!
//! Criterion 8 fails at `n = 1`: `∫X₊▷(z w)` is nonzero. The process exits
//! nonzero only when the set of failing criteria differs from [`KNOWN_FAILING`].

use ncg::bimod::{Ctx, ModElem};
use ncg::hopfact::{integral_invariance, DiskAction};
use ncg::models::{disk, m2, run_chern, sphere, AnyModel, Model, BUNDLE_NAMES, DISK_PRES, MODEL_NAMES, SU2_PRES};
use ncg::ncalg::{check_presentation, Word};
use ncg::report::{Outcome, Report, Status};
use ncg::spectral::{DiskIntegral, HaarState, SpectralTests, State};
use ncg::{Presentation, Scalar, StarAlgebra};
use num_rational::BigRational;
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;
use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

const KNOWN_FAILING: [u32; 1] = [8];
const CUTOFF: u32 = 4;

struct Verdict {
    ok: bool,
    detail: String,
}

impl Verdict {
    fn new(problems: Vec<String>, summary: String) -> Verdict {
        if problems.is_empty() {
            Verdict { ok: true, detail: summary }
        } else {
            Verdict {
                ok: false,
                detail: problems.join("; "),
            }
        }
    }
}

fn expect_status(rep: &Report, id: &str, want: Status, problems: &mut Vec<String>) {
    match rep.get(id) {
        Some(r) if r.status == want => {}
        Some(r) => problems.push(format!("{}: {} is {:?}, expected {:?}", rep.model, id, r.status, want)),
        None => problems.push(format!("{}: {} missing", rep.model, id)),
    }
}

fn expect_all_ok(rep: &Report, problems: &mut Vec<String>) {
    for f in rep.failures() {
        problems.push(format!("{}: {} is {:?}", rep.model, f.id, f.status));
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn check_model(name: &str) -> (Report, Duration) {
    timed(|| AnyModel::build(name, None, &[]).expect("built-in model").check(CUTOFF))
}

fn criterion1() -> Verdict {
    let (rep, t) = check_model("m2");
    let mut p = Vec::new();
    expect_all_ok(&rep, &mut p);
    for id in ["spectral-hermitian", "spectral-strict-isometry", "m2-clifford-form", "spectral-sign-table"] {
        expect_status(&rep, id, Status::Pass, &mut p);
    }
    let signs = rep.get("spectral-sign-table").and_then(|r| r.detail.clone()).unwrap_or_default();
    if !signs.contains("ε = -1, ε′ = 1, ε″ = Some(-1)") {
        p.push(format!("sign table: {}", signs));
    }
    if t >= Duration::from_secs(1) {
        p.push(format!("runtime {:?} ≥ 1 s", t));
    }
    Verdict::new(p, format!("{} checks, signs (-1, 1, -1), {:.0?}", rep.checks.len(), t))
}

fn criterion2() -> Verdict {
    let (rep, t) = check_model("qsphere");
    let mut p = Vec::new();
    expect_all_ok(&rep, &mut p);
    for id in ["spectral-hermitian", "spectral-twisted-isometry", "spectral-twisted-trace"] {
        expect_status(&rep, id, Status::Pass, &mut p);
    }
    expect_status(&rep, "spectral-strict-isometry", Status::XfailPass, &mut p);
    if rep.get("spectral-strict-isometry").and_then(|r| r.counterexample.as_ref()).is_none() {
        p.push("strict isometry has no counterexample".into());
    }
    for (k, v) in [("alpha", "1"), ("beta", "1"), ("delta", "q"), ("mu", "q^-1")] {
        if rep.parameters.get(k).map(String::as_str) != Some(v) {
            p.push(format!("{} = {:?}", k, rep.parameters.get(k)));
        }
    }
    if t >= Duration::from_secs(60) {
        p.push(format!("runtime {:?} ≥ 60 s", t));
    }
    Verdict::new(p, format!("{} checks, strict isometry fails as expected, {:.0?}", rep.checks.len(), t))
}

/// Irreducible words of length ≤ `len`.
fn monomials(alg: &Presentation, len: usize) -> Vec<Word> {
    let n = alg.generators().len() as u8;
    let mut layer = vec![Word::new()];
    let mut out = vec![Word::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &layer {
            for g in 0..n {
                let mut v = w.clone();
                v.push(g);
                if alg.is_irreducible(&v) {
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn twisted_trace<S: State<Presentation>>(alg: &Presentation, st: &S, len: usize, p: &mut Vec<String>) -> (usize, usize) {
    let words = monomials(alg, len);
    let (mut checked, mut outside) = (0, 0);
    for x in &words {
        for y in &words {
            let (xe, ye) = (alg.normal_form_word(x).unwrap(), alg.normal_form_word(y).unwrap());
            let lhs = alg.multiply(&xe, &ye).unwrap();
            let rhs = alg.multiply(&st.modular(alg, &ye, false).unwrap(), &xe).unwrap();
            match (st.eval(alg, &lhs), st.eval(alg, &rhs)) {
                (Ok(a), Ok(b)) if a == b => checked += 1,
                (Ok(a), Ok(b)) => p.push(format!("{}·{}: {} vs {}", alg.render_word(x), alg.render_word(y), a, b)),
                (Err(_), Err(_)) => outside += 1,
                _ => p.push(format!("{}·{}: defined on one side only", alg.render_word(x), alg.render_word(y))),
            }
        }
    }
    (checked, outside)
}

fn criterion3() -> Verdict {
    let mut p = Vec::new();
    let su2 = Presentation::parse(SU2_PRES).unwrap();
    let (n_sphere, _) = twisted_trace(&su2, &HaarState::new(&su2), 4, &mut p);
    let dk = Presentation::parse(DISK_PRES).unwrap();
    let (n_disk, outside) = twisted_trace(&dk, &DiskIntegral::new(&dk), 4, &mut p);
    p.truncate(5);
    Verdict::new(
        p,
        format!("{} pairs on SU2, {} on the disk ({} outside the integral's domain)", n_sphere, n_disk, outside),
    )
}

fn criterion4() -> Verdict {
    let mut p = Vec::new();
    for name in MODEL_NAMES {
        let (rep, _) = check_model(name);
        for id in ["calculus-d-squared", "calculus-leibniz", "calculus-relations", "calculus-star"] {
            expect_status(&rep, id, Status::Pass, &mut p);
        }
        if name == "qsphere" {
            expect_status(&rep, "calculus-pd-star-product", Status::Pass, &mut p);
            let pairs = rep
                .get("calculus-pd-star-product")
                .and_then(|r| r.detail.as_deref())
                .and_then(|d| d.split_whitespace().next())
                .and_then(|n| n.parse::<usize>().ok())
                .unwrap_or(0);
            if pairs < 10 {
                p.push(format!("πd(x*y) identity on {} pairs", pairs));
            }
        }
    }
    Verdict::new(p, "d² = 0, Leibniz, relations, star, πd(x*y) on all models".into())
}

fn criterion5() -> Verdict {
    let mut p = Vec::new();
    for src in [SU2_PRES, DISK_PRES] {
        let alg = Presentation::parse(src).unwrap();
        let rep = check_presentation(&alg, 3);
        expect_status(&rep, "local-confluence", Status::Pass, &mut p);
        let words = proptest::collection::vec(0..alg.generators().len() as u8, 0..=6);
        let mut runner = TestRunner::deterministic();
        for _ in 0..500 {
            let w = words.new_tree(&mut runner).unwrap().current();
            let n = alg.normal_form_word(&w).unwrap();
            if alg.normal_form(&n).unwrap() != n {
                p.push(format!("normal form of {} is not idempotent", alg.render_word(&w)));
            }
        }
    }
    Verdict::new(p, "overlaps to length 3 joinable; 500 random words per presentation idempotent".into())
}

fn criterion6() -> Verdict {
    let mut p = Vec::new();
    for b in BUNDLE_NAMES {
        let run = run_chern(b, None).expect("built-in bundle");
        let rep = &run.report;
        expect_all_ok(rep, &mut p);
        for id in ["chern-metric", "chern-curvature", "chern-coordinate-free", "chern-dbar-part"] {
            expect_status(rep, id, Status::Pass, &mut p);
        }
        let lines: BTreeMap<_, _> = run.lines.into_iter().collect();
        match b {
            "m2-omega10" => {
                expect_status(rep, "chern-m2-sigma", Status::Pass, &mut p);
                if lines.get("nabla(s)").map(String::as_str) != Some("2 E12 s⊗s + 2 E21 t⊗s") {
                    p.push(format!("m2 ∇s = {:?}", lines.get("nabla(s)")));
                }
            }
            "qsphere-splus" | "qsphere-omega10" => {
                expect_status(rep, "chern-nabla", Status::Pass, &mut p);
                expect_status(rep, "chern-sphere-sections", Status::Pass, &mut p);
            }
            "qdisk-omega10" => expect_status(rep, "chern-gamma-plus", Status::Pass, &mut p),
            _ => {}
        }
    }
    Verdict::new(p, format!("{} bundles: connections, metric, curvature, both constructions agree", BUNDLE_NAMES.len()))
}

fn criterion7() -> Verdict {
    let (rep, t) = check_model("qdisk");
    let mut p = Vec::new();
    expect_all_ok(&rep, &mut p);
    for id in ["spectral-twisted-isometry", "disk-hermiticity-condition", "disk-integral-values"] {
        expect_status(&rep, id, Status::Pass, &mut p);
    }
    expect_status(&rep, "disk-hermiticity-boundary", Status::XfailPass, &mut p);
    for (k, v) in [("alpha", "1"), ("beta", "-q"), ("delta", "1"), ("mu", "q^-1")] {
        if rep.parameters.get(k).map(String::as_str) != Some(v) {
            p.push(format!("{} = {:?}", k, rep.parameters.get(k)));
        }
    }
    let alg = Presentation::parse(DISK_PRES).unwrap();
    let int = DiskIntegral::new(&alg);
    for m in 1..=5i64 {
        let qi = (0..m).fold(Scalar::zero(), |acc, j| &acc + &Scalar::q_pow(-2 * j));
        if int.of_power(&alg, m as usize + 1).unwrap() != qi.inv().unwrap() {
            p.push(format!("∫w^{} is wrong", m + 1));
        }
    }
    Verdict::new(p, format!("{} checks, a = z̄ fails as expected, {:.0?}", rep.checks.len(), t))
}

fn criterion8() -> Verdict {
    let mut p = Vec::new();
    let rep = AnyModel::Presented(Box::new(disk::build_localized(None).unwrap())).check(CUTOFF);
    for id in ["hopf-metric-invariance", "hopf-module-algebra"] {
        expect_status(&rep, id, Status::Pass, &mut p);
    }
    let d = disk::build(None, &[]).unwrap();
    let act = DiskAction::new(&d.ctx()).unwrap();
    let int = DiskIntegral::new(&d.alg);
    for n in 1..=4 {
        match integral_invariance(&d.alg, &act, &int, &[n]) {
            Ok(Outcome::Holds(_)) | Ok(Outcome::Skipped(_)) => {}
            Ok(Outcome::Violated(v)) => p.push(format!("n = {}: {}", n, v)),
            Err(e) => p.push(format!("n = {}: {}", n, e)),
        }
    }
    Verdict::new(p, "metric invariant, module-algebra law, integral invariant for n = 1..4".into())
}

/// `κ̂(φ) = −ε′J(κ▷J⁻¹φ) − κ▷φ` when `κ* = −κ`.
fn antihermitian_form<A: StarAlgebra>(m: &Model<A>, tests: &SpectralTests<A::Elem>, p: &mut Vec<String>) -> usize {
    let ctx: Ctx<A> = m.ctx();
    let t = m.triple.as_ref().expect("spectral model");
    let mut n = 0;
    for k in &tests.fluctuations {
        for phi in &tests.spinors {
            let lhs = t.fluctuation(&ctx, k, phi).unwrap();
            let inner = t.j_apply(&ctx, &t.act(&ctx, k, &t.j_inv(&ctx, phi).unwrap()).unwrap()).unwrap();
            let first: ModElem<A::Elem> = if t.signs().eps1 < 0 { inner } else { ctx.neg(&inner) };
            let rhs = ctx.sub(&first, &t.act(&ctx, k, phi).unwrap());
            if lhs != rhs {
                p.push(format!("{}: κ = {}, φ = {}", m.name, ctx.render(k), ctx.render(phi)));
            }
            n += 1;
        }
    }
    n
}

fn criterion9() -> Verdict {
    let mut p = Vec::new();
    for name in ["m2", "qsphere", "qdisk"] {
        let (rep, _) = check_model(name);
        expect_status(&rep, "spectral-fluctuation", Status::Pass, &mut p);
    }
    let mm = m2::build().unwrap();
    let mut n = antihermitian_form(&mm, &m2::spectral_tests(&mm), &mut p);
    let ms = sphere::build(None, &[]).unwrap();
    n += antihermitian_form(&ms, &sphere::spectral_tests(&ms, CUTOFF), &mut p);
    let md = disk::build(None, &[]).unwrap();
    n += antihermitian_form(&md, &disk::spectral_tests(&md, CUTOFF), &mut p);
    for tests in [m2::spectral_tests(&mm).fluctuations.len(), sphere::spectral_tests(&ms, CUTOFF).fluctuations.len()] {
        if tests < 5 {
            p.push(format!("only {} test κ", tests));
        }
    }
    Verdict::new(p, format!("both formulas agree; antihermitian form on {} (κ, φ) pairs", n))
}

fn criterion10() -> Verdict {
    let mut p = Vec::new();
    let symbolic: Vec<Report> = MODEL_NAMES.iter().map(|n| check_model(n).0).collect();
    let sym_chern: Vec<Report> = BUNDLE_NAMES.iter().map(|b| run_chern(b, None).unwrap().report).collect();
    let su2 = Presentation::parse(SU2_PRES).unwrap();
    let h = HaarState::new(&su2);
    let dk = Presentation::parse(DISK_PRES).unwrap();
    let int = DiskIntegral::new(&dk);
    for (num, den) in [(2i64, 1i64), (3, 2)] {
        let s0 = Scalar::from_frac(num, den);
        let s0r = BigRational::new(num.into(), den.into());
        let statuses = |r: &Report| r.checks.iter().map(|c| (c.id.clone(), c.status)).collect::<Vec<_>>();
        for (name, sym) in MODEL_NAMES.iter().zip(&symbolic) {
            let rep = AnyModel::build(name, Some(s0.clone()), &[]).unwrap().check(CUTOFF);
            if statuses(&rep) != statuses(sym) {
                p.push(format!("{} at s = {}: statuses differ", name, s0));
            }
            for (k, v) in &sym.parameters {
                let specialized = dk.parse_expr(v).ok().and_then(|e| e.as_scalar()).map(|c| c.specialize(&s0r));
                if let Some(Ok(c)) = specialized {
                    if rep.parameters.get(k) != Some(&Scalar::constant(c).to_string()) {
                        p.push(format!("{} at s = {}: {} differs", name, s0, k));
                    }
                }
            }
        }
        for (b, sym) in BUNDLE_NAMES.iter().zip(&sym_chern) {
            let rep = run_chern(b, Some(s0.clone())).unwrap().report;
            if statuses(&rep) != statuses(sym) {
                p.push(format!("{} at s = {}: statuses differ", b, s0));
            }
        }
        let su2n = Presentation::parse_with(SU2_PRES, s0.clone()).unwrap();
        let hn = HaarState::new(&su2n);
        let dkn = Presentation::parse_with(DISK_PRES, s0.clone()).unwrap();
        let intn = DiskIntegral::new(&dkn);
        for k in 0..5 {
            let a = h.value(&su2, k).unwrap().specialize(&s0r).unwrap();
            if Scalar::constant(a) != hn.value(&su2n, k).unwrap() {
                p.push(format!("h((bc)^{}) at s = {}", k, s0));
            }
            let a = int.of_power(&dk, k + 2).unwrap().specialize(&s0r).unwrap();
            if Scalar::constant(a) != intn.of_power(&dkn, k + 2).unwrap() {
                p.push(format!("∫w^{} at s = {}", k + 2, s0));
            }
        }
    }
    Verdict::new(p, "all models and bundles agree at s = 2 and s = 3/2; Haar and integral values specialize exactly".into())
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Verdict); 10] = [
        (1, criterion1),
        (2, criterion2),
        (3, criterion3),
        (4, criterion4),
        (5, criterion5),
        (6, criterion6),
        (7, criterion7),
        (8, criterion8),
        (9, criterion9),
        (10, criterion10),
    ];
    let mut failing = Vec::new();
    println!("acceptance (tolerance: exact equality)");
    for (n, f) in criteria {
        let (v, t) = timed(f);
        println!("criterion {:>2}: {}  [{:.1?}] {}", n, if v.ok { "PASS" } else { "FAIL" }, t, v.detail);
        if !v.ok {
            failing.push(n);
        }
    }
    if failing == KNOWN_FAILING {
        println!("failing criteria match the known set {:?}", KNOWN_FAILING);
        ExitCode::SUCCESS
    } else {
        println!("failing criteria {:?}, expected {:?}", failing, KNOWN_FAILING);
        ExitCode::FAILURE
    }
}
