//! The action of `U_q(su(1,1))` on the quantum disk and on its forms.
//!
//! Coproducts are `ΔX± = X±⊗K + K⁻¹⊗X±` and `ΔK = K⊗K`, with
//! `K▷x = q^{−|x|}x` on homogeneous elements. The action on a product is
//! `X▷(f₁⋯fₙ) = Σᵢ (K⁻¹▷f₁⋯fᵢ₋₁)(X▷fᵢ)(K▷fᵢ₊₁⋯fₙ)`, and tensor products of
//! forms are treated as products of their factors.

use crate::bimod::{Ctx, ModElem, Sym};
use crate::calculus::Calculus;
use crate::ncalg::{AlgElem, Presentation, StarAlgebra};
use crate::report::{run_check, Outcome, Report};
use crate::scalar::Scalar;
use crate::spectral::{DiskIntegral, State};
use std::collections::HashMap;
use std::fmt;

type R<T> = crate::Result<T>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HopfGen {
    XPlus,
    XMinus,
    K,
    KInv,
}

impl fmt::Display for HopfGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HopfGen::XPlus => "X+",
            HopfGen::XMinus => "X-",
            HopfGen::K => "K",
            HopfGen::KInv => "K^-1",
        })
    }
}

/// The action on the disk (optionally with `w⁻¹`) and on `dz, dz̄`.
pub struct DiskAction {
    gens: HashMap<(HopfGen, u8), AlgElem>,
    forms: HashMap<(HopfGen, Sym), ModElem<AlgElem>>,
}

fn s_pow(alg: &Presentation, k: i64) -> Scalar {
    alg.s().pow(k).expect("s is invertible")
}

impl DiskAction {
    /// Build the action from `X+▷z = q^{−1/2}`, `X+▷z̄ = −q^{−1/2}z̄²`,
    /// `X−▷z̄ = q^{1/2}`, `X−▷z = −q^{1/2}z²`, with `w = 1 − z̄z` and
    /// `w⁻¹` determined by `w w⁻¹ = 1`.
    pub fn new(ctx: &Ctx<Presentation>) -> R<DiskAction> {
        let alg = ctx.alg;
        let z = alg.generator("z").expect("disk generator z");
        let zb = alg.generator("zb").expect("disk generator zb");
        let w = alg.generator("w").expect("disk generator w");
        let winv = alg.generator("winv");
        let mut act = DiskAction {
            gens: HashMap::new(),
            forms: HashMap::new(),
        };
        let zb2 = alg.normal_form_word(&[zb, zb])?;
        let z2 = alg.normal_form_word(&[z, z])?;
        act.gens.insert((HopfGen::XPlus, z), AlgElem::scalar(s_pow(alg, -1)));
        act.gens.insert((HopfGen::XPlus, zb), zb2.scale(&s_pow(alg, -1).neg()));
        act.gens.insert((HopfGen::XMinus, zb), AlgElem::scalar(s_pow(alg, 1)));
        act.gens.insert((HopfGen::XMinus, z), z2.scale(&s_pow(alg, 1).neg()));
        for g in [HopfGen::XPlus, HopfGen::XMinus] {
            let xw = act.act_word(alg, g, &[zb, z])?.neg();
            act.gens.insert((g, w), xw.clone());
            if let Some(wi) = winv {
                let wi = AlgElem::term(vec![wi], Scalar::one());
                let v = alg.multiply(&alg.multiply(&wi, &xw)?, &wi)?.neg();
                act.gens.insert((g, winv.unwrap()), v);
            }
        }
        let dz = ctx.syms.get("dz");
        let dzb = ctx.syms.get("dzb");
        let zb_e = alg.gen("zb");
        let z_e = alg.gen("z");
        act.forms.insert((HopfGen::XPlus, dz.clone()), ModElem::zero());
        act.forms.insert((HopfGen::XMinus, dzb.clone()), ModElem::zero());
        // X+▷dz̄ = −q^{−1/2}(dz̄ z̄ + z̄ dz̄), X−▷dz = −q^{1/2}(z dz + dz z)
        let both = |x: &AlgElem, e: &Sym| -> R<ModElem<AlgElem>> {
            let u = ctx.unit(vec![e.clone()]);
            Ok(ctx.add(&ctx.right_mul(&u, x)?, &ctx.left_mul(x, &u)?))
        };
        act.forms.insert((HopfGen::XPlus, dzb.clone()), ctx.scale(&s_pow(alg, -1).neg(), &both(&zb_e, &dzb)?)?);
        act.forms.insert((HopfGen::XMinus, dz.clone()), ctx.scale(&s_pow(alg, 1).neg(), &both(&z_e, &dz)?)?);
        Ok(act)
    }

    /// Scalar of `K^{±1}` on grade `g`.
    fn k_factor(alg: &Presentation, inverse: bool, g: i32) -> Scalar {
        alg.q_pow(if inverse { g as i64 } else { -(g as i64) })
    }

    /// `h▷w` for a word, not necessarily in normal form.
    pub fn act_word(&self, alg: &Presentation, h: HopfGen, w: &[u8]) -> R<AlgElem> {
        match h {
            HopfGen::K | HopfGen::KInv => {
                let f = Self::k_factor(alg, h == HopfGen::KInv, alg.word_grade(w));
                Ok(alg.normal_form_word(w)?.scale(&f))
            }
            HopfGen::XPlus | HopfGen::XMinus => {
                let mut acc = AlgElem::zero();
                for i in 0..w.len() {
                    let Some(xf) = self.gens.get(&(h, w[i])) else {
                        continue;
                    };
                    let pre = &w[..i];
                    let post = &w[i + 1..];
                    let f = &Self::k_factor(alg, true, alg.word_grade(pre)) * &Self::k_factor(alg, false, alg.word_grade(post));
                    let t = alg.multiply(
                        &alg.multiply(&AlgElem::term(pre.to_vec(), f), xf)?,
                        &AlgElem::term(post.to_vec(), Scalar::one()),
                    )?;
                    acc = acc.add(&t);
                }
                Ok(acc)
            }
        }
    }

    pub fn act(&self, alg: &Presentation, h: HopfGen, x: &AlgElem) -> R<AlgElem> {
        let mut acc = AlgElem::zero();
        for (w, c) in x.terms() {
            acc = acc.add(&self.act_word(alg, h, w)?.scale(c));
        }
        Ok(acc)
    }

    /// Apply a sequence of generators, rightmost first.
    pub fn act_seq(&self, alg: &Presentation, hs: &[HopfGen], x: &AlgElem) -> R<AlgElem> {
        hs.iter().rev().try_fold(x.clone(), |acc, &h| self.act(alg, h, &acc))
    }

    /// `h▷m` for forms and their tensor products.
    pub fn act_mod(&self, ctx: &Ctx<Presentation>, h: HopfGen, m: &ModElem<AlgElem>) -> R<ModElem<AlgElem>> {
        let alg = ctx.alg;
        let mut out = ModElem::zero();
        for (k, c) in m.terms() {
            match h {
                HopfGen::K | HopfGen::KInv => {
                    let mut part = ModElem::zero();
                    for (g, comp) in alg.components(c) {
                        let f = Self::k_factor(alg, h == HopfGen::KInv, g + ctx.syms.key_grade(k));
                        part = ctx.add(&part, &ctx.term(comp.scale(&f), k.clone()));
                    }
                    out = ctx.add(&out, &part);
                }
                HopfGen::XPlus | HopfGen::XMinus => {
                    let kf = Self::k_factor(alg, false, ctx.syms.key_grade(k));
                    let xc = self.act(alg, h, c)?.scale(&kf);
                    out = ctx.add(&out, &ctx.term(xc, k.clone()));
                    for (g, comp) in alg.components(c) {
                        for i in 0..k.len() {
                            let Some(xf) = self.forms.get(&(h, k[i].clone())) else {
                                continue;
                            };
                            let f = &Self::k_factor(alg, true, g + ctx.syms.key_grade(&k[..i]))
                                * &Self::k_factor(alg, false, ctx.syms.key_grade(&k[i + 1..]));
                            let pre = ctx.term(comp.scale(&f), k[..i].to_vec());
                            let t = ctx.tensor(&ctx.tensor(&pre, xf)?, &ctx.unit(k[i + 1..].to_vec()))?;
                            out = ctx.add(&out, &t);
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Inputs for the invariance suite.
pub struct HopfTests {
    pub elements: Vec<AlgElem>,
    /// Homogeneous elements for the commutator relation.
    pub weights: Vec<AlgElem>,
}

/// Algebraic laws of the action: module-algebra law on the rewrite rules and
/// unit relations, `[X+, X−] = (K² − K⁻²)/(q − q⁻¹)`, `KX±K⁻¹ = q^{±1}X±`,
/// unitarity `(X+▷a)* = q⁻¹X−▷a*`, and compatibility with `d`.
pub fn check_action(
    ctx: &Ctx<Presentation>,
    cal: &Calculus<AlgElem>,
    act: &DiskAction,
    tests: &HopfTests,
) -> Report {
    let alg = ctx.alg;
    let mut rep = Report::new("hopf");
    let all = [HopfGen::XPlus, HopfGen::XMinus, HopfGen::K, HopfGen::KInv];
    rep.push(run_check("hopf-module-algebra", "h▷(xy) = (h₁▷x)(h₂▷y) on every relation", false, || {
        for (lhs, rhs) in alg.rule_pairs() {
            for h in all {
                let l = act.act_word(alg, h, &lhs)?;
                let r = act.act(alg, h, &rhs)?;
                if l != r {
                    return Ok(Outcome::Violated(format!(
                        "{} on {}: {} vs {}",
                        h,
                        alg.render_word(&lhs),
                        alg.render(&l),
                        alg.render(&r)
                    )));
                }
            }
        }
        for (name, rel) in alg.unit_relations() {
            for h in all {
                let mut acc = AlgElem::zero();
                for (w, c) in rel.terms() {
                    acc = acc.add(&act.act_word(alg, h, w)?.scale(c));
                }
                let expect = match h {
                    HopfGen::K | HopfGen::KInv => AlgElem::one(),
                    _ => AlgElem::zero(),
                };
                if acc != expect {
                    return Ok(Outcome::Violated(format!("{} on {} = 1: {}", h, name, alg.render(&acc))));
                }
            }
        }
        Ok(Outcome::holds())
    }));
    rep.push(run_check("hopf-commutator", "[X+, X−] = (K² − K⁻²)/(q − q⁻¹)", false, || {
        let denom = alg.q_pow(1).sub(&alg.q_pow(-1));
        for m in &tests.weights {
            let g = alg.grade_of(m).unwrap_or(0) as i64;
            let l = act
                .act_seq(alg, &[HopfGen::XPlus, HopfGen::XMinus], m)?
                .sub(&act.act_seq(alg, &[HopfGen::XMinus, HopfGen::XPlus], m)?);
            let f = alg.q_pow(-2 * g).sub(&alg.q_pow(2 * g)).div(&denom)?;
            if l != m.scale(&f) {
                return Ok(Outcome::Violated(format!("on {}: {}", alg.render(m), alg.render(&l))));
            }
        }
        Ok(Outcome::holds())
    }));
    rep.push(run_check("hopf-k-conjugation", "KX±K⁻¹ = q^{±1}X±", false, || {
        for m in &tests.elements {
            for (x, e) in [(HopfGen::XPlus, 1), (HopfGen::XMinus, -1)] {
                let l = act.act_seq(alg, &[HopfGen::K, x, HopfGen::KInv], m)?;
                let r = act.act(alg, x, m)?.scale(&alg.q_pow(e));
                if l != r {
                    return Ok(Outcome::Violated(format!("{} on {}", x, alg.render(m))));
                }
            }
        }
        Ok(Outcome::holds())
    }));
    rep.push(run_check("hopf-unitarity", "(X+▷a)* = q⁻¹X−▷a*, (K▷a)* = K⁻¹▷a*", false, || {
        for m in &tests.elements {
            let ms = alg.star_elem(m)?;
            let l = alg.star_elem(&act.act(alg, HopfGen::XPlus, m)?)?;
            let r = act.act(alg, HopfGen::XMinus, &ms)?.scale(&alg.q_pow(-1));
            let lk = alg.star_elem(&act.act(alg, HopfGen::K, m)?)?;
            let rk = act.act(alg, HopfGen::KInv, &ms)?;
            if l != r || lk != rk {
                return Ok(Outcome::Violated(format!("a = {}", alg.render(m))));
            }
        }
        Ok(Outcome::holds())
    }));
    rep.push(run_check("hopf-d-equivariance", "h▷dx = d(h▷x)", false, || {
        for m in &tests.elements {
            for h in all {
                let l = act.act_mod(ctx, h, &cal.d(ctx, m)?)?;
                let r = cal.d(ctx, &act.act(alg, h, m)?)?;
                if l != r {
                    return Ok(Outcome::Violated(format!(
                        "{} on d({}): {} vs {}",
                        h,
                        alg.render(m),
                        ctx.render(&l),
                        ctx.render(&r)
                    )));
                }
            }
        }
        Ok(Outcome::holds())
    }));
    rep
}

/// `X±▷g = 0` and `K▷g = g`, with a control showing that `dz⊗dz̄` alone is
/// not invariant.
pub fn check_metric_invariance(ctx: &Ctx<Presentation>, act: &DiskAction, g: &ModElem<AlgElem>) -> Report {
    let mut rep = Report::new("hopf-metric");
    rep.push(run_check("hopf-metric-invariance", "X±▷g = 0, K▷g = g", false, || {
        for h in [HopfGen::XPlus, HopfGen::XMinus] {
            let v = act.act_mod(ctx, h, g)?;
            if !v.is_zero() {
                return Ok(Outcome::Violated(format!("{}▷g = {}", h, ctx.render(&v))));
            }
        }
        let k = act.act_mod(ctx, HopfGen::K, g)?;
        Ok(if k == *g {
            Outcome::holds()
        } else {
            Outcome::Violated(format!("K▷g = {}", ctx.render(&k)))
        })
    }));
    rep.push(run_check("hopf-metric-control", "dz⊗dz̄ alone is invariant", true, || {
        let t = ctx.unit(vec![ctx.syms.get("dz"), ctx.syms.get("dzb")]);
        let v = act.act_mod(ctx, HopfGen::XPlus, &t)?;
        Ok(if v.is_zero() {
            Outcome::holds()
        } else {
            Outcome::Violated(format!("X+▷(dz⊗dz̄) = {}", ctx.render(&v)))
        })
    }));
    rep
}

/// Test elements `z wⁿ`, `z̄ wⁿ`, `wⁿ⁺¹` for the integral invariance check.
pub fn integral_test_elements(alg: &Presentation, n: usize) -> R<Vec<AlgElem>> {
    let wn = (0..n).try_fold(AlgElem::one(), |acc, _| alg.multiply(&acc, &alg.gen("w")))?;
    Ok(vec![
        alg.multiply(&alg.gen("z"), &wn)?,
        alg.multiply(&alg.gen("zb"), &wn)?,
        alg.multiply(&wn, &alg.gen("w"))?,
    ])
}

/// `∫(h▷x) = ε(h)∫x` on the elements for the given powers.
pub fn integral_invariance(
    alg: &Presentation,
    act: &DiskAction,
    integral: &DiskIntegral,
    powers: &[usize],
) -> R<Outcome> {
    for &n in powers {
        for x in integral_test_elements(alg, n)? {
            for h in [HopfGen::XPlus, HopfGen::XMinus, HopfGen::K] {
                let v = integral.eval(alg, &act.act(alg, h, &x)?)?;
                let expect = if h == HopfGen::K {
                    integral.eval(alg, &x)?
                } else {
                    Scalar::zero()
                };
                if v != expect {
                    return Ok(Outcome::Violated(format!(
                        "∫{}▷({}) = {}, expected {}",
                        h,
                        alg.render(&x),
                        v,
                        expect
                    )));
                }
            }
        }
    }
    Ok(Outcome::holds())
}

/// Integral invariance for `n ≥ 2`, and the boundary case `n = 1` recorded as
/// an expected failure.
pub fn check_integral_invariance(alg: &Presentation, act: &DiskAction, integral: &DiskIntegral) -> Report {
    let mut rep = Report::new("hopf-integral");
    rep.push(run_check("hopf-integral-invariance", "∫h▷x = ε(h)∫x for x = zwⁿ, z̄wⁿ, wⁿ⁺¹, n = 2..4", false, || {
        integral_invariance(alg, act, integral, &[2, 3, 4])
    }));
    rep.push(run_check("hopf-integral-invariance-n1", "∫h▷x = ε(h)∫x at n = 1", true, || {
        integral_invariance(alg, act, integral, &[1])
    }));
    rep
}
