//! Spectral triples from a connection and a Clifford action: the real
//! structure, grading, inner products, the axiom suite and fluctuations.
//! Also the states used for inner products: the Haar state on the quantum
//! group and the integral on the quantum disk.

use crate::bimod::{BasisMap, Ctx, Key, ModElem, Sym};
use crate::calculus::Calculus;
use crate::connect::{contract, tensor_connection, Connection};
use crate::ncalg::{AlgElem, Presentation, StarAlgebra, Word};
use crate::report::{run_check, Outcome, Report};
use crate::scalar::Scalar;
use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;
use thiserror::Error;

type R<T> = crate::Result<T>;

/// A check on a pair of spinors: `Some(reason)` on failure.
type PairCheck<'f, E> = dyn Fn(&ModElem<E>, &ModElem<E>) -> R<Option<String>> + 'f;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("integral undefined on {0}")]
    IntegralUndefined(String),
    #[error("unresolved parameters: {0}")]
    UnresolvedParameters(String),
    #[error("state is not invariant: {0}")]
    NotInvariant(String),
}

/// A positive linear functional with its modular automorphism `ς`,
/// `φ(xy) = φ(ς(y)x)`.
pub trait State<A: StarAlgebra>: Send + Sync {
    fn name(&self) -> &str;
    fn eval(&self, alg: &A, x: &A::Elem) -> R<Scalar>;
    /// `ς(x)`, or `ς⁻¹(x)` when `inverse` is set.
    fn modular(&self, alg: &A, x: &A::Elem, inverse: bool) -> R<A::Elem>;
}

/// The sign triple `(ε, ε′, ε″)` of KO-dimension `n mod 8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signs {
    pub eps: i8,
    pub eps1: i8,
    /// Only defined in even dimension.
    pub eps2: Option<i8>,
}

pub fn signs(n: u8) -> Signs {
    const EPS: [i8; 8] = [1, 1, -1, -1, -1, -1, 1, 1];
    const EPS1: [i8; 8] = [1, -1, 1, 1, 1, -1, 1, 1];
    const EPS2: [i8; 8] = [1, 0, -1, 0, 1, 0, -1, 0];
    let k = (n % 8) as usize;
    Signs {
        eps: EPS[k],
        eps1: EPS1[k],
        eps2: k.is_multiple_of(2).then_some(EPS2[k]),
    }
}

/// Haar state on the quantum group with generators `a, b, c, d`.
///
/// The values `h((bc)^k)` are solved from left invariance
/// `(id⊗h)Δ(x) = h(x)1` on `x = b^k c^k` and cached.
pub struct HaarState {
    gens: [u8; 4],
    values: RwLock<Vec<Scalar>>,
}

impl HaarState {
    pub fn new(alg: &Presentation) -> HaarState {
        let g = |n: &str| alg.generator(n).expect("quantum group generator");
        HaarState {
            gens: [g("a"), g("b"), g("c"), g("d")],
            values: RwLock::new(vec![Scalar::one()]),
        }
    }

    /// Exponent `k` when the word is `b^k c^k`.
    fn bc_power(&self, w: &[u8]) -> Option<usize> {
        let k = w.iter().take_while(|&&x| x == self.gens[1]).count();
        (w.len() == 2 * k && w[k..].iter().all(|&x| x == self.gens[2])).then_some(k)
    }

    /// `h((bc)^k)`.
    pub fn value(&self, alg: &Presentation, k: usize) -> R<Scalar> {
        loop {
            let have = self.values.read().unwrap().len();
            if k < have {
                return Ok(self.values.read().unwrap()[k].clone());
            }
            let v = self.solve(alg, have)?;
            let mut vals = self.values.write().unwrap();
            if vals.len() == have {
                vals.push(v);
            }
        }
    }

    fn solve(&self, alg: &Presentation, kk: usize) -> R<Scalar> {
        let [a, b, c, d] = self.gens;
        // Δb = a⊗b + b⊗d, Δc = c⊗a + d⊗c
        let choices: Vec<[(u8, u8); 2]> = std::iter::repeat_n([(a, b), (b, d)], kk)
            .chain(std::iter::repeat_n([(c, a), (d, c)], kk))
            .collect();
        let known = self.values.read().unwrap().clone();
        // Per left normal word: (constant part, coefficient of the unknown).
        let mut eqs: BTreeMap<Word, (Scalar, Scalar)> = BTreeMap::new();
        for mask in 0u32..(1 << (2 * kk)) {
            let mut left = Vec::with_capacity(2 * kk);
            let mut right = Vec::with_capacity(2 * kk);
            for (i, ch) in choices.iter().enumerate() {
                let (l, r) = ch[((mask >> i) & 1) as usize];
                left.push(l);
                right.push(r);
            }
            let rn = alg.normal_form_word(&right)?;
            let (mut cst, mut unk) = (Scalar::zero(), Scalar::zero());
            for (w, coef) in rn.terms() {
                match self.bc_power(w) {
                    Some(m) if m < kk => cst = &cst + &(coef * &known[m]),
                    Some(m) if m == kk => unk = &unk + coef,
                    Some(_) => unreachable!("right factor longer than the input"),
                    None => {}
                }
            }
            if cst.is_zero() && unk.is_zero() {
                continue;
            }
            for (w, lc) in alg.normal_form_word(&left)?.into_terms() {
                let e = eqs.entry(w).or_insert((Scalar::zero(), Scalar::zero()));
                e.0 = &e.0 + &(&lc * &cst);
                e.1 = &e.1 + &(&lc * &unk);
            }
        }
        let e = eqs.entry(Word::new()).or_insert((Scalar::zero(), Scalar::zero()));
        e.1 = &e.1 - &Scalar::one();
        let (c0, c1) = eqs
            .values()
            .find(|(_, u)| !u.is_zero())
            .cloned()
            .ok_or_else(|| SpectralError::NotInvariant(format!("no equation determines h((bc)^{})", kk)))?;
        let v = c0.neg().div(&c1)?;
        for (w, (c0, c1)) in &eqs {
            if !(c0 + &(c1 * &v)).is_zero() {
                return Err(SpectralError::NotInvariant(format!(
                    "h((bc)^{}) = {} violates the equation at {}",
                    kk,
                    v,
                    alg.render_word(w)
                ))
                .into());
            }
        }
        Ok(v)
    }
}

impl State<Presentation> for HaarState {
    fn name(&self) -> &str {
        "haar"
    }

    fn eval(&self, alg: &Presentation, x: &AlgElem) -> R<Scalar> {
        let mut acc = Scalar::zero();
        for (w, c) in x.terms() {
            if let Some(k) = self.bc_power(w) {
                acc = &acc + &(c * &self.value(alg, k)?);
            }
        }
        Ok(acc)
    }

    /// `ς(a^i b^j c^k d^l) = q^{2(l−i)} a^i b^j c^k d^l`.
    fn modular(&self, alg: &Presentation, x: &AlgElem, inverse: bool) -> R<AlgElem> {
        let sign = if inverse { -1 } else { 1 };
        let [a, _, _, d] = self.gens;
        Ok(x.terms().fold(AlgElem::zero(), |mut acc, (w, c)| {
            let i = w.iter().filter(|&&g| g == a).count() as i64;
            let l = w.iter().filter(|&&g| g == d).count() as i64;
            acc.add_term(w.clone(), c * &alg.q_pow(sign * 2 * (l - i)));
            acc
        }))
    }
}

/// The integral on the quantum disk:
/// `∫ w^m = 1/[m−1]_{q⁻²}` for `m ≥ 2`, zero in nonzero grade,
/// undefined on `1` and `w`.
pub struct DiskIntegral {
    w: u8,
}

impl DiskIntegral {
    pub fn new(alg: &Presentation) -> DiskIntegral {
        DiskIntegral {
            w: alg.generator("w").expect("disk generator w"),
        }
    }

    pub fn of_power(&self, alg: &Presentation, m: usize) -> R<Scalar> {
        if m < 2 {
            let what = if m == 0 { "1".to_string() } else { "w".to_string() };
            return Err(SpectralError::IntegralUndefined(what).into());
        }
        let mut qi = Scalar::zero();
        for j in 0..(m as i64 - 1) {
            qi = &qi + &alg.q_pow(-2 * j);
        }
        Ok(qi.inv()?)
    }
}

impl State<Presentation> for DiskIntegral {
    fn name(&self) -> &str {
        "disk-integral"
    }

    fn eval(&self, alg: &Presentation, x: &AlgElem) -> R<Scalar> {
        let mut acc = Scalar::zero();
        for (w, c) in x.terms() {
            if alg.word_grade(w) != 0 {
                continue;
            }
            if w.iter().any(|&g| g != self.w) {
                return Err(SpectralError::IntegralUndefined(alg.render_word(w)).into());
            }
            acc = &acc + &(c * &self.of_power(alg, w.len())?);
        }
        Ok(acc)
    }

    /// `ς(b) = q^{2|b|} b`.
    fn modular(&self, alg: &Presentation, x: &AlgElem, inverse: bool) -> R<AlgElem> {
        let sign = if inverse { -1 } else { 1 };
        let mut out = AlgElem::zero();
        for (g, part) in alg.components(x) {
            out = out.add(&part.scale(&alg.q_pow(sign * 2 * g as i64)));
        }
        Ok(out)
    }
}

fn is_undefined(e: &crate::Error) -> bool {
    matches!(e, crate::Error::Spectral(SpectralError::IntegralUndefined(_)))
}

/// Data of a spectral triple on a twisted free module with basis `spinors`.
pub struct SpectralTriple<A: StarAlgebra> {
    pub spinors: Vec<Sym>,
    pub conn: Connection<A::Elem>,
    /// Clifford action `ω ▷ k`, keyed by `[ω, k]`.
    pub cliff: BasisMap<A::Elem>,
    /// `J(k)`, keyed by `[k]`; extended by `J(x·k) = J(k)·x*`.
    pub j: BasisMap<A::Elem>,
    pub gamma: HashMap<Sym, i8>,
    /// `⟨⟨bar(k), l⟩⟩` for basis spinors.
    pub hmat: HashMap<(Sym, Sym), A::Elem>,
    pub state: Box<dyn State<A>>,
    pub n: u8,
    /// Whether `⟨⟨Jφ, Jψ⟩⟩ = ⟨⟨ψ, φ⟩⟩` is expected to hold.
    pub strict_isometry: bool,
    /// Factor exponent `k_e` in `⟨⟨bar J(xe), J(ye)⟩⟩ = q^{k_e}⟨⟨bar(ς⁻¹(y)e), xe⟩⟩`.
    pub twisted_isometry: Option<HashMap<Sym, i64>>,
    /// Whether the sufficient conditions for hermiticity are asserted to hold.
    pub declare_sufficient: bool,
}

/// Inputs for the axiom suite.
pub struct SpectralTests<E> {
    pub algebra: Vec<E>,
    pub spinors: Vec<ModElem<E>>,
    pub forms: Vec<ModElem<E>>,
    /// Antihermitian 1-forms for the fluctuation checks.
    pub fluctuations: Vec<ModElem<E>>,
}

impl<A: StarAlgebra> SpectralTriple<A> {
    pub fn signs(&self) -> Signs {
        signs(self.n)
    }

    fn keys(&self) -> Vec<Key> {
        self.spinors.iter().map(|s| vec![s.clone()]).collect()
    }

    pub fn j_apply(&self, ctx: &Ctx<A>, m: &ModElem<A::Elem>) -> R<ModElem<A::Elem>> {
        let mut out = ModElem::zero();
        for (k, c) in m.terms() {
            let t = ctx.right_mul(ctx.table(&self.j, k)?, &ctx.alg.star(c)?)?;
            out = ctx.add(&out, &t);
        }
        Ok(out)
    }

    /// `J⁻¹ = εJ`.
    pub fn j_inv(&self, ctx: &Ctx<A>, m: &ModElem<A::Elem>) -> R<ModElem<A::Elem>> {
        let j = self.j_apply(ctx, m)?;
        Ok(if self.signs().eps < 0 { ctx.neg(&j) } else { j })
    }

    pub fn gamma_apply(&self, ctx: &Ctx<A>, m: &ModElem<A::Elem>) -> R<ModElem<A::Elem>> {
        let mut out = ModElem::zero();
        for (k, c) in m.terms() {
            let sign = match k.as_slice() {
                [s] => self.gamma.get(s).copied(),
                _ => None,
            }
            .ok_or_else(|| crate::bimod::ModError::MissingEntry(ctx.syms.render_key(k)))?;
            let t = ctx.term(c.clone(), k.clone());
            out = ctx.add(&out, &if sign < 0 { ctx.neg(&t) } else { t });
        }
        Ok(out)
    }

    /// `▷` on elements with keys `[ω, k, rest…]`.
    pub fn cliff_apply(&self, ctx: &Ctx<A>, t: &ModElem<A::Elem>) -> R<ModElem<A::Elem>> {
        ctx.map_span(t, 0, 2, |k| Ok(ctx.table(&self.cliff, k)?.clone()))
    }

    pub fn act(&self, ctx: &Ctx<A>, xi: &ModElem<A::Elem>, phi: &ModElem<A::Elem>) -> R<ModElem<A::Elem>> {
        self.cliff_apply(ctx, &ctx.tensor(xi, phi)?)
    }

    /// `D = ▷∘∇`.
    pub fn dirac(&self, ctx: &Ctx<A>, cal: &Calculus<A::Elem>, phi: &ModElem<A::Elem>) -> R<ModElem<A::Elem>> {
        self.cliff_apply(ctx, &self.conn.apply(ctx, cal, phi)?)
    }

    /// The algebra-valued pairing `⟨⟨bar ψ, φ⟩⟩`.
    pub fn pairing(&self, ctx: &Ctx<A>, psi: &ModElem<A::Elem>, phi: &ModElem<A::Elem>) -> R<A::Elem> {
        let t = ctx.tensor(&ctx.conj(psi)?, phi)?;
        contract(ctx, &t, |k| match k {
            [Sym::Bar(a), b] if a.len() == 1 => self.hmat.get(&(a[0].clone(), b.clone())).cloned(),
            _ => None,
        })
    }

    pub fn inner(&self, ctx: &Ctx<A>, psi: &ModElem<A::Elem>, phi: &ModElem<A::Elem>) -> R<Scalar> {
        self.state.eval(ctx.alg, &self.pairing(ctx, psi, phi)?)
    }

    /// `((ψ, φ)) = ⟨⟨bar(Jψ), φ⟩⟩`.
    pub fn bilinear(&self, ctx: &Ctx<A>, psi: &ModElem<A::Elem>, phi: &ModElem<A::Elem>) -> R<Scalar> {
        self.inner(ctx, &self.j_apply(ctx, psi)?, phi)
    }

    /// `((,))` on elements of `S⊗S` with keys `[k, l]`.
    pub fn bilinear_tensor(&self, ctx: &Ctx<A>, t: &ModElem<A::Elem>) -> R<Scalar> {
        let mut acc = Scalar::zero();
        for (k, c) in t.terms() {
            let v = self.bilinear(ctx, &ctx.term(c.clone(), vec![k[0].clone()]), &ctx.unit(k[1..].to_vec()))?;
            acc = &acc + &v;
        }
        Ok(acc)
    }

    /// Fluctuation `κ̂(φ) = ▷σ(φ⊗κ) − κ▷φ`.
    pub fn fluctuation(&self, ctx: &Ctx<A>, kappa: &ModElem<A::Elem>, phi: &ModElem<A::Elem>) -> R<ModElem<A::Elem>> {
        let a = self.cliff_apply(ctx, &self.conn.sigma_apply(ctx, &ctx.tensor(phi, kappa)?)?)?;
        Ok(ctx.sub(&a, &self.act(ctx, kappa, phi)?))
    }

    /// The same fluctuation written as `ε′J(κ*▷J⁻¹φ) − κ▷φ`.
    pub fn fluctuation_via_j(
        &self,
        ctx: &Ctx<A>,
        cal: &Calculus<A::Elem>,
        kappa: &ModElem<A::Elem>,
        phi: &ModElem<A::Elem>,
    ) -> R<ModElem<A::Elem>> {
        let inner = self.act(ctx, &cal.star1(ctx, kappa)?, &self.j_inv(ctx, phi)?)?;
        let mut a = self.j_apply(ctx, &inner)?;
        if self.signs().eps1 < 0 {
            a = ctx.neg(&a);
        }
        Ok(ctx.sub(&a, &self.act(ctx, kappa, phi)?))
    }

    /// Run the full axiom suite.
    pub fn check(&self, ctx: &Ctx<A>, cal: &Calculus<A::Elem>, tests: &SpectralTests<A::Elem>) -> Report {
        let mut rep = Report::new("spectral");
        let sg = self.signs();
        let alg = ctx.alg;
        let sp = &tests.spinors;
        let show = |m: &ModElem<A::Elem>| ctx.render(m);
        let scaled = |s: i8, m: ModElem<A::Elem>| if s < 0 { ctx.neg(&m) } else { m };

        rep.push(run_check("spectral-j-squared", "J² = ε", false, || {
            for p in sp {
                let jj = self.j_apply(ctx, &self.j_apply(ctx, p)?)?;
                if jj != scaled(sg.eps, p.clone()) {
                    return Ok(Outcome::Violated(format!("J²({}) = {}", show(p), show(&jj))));
                }
            }
            Ok(Outcome::holds())
        }));
        rep.push(run_check("spectral-j-gamma", "Jγ = ε″γJ", false, || {
            let e2 = sg.eps2.unwrap_or(1);
            for p in sp {
                let l = self.j_apply(ctx, &self.gamma_apply(ctx, p)?)?;
                let r = scaled(e2, self.gamma_apply(ctx, &self.j_apply(ctx, p)?)?);
                if l != r {
                    return Ok(Outcome::Violated(format!("φ = {}: {} vs {}", show(p), show(&l), show(&r))));
                }
            }
            Ok(Outcome::holds())
        }));
        rep.push(run_check("spectral-gamma-squared", "γ² = 1", false, || {
            Ok(Outcome::from_first(sp.iter().find_map(|p| {
                let g = self.gamma_apply(ctx, p).and_then(|x| self.gamma_apply(ctx, &x));
                (g.ok().as_ref() != Some(p)).then(|| show(p))
            })))
        }));
        rep.push(run_check("spectral-gamma-commutes", "[γ, a] = 0", false, || {
            for a in &tests.algebra {
                for p in sp {
                    let ap = ctx.left_mul(a, p)?;
                    if self.gamma_apply(ctx, &ap)? != ctx.left_mul(a, &self.gamma_apply(ctx, p)?)? {
                        return Ok(Outcome::Violated(format!("a = {}, φ = {}", alg.render(a), show(p))));
                    }
                }
            }
            Ok(Outcome::holds())
        }));
        rep.push(run_check("spectral-d-gamma", "Dγ = −γD", false, || {
            for p in sp {
                let l = self.dirac(ctx, cal, &self.gamma_apply(ctx, p)?)?;
                let r = ctx.neg(&self.gamma_apply(ctx, &self.dirac(ctx, cal, p)?)?);
                if l != r {
                    return Ok(Outcome::Violated(format!("φ = {}: {} vs {}", show(p), show(&l), show(&r))));
                }
            }
            Ok(Outcome::holds())
        }));
        let jbj = |b: &A::Elem, p: &ModElem<A::Elem>| -> R<ModElem<A::Elem>> {
            self.j_apply(ctx, &ctx.left_mul(b, &self.j_inv(ctx, p)?)?)
        };
        rep.push(run_check("spectral-order-zero", "[a, JbJ⁻¹] = 0", false, || {
            for a in &tests.algebra {
                for b in &tests.algebra {
                    for p in sp {
                        let l = ctx.left_mul(a, &jbj(b, p)?)?;
                        let r = jbj(b, &ctx.left_mul(a, p)?)?;
                        if l != r {
                            return Ok(Outcome::Violated(format!(
                                "a = {}, b = {}, φ = {}",
                                alg.render(a),
                                alg.render(b),
                                show(p)
                            )));
                        }
                    }
                }
            }
            Ok(Outcome::holds())
        }));
        rep.push(run_check("spectral-jd", "JD = ε′DJ", false, || {
            for p in sp {
                let l = self.j_apply(ctx, &self.dirac(ctx, cal, p)?)?;
                let r = scaled(sg.eps1, self.dirac(ctx, cal, &self.j_apply(ctx, p)?)?);
                if l != r {
                    return Ok(Outcome::Violated(format!("φ = {}: {} vs {}", show(p), show(&l), show(&r))));
                }
            }
            Ok(Outcome::holds())
        }));
        rep.push(run_check("spectral-j-clifford", "J(ξ▷φ) = ε′▷σ(Jφ⊗ξ*)", false, || {
            for xi in &tests.forms {
                for p in sp {
                    let l = self.j_apply(ctx, &self.act(ctx, xi, p)?)?;
                    let t = ctx.tensor(&self.j_apply(ctx, p)?, &cal.star1(ctx, xi)?)?;
                    let r = scaled(sg.eps1, self.cliff_apply(ctx, &self.conn.sigma_apply(ctx, &t)?)?);
                    if l != r {
                        return Ok(Outcome::Violated(format!(
                            "ξ = {}, φ = {}: {} vs {}",
                            show(xi),
                            show(p),
                            show(&l),
                            show(&r)
                        )));
                    }
                }
            }
            Ok(Outcome::holds())
        }));
        let comm_d = |a: &A::Elem, p: &ModElem<A::Elem>| -> R<ModElem<A::Elem>> {
            Ok(ctx.sub(
                &self.dirac(ctx, cal, &ctx.left_mul(a, p)?)?,
                &ctx.left_mul(a, &self.dirac(ctx, cal, p)?)?,
            ))
        };
        rep.push(run_check("spectral-commutator", "[D, a]φ = da▷φ", false, || {
            for a in &tests.algebra {
                for p in sp {
                    let l = comm_d(a, p)?;
                    let r = self.act(ctx, &cal.dh(ctx, a)?, p)?;
                    if l != r {
                        return Ok(Outcome::Violated(format!("a = {}, φ = {}", alg.render(a), show(p))));
                    }
                }
            }
            Ok(Outcome::holds())
        }));
        rep.push(run_check("spectral-first-order", "[[D, a], JbJ⁻¹] = 0", false, || {
            for a in &tests.algebra {
                for b in &tests.algebra {
                    for p in sp {
                        let l = comm_d(a, &jbj(b, p)?)?;
                        let r = jbj(b, &comm_d(a, p)?)?;
                        if l != r {
                            return Ok(Outcome::Violated(format!(
                                "a = {}, b = {}, φ = {}",
                                alg.render(a),
                                alg.render(b),
                                show(p)
                            )));
                        }
                    }
                }
            }
            Ok(Outcome::holds())
        }));
        rep.push(run_check("spectral-j-connection", "(id⊗j)∇ = ∇̄ j", false, || {
            let keys = self.keys();
            let conj = self.conn.conjugate(ctx, cal, &keys)?;
            let jmap = |k: &[Sym]| -> R<ModElem<A::Elem>> { ctx.conj(&self.j_apply(ctx, &ctx.unit(k.to_vec()))?) };
            for p in sp {
                let l = ctx.map_span(&self.conn.apply(ctx, cal, p)?, 1, 1, jmap)?;
                let r = conj.apply(ctx, cal, &ctx.conj(&self.j_apply(ctx, p)?)?)?;
                if l != r {
                    return Ok(Outcome::Violated(format!("φ = {}: {} vs {}", show(p), show(&l), show(&r))));
                }
            }
            Ok(Outcome::holds())
        }));
        rep.push(run_check("spectral-right-action", "ψ·a = Ja*J⁻¹ψ", false, || {
            for a in &tests.algebra {
                for p in sp {
                    let l = ctx.right_mul(p, a)?;
                    let r = jbj(&alg.star(a)?, p)?;
                    if l != r {
                        return Ok(Outcome::Violated(format!("a = {}, ψ = {}", alg.render(a), show(p))));
                    }
                }
            }
            Ok(Outcome::holds())
        }));
        let cliff_keys: Vec<Key> = self.cliff.keys().cloned().collect();
        rep.push(run_check("spectral-cliff-bimodule", "▷ is a bimodule map", false, || {
            ctx.check_right_linear(&cliff_keys, &tests.algebra, |k| Ok(ctx.table(&self.cliff, k)?.clone()))?;
            Ok(Outcome::holds())
        }));
        rep.push(run_check("spectral-sigma-inverse", "σ is invertible", false, || {
            self.conn.check_inverse(ctx, &self.keys(), &cal.horizontal)
        }));
        rep.push(run_check("spectral-braiding", "σ(φ⊗da) = ∇(φa) − ∇(φ)a", false, || {
            self.conn.check_braiding(ctx, cal, &self.keys(), &tests.algebra)
        }));
        let sigma_keys: Vec<Key> = self.conn.sigma.keys().cloned().collect();
        rep.push(run_check("spectral-sigma-bimodule", "σ is a bimodule map", false, || {
            ctx.check_right_linear(&sigma_keys, &tests.algebra, |k| Ok(ctx.table(&self.conn.sigma, k)?.clone()))?;
            Ok(Outcome::holds())
        }));

        let pairs_check = |f: &PairCheck<'_, A::Elem>| -> R<Outcome> {
            let (mut tried, mut skipped) = (0usize, 0usize);
            for x in sp {
                for y in sp {
                    match f(x, y) {
                        Ok(None) => tried += 1,
                        Ok(Some(c)) => return Ok(Outcome::Violated(c)),
                        Err(e) if is_undefined(&e) => skipped += 1,
                        Err(e) => return Err(e),
                    }
                }
            }
            if tried == 0 {
                return Ok(Outcome::Skipped("no pair in the domain".into()));
            }
            Ok(Outcome::Holds((skipped > 0).then(|| format!("{} pairs, {} outside the domain", tried, skipped))))
        };
        rep.push(run_check("spectral-hermitian", "⟨⟨Dψ, φ⟩⟩ = ⟨⟨ψ, Dφ⟩⟩", false, || {
            pairs_check(&|x, y| {
                let l = self.inner(ctx, &self.dirac(ctx, cal, x)?, y)?;
                let r = self.inner(ctx, x, &self.dirac(ctx, cal, y)?)?;
                Ok((l != r).then(|| format!("ψ = {}, φ = {}: {} vs {}", show(x), show(y), l, r)))
            })
        }));
        rep.push(run_check("spectral-round-hermitian", "ε′((Dψ, φ)) = ((ψ, Dφ))", false, || {
            pairs_check(&|x, y| {
                let mut l = self.bilinear(ctx, &self.dirac(ctx, cal, x)?, y)?;
                if sg.eps1 < 0 {
                    l = l.neg();
                }
                let r = self.bilinear(ctx, x, &self.dirac(ctx, cal, y)?)?;
                Ok((l != r).then(|| format!("ψ = {}, φ = {}: {} vs {}", show(x), show(y), l, r)))
            })
        }));
        rep.push(run_check("spectral-strict-isometry", "⟨⟨Jφ, Jψ⟩⟩ = ⟨⟨ψ, φ⟩⟩", !self.strict_isometry, || {
            pairs_check(&|x, y| {
                let l = self.inner(ctx, &self.j_apply(ctx, y)?, &self.j_apply(ctx, x)?)?;
                let r = self.inner(ctx, x, y)?;
                Ok((l != r).then(|| format!("ψ = {}, φ = {}: {} vs {}", show(x), show(y), l, r)))
            })
        }));
        if let Some(tw) = &self.twisted_isometry {
            rep.push(run_check("spectral-twisted-isometry", "⟨⟨J(xe), J(ye)⟩⟩ = q^k⟨⟨ς⁻¹(y)e, xe⟩⟩", false, || {
                pairs_check(&|x, y| {
                    let (Some((kx, cx)), Some((ky, cy))) = (single(x), single(y)) else {
                        return Ok(None);
                    };
                    if kx != ky {
                        return Ok(None);
                    }
                    let k = tw.get(&kx[0]).copied().unwrap_or(0);
                    let l = self.inner(ctx, &self.j_apply(ctx, x)?, &self.j_apply(ctx, y)?)?;
                    let sy = self.state.modular(alg, cy, true)?;
                    let r = &alg.q_pow(k) * &self.inner(ctx, &ctx.term(sy, ky.clone()), &ctx.term(cx.clone(), kx.clone()))?;
                    Ok((l != r).then(|| format!("x e = {}, y e = {}: {} vs {}", show(x), show(y), l, r)))
                })
            }));
        }
        rep.push(run_check("spectral-twisted-trace", "φ(xy) = φ(ς(y)x)", false, || {
            let mut elems = tests.algebra.clone();
            for a in &tests.algebra {
                elems.push(alg.star(a)?);
            }
            let (mut tried, mut skipped) = (0, 0);
            for x in &elems {
                for y in &elems {
                    let l = self.state.eval(alg, &alg.mul(x, y)?);
                    let r = self
                        .state
                        .modular(alg, y, false)
                        .and_then(|sy| alg.mul(&sy, x))
                        .and_then(|p| self.state.eval(alg, &p));
                    match (l, r) {
                        (Ok(l), Ok(r)) if l == r => tried += 1,
                        (Ok(l), Ok(r)) => {
                            return Ok(Outcome::Violated(format!(
                                "x = {}, y = {}: {} vs {}",
                                alg.render(x),
                                alg.render(y),
                                l,
                                r
                            )))
                        }
                        (Err(e), _) | (_, Err(e)) if is_undefined(&e) => skipped += 1,
                        (Err(e), _) | (_, Err(e)) => return Err(e),
                    }
                }
            }
            Ok(Outcome::Holds(Some(format!("{} pairs, {} outside the domain", tried, skipped))))
        }));
        rep.push(run_check("spectral-sign-table", "(ε, ε′, ε″) match the KO-dimension table", false, || {
            let p = &sp[0];
            let jj = self.j_apply(ctx, &self.j_apply(ctx, p)?)?;
            let eps = if jj == *p { 1 } else if jj == ctx.neg(p) { -1 } else { 0 };
            Ok(if eps == sg.eps {
                Outcome::Holds(Some(format!("n = {}: ε = {}, ε′ = {}, ε″ = {:?}", self.n, sg.eps, sg.eps1, sg.eps2)))
            } else {
                Outcome::Violated(format!("J² = {} but the table gives ε = {}", eps, sg.eps))
            })
        }));

        let (c1, c2) = self.sufficient_conditions(ctx, cal, tests);
        for (id, anchor, res) in [
            ("spectral-sufficient-i", "((,))∘(▷⊗id)∇_{S⊗S} = 0", c1),
            ("spectral-sufficient-ii", "((,))∘(▷σ⊗id) = −ε′((,))∘(id⊗▷)", c2),
        ] {
            rep.push(run_check(id, anchor, false, || {
                let o = res?;
                Ok(match (self.declare_sufficient, o) {
                    (true, o) => o,
                    (false, Outcome::Violated(c)) => Outcome::Skipped(format!("not asserted for this model; fails at {}", c)),
                    (false, o) => o,
                })
            }));
        }

        rep.push(run_check("spectral-fluctuation", "▷σ(φ⊗κ) − κ▷φ = ε′J(κ*▷J⁻¹φ) − κ▷φ", false, || {
            for k in &tests.fluctuations {
                if cal.star1(ctx, k)? != ctx.neg(k) {
                    return Ok(Outcome::Violated(format!("κ = {} is not antihermitian", show(k))));
                }
                for p in sp {
                    let l = self.fluctuation(ctx, k, p)?;
                    let r = self.fluctuation_via_j(ctx, cal, k, p)?;
                    if l != r {
                        return Ok(Outcome::Violated(format!("κ = {}, φ = {}: {} vs {}", show(k), show(p), show(&l), show(&r))));
                    }
                }
            }
            Ok(Outcome::holds())
        }));
        rep
    }

    /// The two sufficient conditions for `D` to be hermitian for `((,))`.
    pub fn sufficient_conditions(
        &self,
        ctx: &Ctx<A>,
        cal: &Calculus<A::Elem>,
        tests: &SpectralTests<A::Elem>,
    ) -> (R<Outcome>, R<Outcome>) {
        let sp = &tests.spinors;
        let keys = self.keys();
        let first = (|| -> R<Outcome> {
            let tc = tensor_connection(ctx, &self.conn, &self.conn, &keys, &keys, &cal.horizontal)?;
            for x in sp {
                for y in sp {
                    let t = tc.apply(ctx, cal, &ctx.tensor(x, y)?)?;
                    let v = match self.bilinear_tensor(ctx, &self.cliff_apply(ctx, &t)?) {
                        Ok(v) => v,
                        Err(e) if is_undefined(&e) => continue,
                        Err(e) => return Err(e),
                    };
                    if !v.is_zero() {
                        return Ok(Outcome::Violated(format!("ψ = {}, φ = {}: {}", ctx.render(x), ctx.render(y), v)));
                    }
                }
            }
            Ok(Outcome::holds())
        })();
        let second = (|| -> R<Outcome> {
            let sg = self.signs();
            for x in sp {
                for xi in &tests.forms {
                    for y in sp {
                        let t = ctx.tensor(&ctx.tensor(x, xi)?, y)?;
                        let l = self
                            .bilinear_tensor(ctx, &self.cliff_apply(ctx, &self.conn.sigma_apply(ctx, &t)?)?);
                        let r = ctx
                            .map_span(&t, 1, 2, |k| Ok(ctx.table(&self.cliff, k)?.clone()))
                            .and_then(|m| self.bilinear_tensor(ctx, &m));
                        let (l, r) = match (l, r) {
                            (Ok(l), Ok(r)) => (l, r),
                            (Err(e), _) | (_, Err(e)) if is_undefined(&e) => continue,
                            (Err(e), _) | (_, Err(e)) => return Err(e),
                        };
                        let r = if sg.eps1 < 0 { r } else { r.neg() };
                        if l != r {
                            return Ok(Outcome::Violated(format!(
                                "ψ = {}, ξ = {}, φ = {}: {} vs {}",
                                ctx.render(x),
                                ctx.render(xi),
                                ctx.render(y),
                                l,
                                r
                            )));
                        }
                    }
                }
            }
            Ok(Outcome::holds())
        })();
        (first, second)
    }
}

/// The single term of a one-term element.
fn single<E: Clone>(m: &ModElem<E>) -> Option<(Key, &E)> {
    let mut it = m.terms();
    let (k, c) = it.next()?;
    it.next().is_none().then(|| (k.clone(), c))
}
