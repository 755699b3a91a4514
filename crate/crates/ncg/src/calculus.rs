//! First-order differential calculi with Ω² by wedge tables: exterior
//! derivative, wedge, star on forms and (p,q) projections.

use crate::bimod::{Ctx, ModElem, Sym};
use crate::ncalg::{StarAlgebra, Word};
use crate::report::{run_check, Outcome, Report};
use crate::scalar::Scalar;
use std::collections::HashMap;
use std::sync::RwLock;

type R<T> = crate::Result<T>;

/// How `d` acts on the algebra.
pub enum Derivation<E> {
    /// `dx = θx − xθ` for a fixed 1-form θ.
    Inner(ModElem<E>),
    /// `d` on each generator, extended by the Leibniz rule on words.
    Generators(Vec<ModElem<E>>),
}

pub struct Calculus<E> {
    /// Basis 1-forms of the full calculus.
    pub one_forms: Vec<Sym>,
    /// Basis 1-forms kept by the projection π (all of them unless horizontal).
    pub horizontal: Vec<Sym>,
    pub deriv: Derivation<E>,
    /// `d` of each horizontal basis 1-form, as a 2-form.
    pub d_basis: HashMap<Sym, ModElem<E>>,
    /// `e_i ∧ e_j = c·ω`, `None` for zero.
    pub wedge_table: HashMap<(Sym, Sym), Option<(Scalar, Sym)>>,
    pub two_forms: Vec<Sym>,
    /// `e*` for each basis 1-form.
    pub star_table: HashMap<Sym, ModElem<E>>,
    cache: RwLock<HashMap<Word, ModElem<E>>>,
}

impl<E: Clone + Send + Sync> Calculus<E> {
    pub fn new(
        one_forms: Vec<Sym>,
        horizontal: Vec<Sym>,
        deriv: Derivation<E>,
        two_forms: Vec<Sym>,
    ) -> Calculus<E> {
        Calculus {
            one_forms,
            horizontal,
            deriv,
            d_basis: HashMap::new(),
            wedge_table: HashMap::new(),
            two_forms,
            star_table: HashMap::new(),
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn set_wedge(&mut self, a: &Sym, b: &Sym, v: Option<(Scalar, Sym)>) {
        self.wedge_table.insert((a.clone(), b.clone()), v);
    }
}

impl<E: Clone + PartialEq + std::fmt::Debug + Send + Sync> Calculus<E> {
    /// Full exterior derivative of an algebra element.
    pub fn d<A: StarAlgebra<Elem = E>>(&self, ctx: &Ctx<A>, x: &E) -> R<ModElem<E>> {
        match &self.deriv {
            Derivation::Inner(theta) => {
                let l = ctx.right_mul(theta, x)?;
                let r = ctx.left_mul(x, theta)?;
                Ok(ctx.sub(&l, &r))
            }
            Derivation::Generators(_) => {
                let terms = ctx
                    .alg
                    .word_terms(x)
                    .expect("generator derivations need a presented algebra");
                let mut out = ModElem::zero();
                for (w, c) in terms {
                    let dw = self.d_word(ctx, &w)?;
                    out = ctx.add(&out, &ctx.scale(&c, &dw)?);
                }
                Ok(out)
            }
        }
    }

    fn d_word<A: StarAlgebra<Elem = E>>(&self, ctx: &Ctx<A>, w: &[u8]) -> R<ModElem<E>> {
        if w.is_empty() {
            return Ok(ModElem::zero());
        }
        if let Some(v) = self.cache.read().unwrap().get(w) {
            return Ok(v.clone());
        }
        let table = match &self.deriv {
            Derivation::Generators(t) => t,
            Derivation::Inner(_) => unreachable!(),
        };
        let n = w.len();
        let last = w[n - 1] as usize;
        let prefix = ctx.alg.word_elem(&w[..n - 1]).expect("presented algebra");
        let g = ctx.alg.word_elem(&w[n - 1..]).expect("presented algebra");
        let dp = self.d_word(ctx, &w[..n - 1])?;
        let v = ctx.add(&ctx.right_mul(&dp, &g)?, &ctx.left_mul(&prefix, &table[last])?);
        self.cache.write().unwrap().insert(w.to_vec(), v.clone());
        Ok(v)
    }

    /// The projection π onto the horizontal basis 1-forms.
    pub fn project(&self, ctx: &Ctx<impl StarAlgebra<Elem = E>>, m: &ModElem<E>) -> ModElem<E> {
        ctx.filter_keys(m, |k| k.first().is_none_or(|s| self.horizontal.contains(s)))
    }

    /// `π d x`, the derivative in the (horizontal) calculus used by connections.
    pub fn dh<A: StarAlgebra<Elem = E>>(&self, ctx: &Ctx<A>, x: &E) -> R<ModElem<E>> {
        Ok(self.project(ctx, &self.d(ctx, x)?))
    }

    /// Coefficient of a basis 1-form in `π d x` (e.g. ∂± on the sphere).
    pub fn component<A: StarAlgebra<Elem = E>>(&self, ctx: &Ctx<A>, x: &E, e: &Sym) -> R<E> {
        let d = self.d(ctx, x)?;
        Ok(d.coeff(std::slice::from_ref(e)).cloned().unwrap_or_else(|| ctx.alg.zero()))
    }

    /// Wedge of two forms of total degree ≤ 2.
    pub fn wedge<A: StarAlgebra<Elem = E>>(
        &self,
        ctx: &Ctx<A>,
        u: &ModElem<E>,
        v: &ModElem<E>,
    ) -> R<ModElem<E>> {
        let t = ctx.tensor(u, v)?;
        self.wedge_keys(ctx, &t)
    }

    /// Replace adjacent 1-form pairs at the front of each key by their wedge.
    pub fn wedge_keys<A: StarAlgebra<Elem = E>>(&self, ctx: &Ctx<A>, t: &ModElem<E>) -> R<ModElem<E>> {
        let mut out = ModElem::zero();
        for (k, c) in t.terms() {
            if k.len() < 2 || !self.one_forms.contains(&k[0]) || !self.one_forms.contains(&k[1]) {
                ctx.add_term(&mut out, k.clone(), c.clone());
                continue;
            }
            let entry = self
                .wedge_table
                .get(&(k[0].clone(), k[1].clone()))
                .ok_or_else(|| {
                    crate::bimod::ModError::MissingEntry(format!("wedge {}", ctx.syms.render_key(&k[..2])))
                })?;
            if let Some((f, w)) = entry {
                let mut nk = vec![w.clone()];
                nk.extend(k[2..].iter().cloned());
                ctx.add_term(&mut out, nk, ctx.alg.scale(f, c)?);
            }
        }
        Ok(out)
    }

    /// Exterior derivative of a horizontal 1-form: `d(cω) = dc∧ω + c dω`.
    pub fn d1<A: StarAlgebra<Elem = E>>(&self, ctx: &Ctx<A>, m: &ModElem<E>) -> R<ModElem<E>> {
        let mut out = ModElem::zero();
        for (k, c) in m.terms() {
            let e = &k[0];
            let dc = self.dh(ctx, c)?;
            out = ctx.add(&out, &self.wedge(ctx, &dc, &ctx.unit(k.clone()))?);
            if let Some(de) = self.d_basis.get(e) {
                out = ctx.add(&out, &ctx.left_mul(c, de)?);
            }
        }
        Ok(out)
    }

    /// Star on 1-forms: `(cω)* = ω*·c*`.
    pub fn star1<A: StarAlgebra<Elem = E>>(&self, ctx: &Ctx<A>, m: &ModElem<E>) -> R<ModElem<E>> {
        let mut out = ModElem::zero();
        for (k, c) in m.terms() {
            let e = ctx.table_sym(&self.star_table, &k[0])?;
            out = ctx.add(&out, &ctx.right_mul(e, &ctx.alg.star(c)?)?);
        }
        Ok(out)
    }

    /// Keep the terms whose leading form symbol has bidegree (p, q).
    pub fn pq_project(&self, ctx: &Ctx<impl StarAlgebra<Elem = E>>, m: &ModElem<E>, p: u8, q: u8) -> ModElem<E> {
        ctx.filter_keys(m, |k| k.first().is_some_and(|s| ctx.syms.bideg(s) == (p, q)))
    }

    /// `∂ = π^{1,0} d` on functions.
    pub fn del<A: StarAlgebra<Elem = E>>(&self, ctx: &Ctx<A>, x: &E) -> R<ModElem<E>> {
        Ok(self.pq_project(ctx, &self.dh(ctx, x)?, 1, 0))
    }

    /// `∂̄ = π^{0,1} d` on functions.
    pub fn delbar<A: StarAlgebra<Elem = E>>(&self, ctx: &Ctx<A>, x: &E) -> R<ModElem<E>> {
        Ok(self.pq_project(ctx, &self.dh(ctx, x)?, 0, 1))
    }

    /// Apply `∂` or `∂̄` to a 1-form by bidegree projection of `d1`.
    pub fn d1_pq<A: StarAlgebra<Elem = E>>(
        &self,
        ctx: &Ctx<A>,
        m: &ModElem<E>,
        p: u8,
        q: u8,
    ) -> R<ModElem<E>> {
        Ok(self.pq_project(ctx, &self.d1(ctx, m)?, p, q))
    }
}

impl<'a, A: StarAlgebra> Ctx<'a, A> {
    pub fn table_sym<'t>(&self, t: &'t HashMap<Sym, ModElem<A::Elem>>, s: &Sym) -> R<&'t ModElem<A::Elem>> {
        t.get(s)
            .ok_or_else(|| crate::bimod::ModError::MissingEntry(self.syms.render_sym(s)).into())
    }
}

/// Test inputs for the calculus consistency suite.
pub struct CalculusTests<E> {
    pub generators: Vec<E>,
    /// Elements for the d² = 0 check.
    pub closed: Vec<E>,
    /// Pairs for the Leibniz rule beyond generator pairs.
    pub pairs: Vec<(E, E)>,
    /// Raw relations `lhs - rhs` to which `d` must assign zero.
    pub relations: Vec<(String, ModElem<E>)>,
}

/// d² = 0, Leibniz, d of relations, and star compatibility.
pub fn check_d_consistency<A: StarAlgebra>(
    ctx: &Ctx<A>,
    cal: &Calculus<A::Elem>,
    tests: &CalculusTests<A::Elem>,
) -> Report {
    let mut rep = Report::new("calculus");
    rep.push(run_check("calculus-d-squared", "d² = 0", false, || {
        for x in &tests.closed {
            let dd = cal.d1(ctx, &cal.dh(ctx, x)?)?;
            if !dd.is_zero() {
                return Ok(Outcome::Violated(format!(
                    "d²({}) = {}",
                    ctx.alg.render(x),
                    ctx.render(&dd)
                )));
            }
        }
        Ok(Outcome::Holds(Some(format!("{} elements", tests.closed.len()))))
    }));
    rep.push(run_check("calculus-leibniz", "d(xy) = dx·y + x·dy", false, || {
        let mut pairs = Vec::new();
        for x in &tests.generators {
            for y in &tests.generators {
                pairs.push((x.clone(), y.clone()));
            }
        }
        pairs.extend(tests.pairs.iter().cloned());
        for (x, y) in &pairs {
            let lhs = cal.d(ctx, &ctx.alg.mul(x, y)?)?;
            let rhs = ctx.add(&ctx.right_mul(&cal.d(ctx, x)?, y)?, &ctx.left_mul(x, &cal.d(ctx, y)?)?);
            if lhs != rhs {
                return Ok(Outcome::Violated(format!(
                    "x = {}, y = {}: {} vs {}",
                    ctx.alg.render(x),
                    ctx.alg.render(y),
                    ctx.render(&lhs),
                    ctx.render(&rhs)
                )));
            }
        }
        Ok(Outcome::Holds(Some(format!("{} pairs", pairs.len()))))
    }));
    rep.push(run_check("calculus-relations", "d respects every relation and unit relation", false, || {
        let bad = tests
            .relations
            .iter()
            .find(|(_, v)| !v.is_zero())
            .map(|(name, v)| format!("d({}) = {}", name, ctx.render(v)));
        Ok(Outcome::from_first(bad))
    }));
    rep.push(run_check("calculus-star", "d(x*) = (dx)*", false, || {
        for x in tests.generators.iter().chain(tests.closed.iter()) {
            let lhs = cal.d(ctx, &ctx.alg.star(x)?)?;
            let full = Calculus::<A::Elem>::star_full(cal, ctx, &cal.d(ctx, x)?)?;
            if lhs != full {
                return Ok(Outcome::Violated(format!(
                    "x = {}: {} vs {}",
                    ctx.alg.render(x),
                    ctx.render(&lhs),
                    ctx.render(&full)
                )));
            }
        }
        Ok(Outcome::holds())
    }));
    rep
}

impl<E: Clone + PartialEq + std::fmt::Debug + Send + Sync> Calculus<E> {
    /// Star on 1-forms of the full calculus (same rule as [`Calculus::star1`]).
    pub fn star_full<A: StarAlgebra<Elem = E>>(&self, ctx: &Ctx<A>, m: &ModElem<E>) -> R<ModElem<E>> {
        self.star1(ctx, m)
    }

    /// `d` applied to a raw (unreduced) combination of words.
    pub fn d_raw<A: StarAlgebra<Elem = E>>(&self, ctx: &Ctx<A>, terms: &[(Word, Scalar)]) -> R<ModElem<E>> {
        let mut out = ModElem::zero();
        for (w, c) in terms {
            out = ctx.add(&out, &ctx.scale(c, &self.d_word(ctx, w)?)?);
        }
        Ok(out)
    }
}
