//! Left bimodule connections on twisted free bimodules, their conjugates and
//! tensor products, curvature, and the Chern construction for hermitian
//! holomorphic line bundles presented by a dual basis.

use crate::bimod::{BasisMap, Ctx, Key, ModElem, ModError, Sym};
use crate::calculus::Calculus;
use crate::ncalg::StarAlgebra;
use crate::report::{run_check, Outcome, Report};
use thiserror::Error;

type R<T> = crate::Result<T>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConnectError {
    #[error("metric is degenerate: {0}")]
    SingularMetric(String),
    #[error("braiding has no inverse table")]
    NotInvertible,
}

/// `∇`, `σ` and optionally `σ⁻¹` on basis keys of length `rank`.
#[derive(Clone, Debug)]
pub struct Connection<E> {
    pub rank: usize,
    /// `∇k` for each basis key `k`, with keys `[ω, k']`.
    pub nabla: BasisMap<E>,
    /// `σ(k⊗ω)` keyed by `[k, ω]`, with keys `[ω', k']`.
    pub sigma: BasisMap<E>,
    /// `σ⁻¹(ω⊗k)` keyed by `[ω, k]`.
    pub sigma_inv: Option<BasisMap<E>>,
}

impl<E: Clone + PartialEq + std::fmt::Debug + Send + Sync> Connection<E> {
    /// `∇(Σ x·k) = Σ dx⊗k + x·∇k`.
    pub fn apply<A: StarAlgebra<Elem = E>>(
        &self,
        ctx: &Ctx<A>,
        cal: &Calculus<E>,
        m: &ModElem<E>,
    ) -> R<ModElem<E>> {
        let mut out = ModElem::zero();
        for (k, c) in m.terms() {
            let dc = cal.dh(ctx, c)?;
            let t = ctx.tensor(&dc, &ctx.unit(k.clone()))?;
            let n = ctx.left_mul(c, ctx.table(&self.nabla, k)?)?;
            out = ctx.add(&out, &ctx.add(&t, &n));
        }
        Ok(out)
    }

    /// `σ` on elements with keys `[k, ω, rest…]`.
    pub fn sigma_apply<A: StarAlgebra<Elem = E>>(&self, ctx: &Ctx<A>, t: &ModElem<E>) -> R<ModElem<E>> {
        ctx.map_span(t, 0, self.rank + 1, |k| Ok(ctx.table(&self.sigma, k)?.clone()))
    }

    /// `σ⁻¹` on elements with keys `[ω, k, rest…]`.
    pub fn sigma_inv_apply<A: StarAlgebra<Elem = E>>(&self, ctx: &Ctx<A>, t: &ModElem<E>) -> R<ModElem<E>> {
        let inv = self.sigma_inv.as_ref().ok_or(ConnectError::NotInvertible)?;
        ctx.map_span(t, 0, self.rank + 1, |k| Ok(ctx.table(inv, k)?.clone()))
    }

    /// The canonical connection on the conjugate module,
    /// `∇(ē) = (⋆⁻¹⊗id)Υ bar(σ⁻¹∇e)`, tabulated on `bar(k)`.
    pub fn conjugate<A: StarAlgebra<Elem = E>>(
        &self,
        ctx: &Ctx<A>,
        cal: &Calculus<E>,
        keys: &[Key],
    ) -> R<Connection<E>> {
        let mut nabla = BasisMap::new();
        for k in keys {
            let inner = self.sigma_inv_apply(ctx, ctx.table(&self.nabla, k)?)?;
            let flipped = ctx.upsilon(&ctx.conj(&inner)?)?;
            let img = ctx.map_span(&flipped, 0, 1, |s| match s {
                [Sym::Bar(w)] if w.len() == 1 => Ok(ctx.table_sym(&cal.star_table, &w[0])?.clone()),
                _ => Err(ModError::OutsideModule(ctx.syms.render_key(s)).into()),
            })?;
            // Υ yields one conjugated factor per symbol; fold them back into bar(k).
            let folded = ctx.upsilon_inv_tail(&img, 1)?;
            nabla.insert(vec![Sym::bar_of(k)], folded);
        }
        Ok(Connection {
            rank: 1,
            nabla,
            sigma: BasisMap::new(),
            sigma_inv: None,
        })
    }

    /// Verify `σ(k⊗da) = ∇(k·a) − ∇(k)·a`.
    pub fn check_braiding<A: StarAlgebra<Elem = E>>(
        &self,
        ctx: &Ctx<A>,
        cal: &Calculus<E>,
        keys: &[Key],
        elems: &[E],
    ) -> R<Outcome> {
        for k in keys {
            for a in elems {
                let ka = ctx.right_mul(&ctx.unit(k.clone()), a)?;
                let rhs = ctx.sub(
                    &self.apply(ctx, cal, &ka)?,
                    &ctx.right_mul(ctx.table(&self.nabla, k)?, a)?,
                );
                let lhs = self.sigma_apply(ctx, &ctx.tensor(&ctx.unit(k.clone()), &cal.dh(ctx, a)?)?)?;
                if lhs != rhs {
                    return Ok(Outcome::Violated(format!(
                        "k = {}, a = {}: {} vs {}",
                        ctx.syms.render_key(k),
                        ctx.alg.render(a),
                        ctx.render(&lhs),
                        ctx.render(&rhs)
                    )));
                }
            }
        }
        Ok(Outcome::holds())
    }

    /// Verify `σσ⁻¹ = id` and `σ⁻¹σ = id` on basis keys.
    pub fn check_inverse<A: StarAlgebra<Elem = E>>(&self, ctx: &Ctx<A>, keys: &[Key], forms: &[Sym]) -> R<Outcome> {
        for k in keys {
            for w in forms {
                let mut kw = k.clone();
                kw.push(w.clone());
                let x = ctx.unit(kw.clone());
                let back = self.sigma_inv_apply(ctx, &self.sigma_apply(ctx, &x)?)?;
                if back != x {
                    return Ok(Outcome::Violated(format!(
                        "σ⁻¹σ({}) = {}",
                        ctx.syms.render_key(&kw),
                        ctx.render(&back)
                    )));
                }
                let mut wk = vec![w.clone()];
                wk.extend(k.iter().cloned());
                let y = ctx.unit(wk.clone());
                let fwd = self.sigma_apply(ctx, &self.sigma_inv_apply(ctx, &y)?)?;
                if fwd != y {
                    return Ok(Outcome::Violated(format!(
                        "σσ⁻¹({}) = {}",
                        ctx.syms.render_key(&wk),
                        ctx.render(&fwd)
                    )));
                }
            }
        }
        Ok(Outcome::holds())
    }

    /// Curvature `R(k) = (d⊗id − id∧∇)∇k` on a basis key.
    pub fn curvature<A: StarAlgebra<Elem = E>>(
        &self,
        ctx: &Ctx<A>,
        cal: &Calculus<E>,
        k: &[Sym],
    ) -> R<ModElem<E>> {
        let nk = ctx.table(&self.nabla, k)?;
        let mut out = ModElem::zero();
        for (key, c) in nk.terms() {
            let kappa = ctx.term(c.clone(), vec![key[0].clone()]);
            let rest = key[1..].to_vec();
            let dk = cal.d1(ctx, &kappa)?;
            out = ctx.add(&out, &ctx.tensor(&dk, &ctx.unit(rest.clone()))?);
            let nabla_rest = self.apply(ctx, cal, &ctx.unit(rest))?;
            let w = cal.wedge(ctx, &kappa, &nabla_rest)?;
            out = ctx.sub(&out, &w);
        }
        Ok(out)
    }
}

/// `∇_{E⊗F} = ∇_E⊗id + (σ_E⊗id)(id⊗∇_F)` with `σ_{E⊗F} = (σ_E⊗id)(id⊗σ_F)`.
pub fn tensor_connection<A: StarAlgebra>(
    ctx: &Ctx<A>,
    e: &Connection<A::Elem>,
    f: &Connection<A::Elem>,
    keys_e: &[Key],
    keys_f: &[Key],
    forms: &[Sym],
) -> R<Connection<A::Elem>> {
    let mut nabla = BasisMap::new();
    let mut sigma = BasisMap::new();
    for ke in keys_e {
        for kf in keys_f {
            let mut k = ke.clone();
            k.extend(kf.iter().cloned());
            let first = ctx.tensor(ctx.table(&e.nabla, ke)?, &ctx.unit(kf.clone()))?;
            let second = e.sigma_apply(ctx, &ctx.tensor(&ctx.unit(ke.clone()), ctx.table(&f.nabla, kf)?)?)?;
            nabla.insert(k.clone(), ctx.add(&first, &second));
            for w in forms {
                let mut kfw = kf.clone();
                kfw.push(w.clone());
                let inner = ctx.tensor(&ctx.unit(ke.clone()), ctx.table(&f.sigma, &kfw)?)?;
                let mut kw = k.clone();
                kw.push(w.clone());
                sigma.insert(kw, e.sigma_apply(ctx, &inner)?);
            }
        }
    }
    Ok(Connection {
        rank: e.rank + f.rank,
        nabla,
        sigma,
        sigma_inv: None,
    })
}

impl<'a, A: StarAlgebra> Ctx<'a, A> {
    /// Fold the conjugated single symbols after position `start` back into
    /// one conjugated key: `… ⊗ bar(eₙ)⊗…⊗bar(e₁) ↦ … ⊗ bar(e₁⊗…⊗eₙ)`.
    pub fn upsilon_inv_tail(&self, m: &ModElem<A::Elem>, start: usize) -> R<ModElem<A::Elem>> {
        let mut out = ModElem::zero();
        for (k, c) in m.terms() {
            let head = self.term(c.clone(), k[..start].to_vec());
            let tail = self.upsilon_inv(&self.unit(k[start..].to_vec()))?;
            out = self.add(&out, &self.tensor(&head, &tail)?);
        }
        Ok(out)
    }
}

/// Square matrices over the algebra.
pub type Mat<E> = Vec<Vec<E>>;
/// Square matrices of 1-forms.
pub type FormMat<E> = Vec<Vec<ModElem<E>>>;

/// Holomorphic hermitian line bundle `E ⊂ A·ε` with dual basis `e^α = u_α ε`,
/// coordinates `x ε = Σ (x v_α) e^α`, and `⟨ε, bar ε⟩ = g`.
pub struct ChernInput<E> {
    pub name: String,
    pub eps: Sym,
    pub u: Vec<E>,
    pub v: Vec<E>,
    pub g: E,
    /// The matrix `g_•` with `g^• g_• = P`.
    pub g_lower: Mat<E>,
    /// `∂̄_E(ε)` with keys `[ω, ε]`.
    pub dbar_eps: ModElem<E>,
    /// `σ^{0,1}(ε⊗ω)` keyed by `[ε, ω]`.
    pub sigma01: BasisMap<E>,
}

pub struct ChernOutput<E> {
    pub g_upper: Mat<E>,
    pub p: Mat<E>,
    pub gamma_minus: FormMat<E>,
    pub gamma_plus: FormMat<E>,
    /// `∇e^α = −Σ Γ^α_β ⊗ e^β`.
    pub nabla_dual: Vec<ModElem<E>>,
    /// `∇ε = Σ dv_α⊗e^α + v_α∇e^α`.
    pub nabla_eps: ModElem<E>,
    pub connection: Connection<E>,
}

impl<E: Clone + PartialEq + std::fmt::Debug + Send + Sync> ChernInput<E> {
    pub fn n(&self) -> usize {
        self.u.len()
    }

    pub fn dual<A: StarAlgebra<Elem = E>>(&self, ctx: &Ctx<A>, a: usize) -> ModElem<E> {
        ctx.term(self.u[a].clone(), vec![self.eps.clone()])
    }

    /// `⟨m, bar n⟩ ∈ A`, linear in `m` and antilinear in `n`.
    pub fn pair<A: StarAlgebra<Elem = E>>(&self, ctx: &Ctx<A>, m: &ModElem<E>, n: &ModElem<E>) -> R<E> {
        let t = ctx.tensor(m, &ctx.conj(n)?)?;
        contract(ctx, &t, |k| match k {
            [a, Sym::Bar(b)] if *a == self.eps && b.as_slice() == [self.eps.clone()] => Some(self.g.clone()),
            _ => None,
        })
    }

    /// Coordinates of an element of `A·ε` in the dual basis.
    pub fn coords<A: StarAlgebra<Elem = E>>(&self, ctx: &Ctx<A>, m: &ModElem<E>) -> R<Vec<E>> {
        let x = m.coeff(std::slice::from_ref(&self.eps)).cloned().unwrap_or_else(|| ctx.alg.zero());
        if m.len() > usize::from(!ctx.alg.is_zero(&x)) {
            return Err(ModError::OutsideModule(ctx.render(m)).into());
        }
        self.v.iter().map(|v| ctx.alg.mul(&x, v)).collect()
    }

    /// Rewrite `Σ c·[ω, ε]` as a row of 1-forms against the dual basis.
    fn to_dual_row<A: StarAlgebra<Elem = E>>(&self, ctx: &Ctx<A>, t: &ModElem<E>) -> R<Vec<ModElem<E>>> {
        let mut row = vec![ModElem::zero(); self.n()];
        for (k, c) in t.terms() {
            if k.len() != 2 || k[1] != self.eps {
                return Err(ModError::OutsideModule(ctx.syms.render_key(k)).into());
            }
            let w = ctx.term(c.clone(), vec![k[0].clone()]);
            for (b, v) in self.v.iter().enumerate() {
                row[b] = ctx.add(&row[b], &ctx.right_mul(&w, v)?);
            }
        }
        Ok(row)
    }

    /// `Σ_β Γ_β ⊗ e^β`.
    fn dual_row_sum<A: StarAlgebra<Elem = E>>(&self, ctx: &Ctx<A>, row: &[ModElem<E>]) -> R<ModElem<E>> {
        let mut out = ModElem::zero();
        for (b, w) in row.iter().enumerate() {
            out = ctx.add(&out, &ctx.tensor(w, &self.dual(ctx, b))?);
        }
        Ok(out)
    }

    /// `∂̄_E` on an element of `A·ε`.
    pub fn dbar<A: StarAlgebra<Elem = E>>(&self, ctx: &Ctx<A>, cal: &Calculus<E>, m: &ModElem<E>) -> R<ModElem<E>> {
        let conn = Connection {
            rank: 1,
            nabla: [(vec![self.eps.clone()], self.dbar_eps.clone())].into_iter().collect(),
            sigma: BasisMap::new(),
            sigma_inv: None,
        };
        let full = conn.apply(ctx, cal, m)?;
        Ok(cal.pq_project(ctx, &full, 0, 1))
    }

    /// The matrix (Christoffel) construction `−Γ₊ = ∂g^•·g_• + g^•(Γ₋)*g_•`.
    pub fn chern_matrix<A: StarAlgebra<Elem = E>>(&self, ctx: &Ctx<A>, cal: &Calculus<E>) -> R<ChernOutput<E>> {
        let n = self.n();
        let alg = ctx.alg;
        let mut g_upper = vec![vec![alg.zero(); n]; n];
        let mut p = vec![vec![alg.zero(); n]; n];
        for a in 0..n {
            for b in 0..n {
                g_upper[a][b] = self.pair(ctx, &self.dual(ctx, a), &self.dual(ctx, b))?;
                p[a][b] = alg.mul(&self.u[a], &self.v[b])?;
            }
        }
        if mat_mul(alg, &g_upper, &self.g_lower)? != p {
            return Err(ConnectError::SingularMetric(format!("g^• g_• ≠ P for {}", self.name)).into());
        }
        let mut gamma_minus = Vec::with_capacity(n);
        for a in 0..n {
            let db = self.dbar(ctx, cal, &self.dual(ctx, a))?;
            gamma_minus.push(self.to_dual_row(ctx, &db)?.into_iter().map(|w| ctx.neg(&w)).collect());
        }
        // (Γ₋*)_{ij} = (Γ₋_{ji})*
        let gm_star = form_mat_star(ctx, cal, &gamma_minus)?;
        let mut gamma_plus = vec![vec![ModElem::zero(); n]; n];
        for i in 0..n {
            for l in 0..n {
                let mut acc = ModElem::zero();
                for j in 0..n {
                    let dg = cal.del(ctx, &g_upper[i][j])?;
                    acc = ctx.add(&acc, &ctx.right_mul(&dg, &self.g_lower[j][l])?);
                    for k in 0..n {
                        let t = ctx.left_mul(&g_upper[i][j], &gm_star[j][k])?;
                        acc = ctx.add(&acc, &ctx.right_mul(&t, &self.g_lower[k][l])?);
                    }
                }
                gamma_plus[i][l] = ctx.neg(&acc);
            }
        }
        let mut nabla_dual = Vec::with_capacity(n);
        for a in 0..n {
            let row: Vec<ModElem<E>> = (0..n)
                .map(|b| ctx.neg(&ctx.add(&gamma_plus[a][b], &gamma_minus[a][b])))
                .collect();
            nabla_dual.push(self.dual_row_sum(ctx, &row)?);
        }
        let nabla_eps = self.assemble_eps(ctx, cal, &nabla_dual)?;
        let connection = Connection {
            rank: 1,
            nabla: [(vec![self.eps.clone()], nabla_eps.clone())].into_iter().collect(),
            sigma: BasisMap::new(),
            sigma_inv: None,
        };
        Ok(ChernOutput {
            g_upper,
            p,
            gamma_minus,
            gamma_plus,
            nabla_dual,
            nabla_eps,
            connection,
        })
    }

    fn assemble_eps<A: StarAlgebra<Elem = E>>(
        &self,
        ctx: &Ctx<A>,
        cal: &Calculus<E>,
        nabla_dual: &[ModElem<E>],
    ) -> R<ModElem<E>> {
        let mut out = ModElem::zero();
        for (a, v) in self.v.iter().enumerate() {
            out = ctx.add(&out, &ctx.tensor(&cal.dh(ctx, v)?, &self.dual(ctx, a))?);
            out = ctx.add(&out, &ctx.left_mul(v, &nabla_dual[a])?);
        }
        Ok(out)
    }

    /// `c_β = Σ_α g_{αβ}* e^α`, so that `⟨,⟩⁻¹ = Σ_β bar(c_β)⊗e^β`.
    pub fn coev_left<A: StarAlgebra<Elem = E>>(&self, ctx: &Ctx<A>) -> R<Vec<ModElem<E>>> {
        let n = self.n();
        let mut out = Vec::with_capacity(n);
        for b in 0..n {
            let mut c = ModElem::zero();
            for a in 0..n {
                let coef = ctx.alg.star(&self.g_lower[a][b])?;
                c = ctx.add(&c, &ctx.left_mul(&coef, &self.dual(ctx, a))?);
            }
            out.push(c);
        }
        Ok(out)
    }

    /// The coordinate-free construction:
    /// `∂_E(e) = Σ_β (∂⟨e, bar c_β⟩ − Σ_γ ⟨e, bar e^γ⟩κ_γ*) ⊗ e^β` where `∂̄_E(c_β) = Σ_γ κ_γ⊗e^γ`.
    pub fn chern_coordinate_free<A: StarAlgebra<Elem = E>>(
        &self,
        ctx: &Ctx<A>,
        cal: &Calculus<E>,
        e: &ModElem<E>,
    ) -> R<ModElem<E>> {
        let cs = self.coev_left(ctx)?;
        let mut out = ModElem::zero();
        for (b, c) in cs.iter().enumerate() {
            let mut form = cal.del(ctx, &self.pair(ctx, e, c)?)?;
            let db = self.dbar(ctx, cal, c)?;
            for (g, kappa) in self.to_dual_row(ctx, &db)?.iter().enumerate() {
                let pe = self.pair(ctx, e, &self.dual(ctx, g))?;
                form = ctx.sub(&form, &ctx.left_mul(&pe, &cal.star1(ctx, kappa)?)?);
            }
            out = ctx.add(&out, &ctx.tensor(&form, &self.dual(ctx, b))?);
        }
        Ok(ctx.add(&out, &self.dbar(ctx, cal, e)?))
    }

    /// `σ_E(e⊗η) = Σ_{β,γ} ⟨e, bar e^γ⟩ ξ_γ*⊗e^β` with `σ^{0,1}(c_β⊗η*) = Σ_γ ξ_γ⊗e^γ`, for η of type (1,0).
    pub fn chern_sigma<A: StarAlgebra<Elem = E>>(
        &self,
        ctx: &Ctx<A>,
        cal: &Calculus<E>,
        e: &ModElem<E>,
        eta: &ModElem<E>,
    ) -> R<ModElem<E>> {
        let cs = self.coev_left(ctx)?;
        let eta_star = cal.star1(ctx, eta)?;
        let mut out = ModElem::zero();
        for (b, c) in cs.iter().enumerate() {
            let t = ctx.tensor(c, &eta_star)?;
            let s = ctx.map_span(&t, 0, 2, |k| Ok(ctx.table(&self.sigma01, k)?.clone()))?;
            let mut form = ModElem::zero();
            for (g, xi) in self.to_dual_row(ctx, &s)?.iter().enumerate() {
                let pe = self.pair(ctx, e, &self.dual(ctx, g))?;
                form = ctx.add(&form, &ctx.left_mul(&pe, &cal.star1(ctx, xi)?)?);
            }
            out = ctx.add(&out, &ctx.tensor(&form, &self.dual(ctx, b))?);
        }
        Ok(out)
    }

    /// Full braiding: the (1,0) part from [`Self::chern_sigma`], the (0,1)
    /// part from the holomorphic table.
    pub fn sigma_full<A: StarAlgebra<Elem = E>>(
        &self,
        ctx: &Ctx<A>,
        cal: &Calculus<E>,
        e: &ModElem<E>,
        xi: &ModElem<E>,
    ) -> R<ModElem<E>> {
        let p10 = cal.pq_project(ctx, xi, 1, 0);
        let p01 = cal.pq_project(ctx, xi, 0, 1);
        let a = self.chern_sigma(ctx, cal, e, &p10)?;
        let t = ctx.tensor(e, &p01)?;
        let b = ctx.map_span(&t, 0, 2, |k| Ok(ctx.table(&self.sigma01, k)?.clone()))?;
        Ok(ctx.add(&a, &b))
    }

    /// Metric preservation, with both connections expanded in the dual basis
/// so that the pairing only meets sections of `E`:
    /// `d⟨e, bar f⟩ = (id⊗⟨,⟩)(∇e⊗bar f) + (⟨,⟩⊗id)(e⊗∇̃ bar f)`.
    pub fn metric_defect<A: StarAlgebra<Elem = E>>(
        &self,
        ctx: &Ctx<A>,
        cal: &Calculus<E>,
        conn: &Connection<E>,
        e: &ModElem<E>,
        f: &ModElem<E>,
    ) -> R<ModElem<E>> {
        let lhs = cal.dh(ctx, &self.pair(ctx, e, f)?)?;
        let mut rhs = ModElem::zero();
        let ne = self.to_dual_row(ctx, &conn.apply(ctx, cal, e)?)?;
        for (b, w) in ne.iter().enumerate() {
            let p = self.pair(ctx, &self.dual(ctx, b), f)?;
            rhs = ctx.add(&rhs, &ctx.right_mul(w, &p)?);
        }
        let nf = self.to_dual_row(ctx, &conn.apply(ctx, cal, f)?)?;
        for (b, kappa) in nf.iter().enumerate() {
            let p = self.pair(ctx, e, &self.dual(ctx, b))?;
            rhs = ctx.add(&rhs, &ctx.left_mul(&p, &cal.star1(ctx, kappa)?)?);
        }
        Ok(ctx.sub(&lhs, &rhs))
    }
}

/// Contract keys to algebra elements: `Σ c·k ↦ Σ c·f(k)`.
pub fn contract<A: StarAlgebra, F>(ctx: &Ctx<A>, t: &ModElem<A::Elem>, f: F) -> R<A::Elem>
where
    F: Fn(&[Sym]) -> Option<A::Elem>,
{
    let mut acc = ctx.alg.zero();
    for (k, c) in t.terms() {
        if let Some(g) = f(k) {
            acc = ctx.alg.add(&acc, &ctx.alg.mul(c, &g)?);
        }
    }
    Ok(acc)
}

pub fn mat_mul<A: StarAlgebra>(alg: &A, x: &Mat<A::Elem>, y: &Mat<A::Elem>) -> R<Mat<A::Elem>> {
    let n = x.len();
    let mut out = vec![vec![alg.zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = alg.zero();
            for k in 0..n {
                acc = alg.add(&acc, &alg.mul(&x[i][k], &y[k][j])?);
            }
            out[i][j] = acc;
        }
    }
    Ok(out)
}

/// `(X*)_{ij} = (X_{ji})*`.
pub fn mat_star<A: StarAlgebra>(alg: &A, x: &Mat<A::Elem>) -> R<Mat<A::Elem>> {
    let n = x.len();
    let mut out = vec![vec![alg.zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = alg.star(&x[j][i])?;
        }
    }
    Ok(out)
}

pub fn form_mat_star<A: StarAlgebra>(
    ctx: &Ctx<A>,
    cal: &Calculus<A::Elem>,
    x: &FormMat<A::Elem>,
) -> R<FormMat<A::Elem>> {
    let n = x.len();
    let mut out = vec![vec![ModElem::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = cal.star1(ctx, &x[j][i])?;
        }
    }
    Ok(out)
}

/// Expected results for the Chern suite.
pub struct ChernExpect<E> {
    pub gamma_plus: Option<FormMat<E>>,
    pub nabla_eps: Option<ModElem<E>>,
    /// Test coefficients `x` with `x ε ∈ E`.
    pub coeffs: Vec<E>,
    /// Algebra elements for the braiding law.
    pub elems: Vec<E>,
    /// Check `Q² = Q` and `∂Q·Q = (1−Q)·∂Q` for `Q = g_• g^•`.
    pub check_q: bool,
    /// Extra `(id, anchor, expected, actual)` comparisons.
    pub extra: Vec<(String, String, ModElem<E>, ModElem<E>)>,
}

/// Run the Chern suite for one bundle.
pub fn chern_report<A: StarAlgebra>(
    ctx: &Ctx<A>,
    cal: &Calculus<A::Elem>,
    inp: &ChernInput<A::Elem>,
    expect: &ChernExpect<A::Elem>,
) -> (Report, Option<ChernOutput<A::Elem>>) {
    let mut rep = Report::new(&inp.name);
    let out = match inp.chern_matrix(ctx, cal) {
        Ok(o) => o,
        Err(e) => {
            rep.push(run_check("chern-construct", "Chern connection exists", false, || Err(e)));
            return (rep, None);
        }
    };
    let alg = ctx.alg;
    let n = inp.n();
    rep.push(run_check("chern-matrix-identities", "g^•* = g^•, g_•* = g_•, g^•g_• = P, g_•P = g_•, Pg^• = g^•", false, || {
        let gs = mat_star(alg, &out.g_upper)?;
        let ls = mat_star(alg, &inp.g_lower)?;
        let checks = [
            ("g^•* = g^•", gs == out.g_upper),
            ("g_•* = g_•", ls == inp.g_lower),
            ("g^•g_• = P", mat_mul(alg, &out.g_upper, &inp.g_lower)? == out.p),
            ("g_•P = g_•", mat_mul(alg, &inp.g_lower, &out.p)? == inp.g_lower),
            ("Pg^• = g^•", mat_mul(alg, &out.p, &out.g_upper)? == out.g_upper),
            ("P² = P", mat_mul(alg, &out.p, &out.p)? == out.p),
        ];
        Ok(Outcome::from_first(checks.iter().find(|c| !c.1).map(|c| c.0.to_string())))
    }));
    if let Some(exp) = &expect.gamma_plus {
        rep.push(run_check("chern-gamma-plus", "Γ₊ matches the expected Christoffel symbols", false, || {
            for i in 0..n {
                for j in 0..n {
                    if out.gamma_plus[i][j] != exp[i][j] {
                        return Ok(Outcome::Violated(format!(
                            "Γ₊[{}][{}] = {}, expected {}",
                            i,
                            j,
                            ctx.render(&out.gamma_plus[i][j]),
                            ctx.render(&exp[i][j])
                        )));
                    }
                }
            }
            Ok(Outcome::holds())
        }));
    }
    if let Some(exp) = &expect.nabla_eps {
        rep.push(run_check("chern-nabla", "∇ matches the expected connection", false, || {
            Ok(if out.nabla_eps == *exp {
                Outcome::Holds(Some(format!("∇{} = {}", ctx.syms.render_sym(&inp.eps), ctx.render(exp))))
            } else {
                Outcome::Violated(format!("{} vs {}", ctx.render(&out.nabla_eps), ctx.render(exp)))
            })
        }));
    }
    for (id, anchor, exp, got) in &expect.extra {
        let (id, anchor) = (id.clone(), anchor.clone());
        rep.push(run_check(&id, &anchor, false, || {
            Ok(if got == exp {
                Outcome::holds()
            } else {
                Outcome::Violated(format!("{} vs {}", ctx.render(got), ctx.render(exp)))
            })
        }));
    }
    let mut elems: Vec<ModElem<A::Elem>> = (0..n).map(|a| inp.dual(ctx, a)).collect();
    elems.extend(expect.coeffs.iter().map(|x| ctx.term(x.clone(), vec![inp.eps.clone()])));
    rep.push(run_check("chern-dbar-part", "(π^{0,1}⊗id)∇ = ∂̄_E", false, || {
        for e in &elems {
            let full = out.connection.apply(ctx, cal, e)?;
            let lhs = cal.pq_project(ctx, &full, 0, 1);
            let rhs = inp.dbar(ctx, cal, e)?;
            if lhs != rhs {
                return Ok(Outcome::Violated(format!("{}: {} vs {}", ctx.render(e), ctx.render(&lhs), ctx.render(&rhs))));
            }
        }
        Ok(Outcome::holds())
    }));
    rep.push(run_check("chern-metric", "∇ preserves the hermitian metric", false, || {
        metric_outcome(ctx, cal, inp, &out.connection, &elems)
    }));
    rep.push(run_check("chern-metric-control", "adding ∂a⊗ε to ∇ε breaks metric preservation", true, || {
        let a = expect.elems.first().cloned().unwrap_or_else(|| ctx.alg.one());
        let bad = ctx.add(&out.nabla_eps, &ctx.tensor(&cal.del(ctx, &a)?, &ctx.basis(&inp.eps))?);
        let conn = Connection {
            rank: 1,
            nabla: [(vec![inp.eps.clone()], bad)].into_iter().collect(),
            sigma: BasisMap::new(),
            sigma_inv: None,
        };
        metric_outcome(ctx, cal, inp, &conn, &elems)
    }));
    rep.push(run_check("chern-curvature", "(2,0) and (0,2) curvature vanish", false, || {
        let r = out.connection.curvature(ctx, cal, std::slice::from_ref(&inp.eps))?;
        let bad = ctx.filter_keys(&r, |k| {
            let b = ctx.syms.bideg(&k[0]);
            b == (2, 0) || b == (0, 2)
        });
        Ok(if bad.is_zero() {
            Outcome::Holds(Some(format!("R({}) = {}", ctx.syms.render_sym(&inp.eps), ctx.render(&r))))
        } else {
            Outcome::Violated(ctx.render(&bad))
        })
    }));
    rep.push(run_check("chern-coordinate-free", "coordinate-free and matrix constructions agree", false, || {
        for (a, e) in elems.iter().enumerate().take(n) {
            let cf = inp.chern_coordinate_free(ctx, cal, e)?;
            if cf != out.nabla_dual[a] {
                return Ok(Outcome::Violated(format!(
                    "e^{}: {} vs {}",
                    a,
                    ctx.render(&cf),
                    ctx.render(&out.nabla_dual[a])
                )));
            }
        }
        Ok(Outcome::holds())
    }));
    rep.push(run_check("chern-braiding", "∇(e·a) − ∇(e)·a = σ_E(e⊗da)", false, || {
        for e in elems.iter().take(n) {
            for a in &expect.elems {
                let ea = ctx.right_mul(e, a)?;
                let rhs = ctx.sub(
                    &out.connection.apply(ctx, cal, &ea)?,
                    &ctx.right_mul(&out.connection.apply(ctx, cal, e)?, a)?,
                );
                let lhs = inp.sigma_full(ctx, cal, e, &cal.dh(ctx, a)?)?;
                if lhs != rhs {
                    return Ok(Outcome::Violated(format!(
                        "e = {}, a = {}: {} vs {}",
                        ctx.render(e),
                        alg.render(a),
                        ctx.render(&lhs),
                        ctx.render(&rhs)
                    )));
                }
            }
        }
        Ok(Outcome::holds())
    }));
    if expect.check_q {
        rep.push(run_check("chern-q-idempotent", "Q = g_•g^• obeys Q² = Q and ∂Q·Q = (1−Q)·∂Q", false, || {
            let q = mat_mul(alg, &inp.g_lower, &out.g_upper)?;
            if mat_mul(alg, &q, &q)? != q {
                return Ok(Outcome::Violated("Q² ≠ Q".into()));
            }
            for i in 0..n {
                for j in 0..n {
                    let mut lhs = ModElem::zero();
                    let mut rhs = ModElem::zero();
                    for k in 0..n {
                        lhs = ctx.add(&lhs, &ctx.right_mul(&cal.del(ctx, &q[i][k])?, &q[k][j])?);
                        let one_minus = if i == k {
                            alg.sub(&alg.one(), &q[i][k])
                        } else {
                            alg.neg(&q[i][k])
                        };
                        rhs = ctx.add(&rhs, &ctx.left_mul(&one_minus, &cal.del(ctx, &q[k][j])?)?);
                    }
                    if lhs != rhs {
                        return Ok(Outcome::Violated(format!("entry ({}, {})", i, j)));
                    }
                }
            }
            Ok(Outcome::holds())
        }));
    }
    (rep, Some(out))
}

fn metric_outcome<A: StarAlgebra>(
    ctx: &Ctx<A>,
    cal: &Calculus<A::Elem>,
    inp: &ChernInput<A::Elem>,
    conn: &Connection<A::Elem>,
    elems: &[ModElem<A::Elem>],
) -> R<Outcome> {
    for e in elems {
        for f in elems {
            let defect = inp.metric_defect(ctx, cal, conn, e, f)?;
            if !defect.is_zero() {
                return Ok(Outcome::Violated(format!(
                    "e = {}, f = {}: defect {}",
                    ctx.render(e),
                    ctx.render(f),
                    ctx.render(&defect)
                )));
            }
        }
    }
    Ok(Outcome::holds())
}
