use ncg::bimod::{Ctx, ModElem};
use ncg::models::{disk, sphere, Model};
use ncg::ncalg::{AlgElem, Word};
use ncg::{Presentation, StarAlgebra};
use proptest::prelude::*;
use std::sync::OnceLock;

fn qsphere() -> &'static Model<Presentation> {
    static M: OnceLock<Model<Presentation>> = OnceLock::new();
    M.get_or_init(|| sphere::build(None, &[]).unwrap())
}

fn qdisk() -> &'static Model<Presentation> {
    static M: OnceLock<Model<Presentation>> = OnceLock::new();
    M.get_or_init(|| disk::build(None, &[]).unwrap())
}

fn word(max_gen: u8, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..max_gen, 0..=max_len)
}

fn nf(m: &Model<Presentation>, w: &Word) -> AlgElem {
    m.alg.normal_form_word(w).unwrap()
}

fn leibniz(m: &Model<Presentation>, x: &AlgElem, y: &AlgElem) -> bool {
    let ctx = m.ctx();
    let lhs = m.cal.d(&ctx, &m.alg.multiply(x, y).unwrap()).unwrap();
    let rhs = ctx.add(
        &ctx.right_mul(&m.cal.d(&ctx, x).unwrap(), y).unwrap(),
        &ctx.left_mul(x, &m.cal.d(&ctx, y).unwrap()).unwrap(),
    );
    lhs == rhs
}

/// `ω·x = q^{t|x|} x·ω` for each basis symbol of twist `t`.
fn twist_law(m: &Model<Presentation>, names: &[&str], x: &AlgElem) -> bool {
    let ctx = m.ctx();
    names.iter().all(|n| {
        let s = ctx.syms.get(n);
        let t = ctx.syms.twist(&s) as i64;
        let right = ctx.right_mul(&ctx.basis(&s), x).unwrap();
        let left = m.alg.components(x).into_iter().fold(ModElem::zero(), |acc, (g, part)| {
            let moved = ctx.left_mul(&part, &ctx.basis(&s)).unwrap();
            ctx.add(&acc, &ctx.scale(&m.alg.q_pow(t * g as i64), &moved).unwrap())
        });
        right == left
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn sphere_leibniz(x in word(4, 3), y in word(4, 3)) {
        let m = qsphere();
        prop_assert!(leibniz(m, &nf(m, &x), &nf(m, &y)));
    }

    #[test]
    fn disk_leibniz(x in word(3, 3), y in word(3, 3)) {
        let m = qdisk();
        prop_assert!(leibniz(m, &nf(m, &x), &nf(m, &y)));
    }

    #[test]
    fn disk_d_squared_vanishes(x in word(3, 4)) {
        let m = qdisk();
        let ctx = m.ctx();
        let dx = m.cal.d(&ctx, &nf(m, &x)).unwrap();
        prop_assert!(m.cal.d1(&ctx, &dx).unwrap().is_zero());
    }

    #[test]
    fn disk_d_commutes_with_star(x in word(3, 4)) {
        let m = qdisk();
        let ctx = m.ctx();
        let x = nf(m, &x);
        let lhs = m.cal.d(&ctx, &m.alg.star_elem(&x).unwrap()).unwrap();
        let rhs = m.cal.star1(&ctx, &m.cal.d(&ctx, &x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn sphere_d_commutes_with_star(x in word(4, 4)) {
        let m = qsphere();
        let ctx = m.ctx();
        let x = nf(m, &x);
        let lhs = m.cal.d(&ctx, &m.alg.star_elem(&x).unwrap()).unwrap();
        let rhs = m.cal.star1(&ctx, &m.cal.d(&ctx, &x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn twisted_symbols_commute_up_to_q(x in word(4, 4)) {
        let m = qsphere();
        prop_assert!(twist_law(m, &["e0", "e+", "e-", "f+", "f-"], &nf(m, &x)));
        let d = qdisk();
        let y: Word = x.iter().map(|g| g % 3).collect();
        prop_assert!(twist_law(d, &["dz", "dzb", "s", "sbar"], &nf(d, &y)));
    }

    #[test]
    fn conj_is_an_involution(x in word(4, 3), y in word(4, 3)) {
        let m = qsphere();
        let ctx = m.ctx();
        let e = ctx.add(
            &ctx.term(nf(m, &x), vec![ctx.syms.get("e+"), ctx.syms.get("f-")]),
            &ctx.term(nf(m, &y), vec![ctx.syms.get("f+")]),
        );
        let c = ctx.conj(&e).unwrap();
        prop_assert_eq!(ctx.conj(&c).unwrap(), e.clone());
        prop_assert_eq!(ctx.upsilon_inv(&ctx.upsilon(&c).unwrap()).unwrap(), c);
    }

    #[test]
    fn conj_is_antilinear_and_swaps_sides(x in word(4, 3), a in word(4, 2)) {
        let m = qsphere();
        let ctx = m.ctx();
        let a = nf(m, &a);
        let e = ctx.term(nf(m, &x), vec![ctx.syms.get("e+")]);
        // bar(a·e) = bar(e)·a*
        let lhs = ctx.conj(&ctx.left_mul(&a, &e).unwrap()).unwrap();
        let rhs = ctx.right_mul(&ctx.conj(&e).unwrap(), &m.alg.star_elem(&a).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let i = ncg::Scalar::i();
        let lhs = ctx.conj(&ctx.scale(&i, &e).unwrap()).unwrap();
        prop_assert_eq!(lhs, ctx.scale(&i.neg(), &ctx.conj(&e).unwrap()).unwrap());
    }
}

#[test]
fn sphere_d_table() {
    let m = qsphere();
    let ctx = m.ctx();
    let d = |x: &str| ctx.render(&m.cal.d(&ctx, &m.alg.parse_expr(x).unwrap()).unwrap());
    assert_eq!(d("a"), "a e0 + q b e+");
    assert_eq!(d("b"), "-q^-2 b e0 + a e-");
    assert!(m.cal.d(&ctx, &m.alg.parse_expr("a*d - q^-1*b*c").unwrap()).unwrap().is_zero());
}

#[test]
fn disk_d_of_w() {
    let m = qdisk();
    let ctx: Ctx<Presentation> = m.ctx();
    let dw = m.cal.d(&ctx, &m.alg.gen("w")).unwrap();
    let expect = ctx.neg(&m.cal.d(&ctx, &m.alg.parse_expr("zb*z").unwrap()).unwrap());
    assert_eq!(dw, expect);
}
