use ncg::models::{DISK_LOCALIZED_PRES, DISK_PRES, SU2_PRES};
use ncg::ncalg::{check_presentation, AlgElem, AlgError, Word};
use ncg::report::Status;
use ncg::{Presentation, Scalar};
use proptest::prelude::*;
use std::sync::OnceLock;

fn su2() -> &'static Presentation {
    static P: OnceLock<Presentation> = OnceLock::new();
    P.get_or_init(|| Presentation::parse(SU2_PRES).unwrap())
}

fn disk() -> &'static Presentation {
    static P: OnceLock<Presentation> = OnceLock::new();
    P.get_or_init(|| Presentation::parse(DISK_PRES).unwrap())
}

fn ev(p: &Presentation, x: &str) -> String {
    p.render(&p.parse_expr(x).unwrap())
}

fn word(max_gen: u8, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..max_gen, 0..=max_len).prop_map(|v| v.into_iter().collect())
}

fn elem_of(w: &Word) -> AlgElem {
    AlgElem::term(w.clone(), Scalar::one())
}

#[test]
fn su2_generators_and_grades() {
    let p = su2();
    let grades: Vec<i32> = ["a", "b", "c", "d"].iter().map(|g| p.word_grade(&p.word_from_names(&[g]))).collect();
    assert_eq!(grades, vec![1, -1, 1, -1]);
}

#[test]
fn su2_normal_forms() {
    let p = su2();
    assert_eq!(ev(p, "b*a"), "q a b");
    assert_eq!(ev(p, "d*a"), "1 + q b c");
    assert_eq!(ev(p, "a*d"), "1 + q^-1 b c");
    assert_eq!(ev(p, "a*d - q^-1*b*c"), "1");
    assert_eq!(ev(p, "d*a - q*b*c"), "1");
    assert_eq!(ev(p, "b*c - c*b"), "0");
    assert_eq!(ev(p, "a*b*c*d"), "q^-3 b^2 c^2 + q^-2 b c");
}

#[test]
fn disk_normal_forms() {
    let p = disk();
    assert_eq!(ev(p, "1 - zb*z"), "w");
    assert_eq!(ev(p, "z*zb"), "1 - q^-2 w");
    assert_eq!(ev(p, "z*zb - (q^-2*zb*z - q^-2 + 1)"), "0");
    assert_eq!(ev(p, "z*w"), "q^-2 w z");
    assert_eq!(ev(p, "w*z - q^2*z*w"), "0");
    assert_eq!(ev(p, "w*zb - q^-2*zb*w"), "0");
    assert_eq!(ev(p, "w*w"), "w^2");
}

#[test]
fn star_values() {
    let p = su2();
    let st = |x: &str| p.render(&p.star_elem(&p.parse_expr(x).unwrap()).unwrap());
    assert_eq!(st("a*b"), "-q^-1 c d");
    assert_eq!(st("b"), "-q^-1 c");
    assert_eq!(p.star_elem(&p.star_elem(&p.gen("b")).unwrap()).unwrap(), p.gen("b"));
    let d = disk();
    assert_eq!(d.star_elem(&d.gen("z")).unwrap(), d.gen("zb"));
}

#[test]
fn grade_components() {
    let p = su2();
    let c = p.components(&p.parse_expr("a + b*d").unwrap());
    assert_eq!(c.len(), 2);
    assert_eq!(p.render(&c[&1]), "a");
    assert_eq!(p.render(&c[&-2]), "b d");
    assert!(p.components(&AlgElem::zero()).is_empty());
    let d = disk();
    let c = d.components(&d.parse_expr("w^3").unwrap());
    assert_eq!(c.keys().copied().collect::<Vec<_>>(), vec![0]);
}

#[test]
fn builtin_presentations_are_locally_confluent() {
    for src in [SU2_PRES, DISK_PRES, DISK_LOCALIZED_PRES] {
        let p = Presentation::parse(src).unwrap();
        let rep = check_presentation(&p, 6);
        assert!(rep.all_ok(), "{}", rep.render_text());
    }
}

#[test]
fn dropping_the_da_rule_breaks_confluence() {
    let broken = SU2_PRES.replace("d a -> 1 + q b c\n", "");
    let p = Presentation::parse(&broken).unwrap();
    let rep = check_presentation(&p, 3);
    assert_eq!(rep.get("local-confluence").unwrap().status, Status::Fail);
}

#[test]
fn wrong_constant_is_caught_by_star_consistency() {
    let broken = DISK_PRES.replace("z zb -> 1 - q^-2 w", "z zb -> q^-2 w");
    let p = Presentation::parse(&broken).unwrap();
    assert!(!check_presentation(&p, 3).all_ok());
}

#[test]
fn grade_mismatch_is_rejected() {
    let broken = SU2_PRES.replace("c b -> b c", "c b -> a c");
    assert!(Presentation::parse(&broken).is_err());
}

#[test]
fn syntax_errors_carry_a_position() {
    let e = su2().parse_expr("a*(b + ").unwrap_err();
    assert!(e.position().is_some());
    assert!(su2().parse_expr("a*x").is_err());
}

#[test]
fn rewrite_budget_is_enforced() {
    let mut p = Presentation::parse("[generators]\nx 0\n[rules]\nx -> x x\n").unwrap();
    p.set_budget(1000);
    assert!(matches!(p.normal_form_word(&[0]), Err(AlgError::NonTerminating(1000))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn su2_normal_form_is_idempotent(w in word(4, 6)) {
        let p = su2();
        let n = p.normal_form_word(&w).unwrap();
        prop_assert_eq!(p.normal_form(&n).unwrap(), n.clone());
        for (m, _) in n.terms() {
            prop_assert!(p.is_irreducible(m));
        }
    }

    #[test]
    fn disk_normal_form_is_idempotent(w in word(3, 6)) {
        let p = disk();
        let n = p.normal_form_word(&w).unwrap();
        prop_assert_eq!(p.normal_form(&n).unwrap(), n);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn su2_multiplication_is_associative(x in word(4, 3), y in word(4, 3), z in word(4, 2)) {
        let p = su2();
        let (x, y, z) = (elem_of(&x), elem_of(&y), elem_of(&z));
        let l = p.multiply(&p.multiply(&x, &y).unwrap(), &z).unwrap();
        let r = p.multiply(&x, &p.multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn disk_multiplication_is_associative(x in word(3, 3), y in word(3, 3), z in word(3, 3)) {
        let p = disk();
        let (x, y, z) = (elem_of(&x), elem_of(&y), elem_of(&z));
        let l = p.multiply(&p.multiply(&x, &y).unwrap(), &z).unwrap();
        let r = p.multiply(&x, &p.multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn star_reverses_products(x in word(4, 4), y in word(4, 4)) {
        let p = su2();
        let (x, y) = (elem_of(&x), elem_of(&y));
        let lhs = p.star_elem(&p.multiply(&x, &y).unwrap()).unwrap();
        let rhs = p.multiply(&p.star_elem(&y).unwrap(), &p.star_elem(&x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let xx = p.normal_form(&x).unwrap();
        prop_assert_eq!(p.star_elem(&p.star_elem(&xx).unwrap()).unwrap(), xx);
    }

    #[test]
    fn products_are_graded(x in word(4, 4), y in word(4, 4)) {
        let p = su2();
        let g = p.word_grade(&x) + p.word_grade(&y);
        let prod = p.multiply(&elem_of(&x), &elem_of(&y)).unwrap();
        for (m, _) in prod.terms() {
            prop_assert_eq!(p.word_grade(m), g);
        }
    }

    #[test]
    fn printing_reparses(w in word(4, 5)) {
        let p = su2();
        let n = p.normal_form_word(&w).unwrap();
        prop_assert_eq!(p.parse_expr(&p.render(&n)).unwrap(), n);
    }
}
