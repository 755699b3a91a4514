use ncg::models::DISK_PRES;
use ncg::{GaussRat, Presentation, Scalar};
use num_rational::BigRational;
use proptest::prelude::*;

fn gauss() -> impl Strategy<Value = GaussRat> {
    (-4i64..=4, -2i64..=2, 1i64..=3).prop_map(|(re, im, d)| {
        GaussRat::from_frac(re, d).add(&GaussRat::from_frac(im, d).mul(&GaussRat::i()))
    })
}

/// Laurent polynomials in `s` with small Gaussian-rational coefficients.
fn laurent() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((gauss(), -3i64..=3), 0..4).prop_map(|terms| {
        terms
            .into_iter()
            .fold(Scalar::zero(), |acc, (c, k)| &acc + &(&Scalar::constant(c) * &Scalar::s_pow(k)))
    })
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (laurent(), laurent()).prop_map(|(n, d)| if d.is_zero() { n } else { n.div(&d).unwrap() })
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn star_is_an_involutive_automorphism(a in scalar(), b in scalar()) {
        prop_assert_eq!(a.star().star(), a.clone());
        prop_assert_eq!((&a * &b).star(), &a.star() * &b.star());
        prop_assert_eq!((&a + &b).star(), &a.star() + &b.star());
        prop_assert_eq!(Scalar::s().star(), Scalar::s());
    }

    #[test]
    fn specialization_is_a_ring_homomorphism(a in scalar(), b in scalar()) {
        for s0 in [rat(2, 1), rat(3, 2)] {
            if let (Ok(x), Ok(y)) = (a.specialize(&s0), b.specialize(&s0)) {
                prop_assert_eq!((&a * &b).specialize(&s0).unwrap(), x.mul(&y));
                prop_assert_eq!((&a + &b).specialize(&s0).unwrap(), x.add(&y));
            }
        }
    }

    #[test]
    fn sqrt_of_a_square(a in laurent()) {
        let sq = &a * &a;
        let r = sq.sqrt().expect("a square has a root");
        prop_assert!(r == a || r == a.neg());
    }

    #[test]
    fn display_reparses(a in scalar()) {
        let p = Presentation::parse(DISK_PRES).unwrap();
        let back = p.parse_expr(&a.to_string()).unwrap().as_scalar().unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn q_integers() {
    let q = Scalar::q();
    assert_eq!(Scalar::qint(3, 1), &(&Scalar::one() + &q) + &(&q * &q));
    assert_eq!(Scalar::qint(1, -2), Scalar::one());
    assert_eq!(Scalar::qint(2, -2).to_string(), "1 + q^-2");
}

#[test]
fn roots_in_the_field() {
    assert_eq!(Scalar::q_pow(3).sqrt().unwrap(), Scalar::s_pow(3));
    assert!(Scalar::from_int(2).sqrt().is_none());
    assert!((&Scalar::from_int(2) * &Scalar::q_pow(2)).sqrt().is_none());
    assert_eq!(Scalar::from_frac(9, 4).sqrt().unwrap(), Scalar::from_frac(3, 2));
}

#[test]
fn specialization_values() {
    let x = Scalar::q().div(&(&Scalar::one() + &Scalar::q_pow(2))).unwrap();
    assert_eq!(x.specialize(&rat(2, 1)).unwrap(), GaussRat::from_frac(4, 17));
    assert_eq!(x.specialize(&rat(3, 2)).unwrap(), GaussRat::from_frac(36, 97));
    let pole = Scalar::one().div(&(&Scalar::q() - &Scalar::one())).unwrap();
    assert!(pole.specialize(&rat(1, 1)).is_err());
}

#[test]
fn division_by_zero_is_an_error() {
    assert!(Scalar::one().div(&Scalar::zero()).is_err());
}
