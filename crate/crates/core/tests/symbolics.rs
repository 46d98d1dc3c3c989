use newform_core::symbolics::qlaurent_mul;
use newform_core::{HalfInt, QLaurent, UnitSign};
use num_rational::BigRational;
use proptest::prelude::*;

fn h(s: &str) -> HalfInt {
    s.parse().unwrap()
}

fn mono(c: i64, e: &str) -> QLaurent {
    QLaurent::monomial(c, h(e))
}

#[test]
fn product_examples() {
    assert_eq!(qlaurent_mul(&mono(1, "1"), &mono(1, "2")), mono(1, "3"));
    let a = &QLaurent::one() - &mono(1, "1");
    let b = &QLaurent::one() + &mono(1, "1");
    assert_eq!(qlaurent_mul(&a, &b), &QLaurent::one() - &mono(1, "2"));
    assert_eq!(qlaurent_mul(&mono(1, "1/2"), &mono(1, "1/2")), mono(1, "1"));
}

#[test]
fn no_zero_coefficients() {
    let p = &mono(3, "2") - &mono(3, "2");
    assert!(p.is_zero());
    assert_eq!(p.len(), 0);
    let p = QLaurent::from_terms([(h("1"), 2), (h("1"), -2), (h("0"), 0)]);
    assert!(p.is_empty());
}

#[test]
fn evaluation() {
    let p = &mono(1, "2") - &mono(1, "-1");
    assert_eq!(p.eval(2).unwrap(), BigRational::new(7.into(), 2.into()));
    assert!(mono(1, "1/2").eval(3).is_err());
    assert!(mono(1, "1").eval(1).is_err());
}

#[test]
fn half_int_parsing_and_display() {
    assert_eq!(h("3/2").twice(), 3);
    assert_eq!(h("-2").twice(), -4);
    assert_eq!(h("4/2"), HalfInt::int(2));
    assert_eq!(h("-1/2").to_string(), "-1/2");
    assert!("1/3".parse::<HalfInt>().is_err());
    assert!("x".parse::<HalfInt>().is_err());
}

#[test]
fn serde_round_trips() {
    let p = &mono(2, "-3/2") - &mono(1, "4");
    let json = serde_json::to_string(&p).unwrap();
    assert_eq!(serde_json::from_str::<QLaurent>(&json).unwrap(), p);
    assert_eq!(serde_json::to_string(&h("3/2")).unwrap(), "\"3/2\"");
    assert_eq!(serde_json::from_str::<HalfInt>("2").unwrap(), HalfInt::int(2));
    assert_eq!(serde_json::from_str::<HalfInt>("\"-5/2\"").unwrap(), h("-5/2"));
    assert_eq!(serde_json::to_string(&UnitSign::Minus).unwrap(), "-1");
    assert!(serde_json::from_str::<UnitSign>("0").is_err());
}

#[test]
fn unit_signs() {
    for u in [UnitSign::Plus, UnitSign::Minus] {
        assert_eq!(u * u, UnitSign::Plus);
        assert_eq!(u.pow(2), UnitSign::Plus);
        assert_eq!(UnitSign::from_value(u.value()), Some(u));
    }
    assert_eq!(UnitSign::Minus.pow(3), UnitSign::Minus);
}

fn laurent() -> impl Strategy<Value = QLaurent> {
    prop::collection::vec((-8i64..=8, -5i64..=5), 0..5)
        .prop_map(|t| QLaurent::from_terms(t.into_iter().map(|(e, c)| (HalfInt::from_twice(e), c))))
}

proptest! {
    #[test]
    fn ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a - &a, QLaurent::zero());
        prop_assert_eq!(&a * &QLaurent::one(), a.clone());
    }

    #[test]
    fn degree_additivity(a in laurent(), b in laurent()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let p = &a * &b;
        prop_assert_eq!(p.max_degree().unwrap(), a.max_degree().unwrap() + b.max_degree().unwrap());
        prop_assert_eq!(p.min_degree().unwrap(), a.min_degree().unwrap() + b.min_degree().unwrap());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in laurent(), b in laurent(), q in 2i64..6) {
        let int = |p: &QLaurent| QLaurent::from_terms(p.terms().filter(|(e, _)| e.is_integer()));
        let (a, b) = (int(&a), int(&b));
        prop_assert_eq!((&a * &b).eval(q).unwrap(), a.eval(q).unwrap() * b.eval(q).unwrap());
        prop_assert_eq!((&a + &b).eval(q).unwrap(), a.eval(q).unwrap() + b.eval(q).unwrap());
    }

    #[test]
    fn half_int_order_matches_rationals(x in -100i64..100, y in -100i64..100) {
        let (a, b) = (HalfInt::from_twice(x), HalfInt::from_twice(y));
        prop_assert_eq!(a.cmp(&b), a.to_rational().cmp(&b.to_rational()));
        prop_assert_eq!((a + b).to_rational(), a.to_rational() + b.to_rational());
        prop_assert_eq!(a.is_integer(), x % 2 == 0);
        prop_assert_eq!(a.to_string().parse::<HalfInt>().unwrap(), a);
    }
}
