mod common;

use common::{fe, field, Oracle};
use ffrl::field::prime_power;
use ffrl::{Complex64, Error, FieldElement, FiniteField};
use proptest::prelude::*;

const ORDERS: [u64; 7] = [3, 5, 7, 9, 11, 13, 27];

#[test]
fn arithmetic_matches_oracle() {
    for q in [3u32, 5, 7, 9, 13] {
        let f = field(q as u64);
        let o = Oracle::new(q);
        for a in 0..q {
            for b in 0..q {
                assert_eq!(f.add(fe(a), fe(b)).0, o.add(a, b), "q={q} {a}+{b}");
                assert_eq!(f.mul(fe(a), fe(b)).0, o.mul(a, b), "q={q} {a}*{b}");
            }
            assert_eq!(f.eta(fe(a)), o.eta(a));
            assert!((f.chi(fe(a)) - o.chi(a)).norm() < 1e-12);
        }
    }
}

#[test]
fn gauss_sum_matches_classical_evaluation() {
    for q in [3u32, 5, 7, 9, 11, 13] {
        let f = field(q as u64);
        let o = Oracle::new(q);
        let g1 = f.gauss_sum(FieldElement::ONE);
        assert!((g1 - o.gauss_sum_one()).norm() < 1e-9, "q={q}: {g1}");
    }
}

#[test]
fn rejects_bad_orders() {
    assert!(matches!(FiniteField::from_order(4), Err(Error::NotOddPrime(2))));
    assert!(matches!(FiniteField::from_order(2), Err(Error::NotOddPrime(2))));
    assert!(matches!(FiniteField::from_order(15), Err(Error::NotPrimePower(15))));
    assert!(matches!(FiniteField::new(9, 1), Err(Error::NotOddPrime(9))));
    assert!(matches!(
        FiniteField::with_limit(3, 5, 100),
        Err(Error::TooLarge { size: 243, limit: 100 })
    ));
    assert_eq!(prime_power(49), Some((7, 2)));
    assert_eq!(prime_power(12), None);
}

#[test]
fn trace_is_additive_and_lands_in_prime_field() {
    for q in [9u64, 27, 25] {
        let f = field(q);
        let p = f.characteristic();
        for a in f.elements() {
            assert!(f.trace(a).0 < p);
            for b in f.elements().step_by(3) {
                let lhs = f.trace(f.add(a, b)).0;
                assert_eq!(lhs, (f.trace(a).0 + f.trace(b).0) % p);
            }
        }
    }
}

#[test]
fn sqrt_of_minus_one_exists_exactly_when_expected() {
    for q in ORDERS {
        let f = field(q);
        let expected = q % 4 == 1;
        let i = f.sqrt_of_minus_one();
        assert_eq!(i.is_some(), expected, "q={q}");
        if let Some(i) = i {
            assert_eq!(f.square(i), f.neg(FieldElement::ONE));
        }
    }
}

fn order_and_pair() -> impl Strategy<Value = (u64, u32, u32)> {
    prop::sample::select(ORDERS.to_vec()).prop_flat_map(|q| (Just(q), 0..q as u32, 0..q as u32))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms((q, a, b) in order_and_pair(), c in 0u32..1000) {
        let f = field(q);
        let (a, b, c) = (fe(a), fe(b), fe(c % q as u32));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !a.is_zero() {
            let inv = f.inv(a).unwrap();
            prop_assert_eq!(f.mul(a, inv), FieldElement::ONE);
            prop_assert_eq!(f.div(b, a), f.mul(b, inv));
            prop_assert_eq!(f.pow(a, q - 1), FieldElement::ONE);
        } else {
            prop_assert!(f.inv(a).is_none());
        }
    }

    #[test]
    fn characters_are_homomorphisms((q, a, b) in order_and_pair()) {
        let f = field(q);
        let (a, b) = (fe(a), fe(b));
        let lhs = f.chi(f.add(a, b));
        prop_assert!((lhs - f.chi(a) * f.chi(b)).norm() < 1e-12);
        prop_assert_eq!(f.eta(f.mul(a, b)), f.eta(a) * f.eta(b));
        prop_assert!((f.chi(a).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gauss_sums_scale_by_eta((q, a, _b) in order_and_pair()) {
        let f = field(q);
        let a = fe(a);
        let g1 = f.gauss_sum(FieldElement::ONE);
        let ga = f.gauss_sum(a);
        if a.is_zero() {
            prop_assert!(ga.norm() < 1e-9);
        } else {
            prop_assert!((ga - g1 * f.eta(a) as f64).norm() < 1e-9);
            prop_assert!((ga.norm() - (q as f64).sqrt()).abs() < 1e-9);
            prop_assert!((f.gauss_sum_reciprocal(a) - ga).norm() < 1e-9);
        }
    }

    #[test]
    fn weil_sum_matches_brute_force((q, a, b) in order_and_pair()) {
        prop_assume!(a != 0);
        let f = field(q);
        let (a, b) = (fe(a), fe(b));
        let brute: Complex64 = f.elements().map(|s| f.chi(f.add(f.mul(a, f.square(s)), f.mul(b, s)))).sum();
        prop_assert!((brute - f.weil_square_sum(a, b).unwrap()).norm() < 1e-9);
    }

    #[test]
    fn twisted_characters_stay_orthogonal(q in prop::sample::select(vec![5u64, 9, 13]), c in 1u32..5) {
        let f = field(q);
        let t = f.twisted(fe(c)).unwrap();
        prop_assert!(t.character_orthogonality_check());
        prop_assert!((t.gauss_sum(FieldElement::ONE).norm() - (q as f64).sqrt()).abs() < 1e-9);
    }
}
