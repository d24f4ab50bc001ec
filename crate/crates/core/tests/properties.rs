//! Property tests for the algebraic primitives.

use coideal_core::census::{Height, HilbertSeries};
use coideal_core::gcm::{apply_word, reflection_matrix, validate_gcm, RootVector};
use coideal_core::oracle::field::{Cyclotomic, FieldElement};
use coideal_core::scalar::{parse_scalar, ScalarMode, ScalarValue};
use num_rational::BigRational;
use proptest::prelude::*;

fn arb_scalar(mode: ScalarMode) -> BoxedStrategy<ScalarValue> {
    match mode {
        ScalarMode::RootOfUnity => (0i64..24, 1u64..=12)
            .prop_map(|(k, n)| ScalarValue::root_of_unity(k, n))
            .boxed(),
        ScalarMode::GenericQ => (-20i64..=20)
            .prop_map(ScalarValue::generic_power)
            .boxed(),
        ScalarMode::Rational => (-9i64..=9, 1i64..=9)
            .prop_map(|(n, d)| ScalarValue::rational(n, d))
            .boxed(),
    }
}

fn arb_any_scalar() -> BoxedStrategy<ScalarValue> {
    prop_oneof![
        arb_scalar(ScalarMode::RootOfUnity),
        arb_scalar(ScalarMode::GenericQ),
        arb_scalar(ScalarMode::Rational),
    ]
    .boxed()
}

proptest! {
    #[test]
    fn scalar_inverse_round_trips(s in arb_any_scalar()) {
        if let Ok(inv) = s.inv() {
            prop_assert!(s.mul(&inv).is_one());
        }
    }

    #[test]
    fn scalar_power_laws(s in arb_any_scalar(), a in -4i64..=4, b in -4i64..=4) {
        if matches!(&s, ScalarValue::Rational(r) if num_traits::Zero::is_zero(r)) {
            return Ok(());
        }
        prop_assert_eq!(s.pow_i64(a).mul(&s.pow_i64(b)), s.pow_i64(a + b));
    }

    #[test]
    fn scalar_literals_round_trip(s in arb_any_scalar()) {
        let mode = s.mode();
        let text = s.to_string();
        prop_assert_eq!(parse_scalar(&text, mode).unwrap(), s);
    }

    /// The q-integer test agrees with the cyclotomic evaluation of
    /// `1 + q + ... + q^{m-1}` at the corresponding root of unity.
    #[test]
    fn q_integer_matches_cyclotomic_sum(k in 0i64..24, n in 1u64..=12, m in 1u64..=10) {
        let s = ScalarValue::root_of_unity(k, n);
        let ScalarValue::RootOfUnity { num, den } = s.clone() else { unreachable!() };
        let mut sum = Cyclotomic::zero(den);
        for t in 0..m {
            sum = sum.add(&Cyclotomic::root_of_unity(den, (num * t) % den));
        }
        prop_assert_eq!(s.q_integer_is_zero(m), sum.is_zero());
    }

    #[test]
    fn apply_word_is_associative_under_concatenation(
        word1 in prop::collection::vec(0usize..2, 0..6),
        word2 in prop::collection::vec(0usize..2, 0..6),
        coords in prop::collection::vec(-4i64..=4, 2),
    ) {
        let a = validate_gcm(vec![vec![2, -1], vec![-2, 2]]).unwrap();
        let maps1: Vec<_> = word1.iter().map(|&i| reflection_matrix(&a, i).unwrap()).collect();
        let maps2: Vec<_> = word2.iter().map(|&i| reflection_matrix(&a, i).unwrap()).collect();
        let all: Vec<_> = maps1.iter().chain(&maps2).cloned().collect();
        let v = RootVector::from_i64(&coords);
        let stepwise = apply_word(&maps1, &apply_word(&maps2, &v).unwrap()).unwrap();
        prop_assert_eq!(apply_word(&all, &v).unwrap(), stepwise);
    }

    /// Truncated evaluation commutes with factor reordering.
    #[test]
    fn hilbert_truncation_is_factor_order_invariant(
        perm_seed in 0usize..24,
        heights in prop::collection::vec(prop_oneof![Just(None), (2u64..5).prop_map(Some)], 4),
    ) {
        let degrees = [
            RootVector::from_i64(&[1, 0]),
            RootVector::from_i64(&[0, 1]),
            RootVector::from_i64(&[1, 1]),
            RootVector::from_i64(&[1, 2]),
        ];
        let mut factors: Vec<(RootVector, Height)> = degrees
            .iter()
            .zip(&heights)
            .map(|(d, h)| {
                (
                    d.clone(),
                    h.map(Height::Finite).unwrap_or(Height::Infinite),
                )
            })
            .collect();
        let reference = HilbertSeries::new(2, factors.clone()).truncate(6);
        // rotate into a different order and rebuild
        factors.rotate_left(perm_seed % 4);
        if perm_seed % 2 == 1 {
            factors.swap(0, 1);
        }
        let shuffled = HilbertSeries::new(2, factors).truncate(6);
        prop_assert_eq!(reference, shuffled);
    }

    #[test]
    fn field_element_ring_laws(a in -6i64..=6, b in -6i64..=6, k in 0u64..5) {
        let x = FieldElement::Cyc(Cyclotomic::root_of_unity(5, k));
        let p = FieldElement::from_i64(a);
        let q = FieldElement::from_i64(b);
        // distributivity across the rational/cyclotomic promotion
        let lhs = x.mul(&p.add(&q));
        let rhs = x.mul(&p).add(&x.mul(&q));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rational_field_inverse(n in 1i64..=20, d in 1i64..=20) {
        let x = FieldElement::Rat(BigRational::new(n.into(), d.into()));
        prop_assert!(x.mul(&x.inv()).is_one());
    }
}
