//! Randomized property tests tying the independent machinery together:
//! word arithmetic against normal forms, the order against both, closure
//! invariants against the moves that must not change them, and the
//! three-strand Burau oracle against the equality decision procedure.

mod common;

use std::cmp::Ordering;

use braidwalk_core::word::BraidWord;
use braidwalk_core::{dehornoy, garside, invariants};
use proptest::prelude::*;

/// Letters for an `n`-strand word: nonzero, magnitude below `n`.
fn letter(n: usize) -> impl Strategy<Value = i32> {
    let top = n as i32 - 1;
    (1..=top, prop::bool::ANY).prop_map(|(g, neg)| if neg { -g } else { g })
}

fn word(n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec(letter(n), 0..=max_len)
        .prop_map(move |letters| BraidWord::new(n, letters).unwrap())
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(96))]

    #[test]
    fn free_reduction_is_idempotent_and_preserves_the_element(w in word(4, 10)) {
        let reduced = w.free_reduce();
        let again = reduced.free_reduce();
        prop_assert_eq!(again.letters(), reduced.letters());
        prop_assert!(garside::equals(&w, &reduced).unwrap());
    }

    #[test]
    fn normal_form_of_a_product_is_the_product_of_normal_forms(
        a in word(4, 8),
        b in word(4, 8),
    ) {
        let product = garside::left_normal_form(&a.compose(&b).unwrap());
        let factored = garside::left_normal_form(&a)
            .mul(&garside::left_normal_form(&b))
            .unwrap();
        prop_assert_eq!(product, factored);
    }

    #[test]
    fn handle_reduction_preserves_the_element(w in word(4, 10)) {
        let reduced = dehornoy::handle_reduce(&w).unwrap();
        prop_assert!(garside::equals(&w, &reduced).unwrap());
    }

    #[test]
    fn order_comparison_agrees_with_sign_of_the_quotient(
        a in word(3, 8),
        b in word(3, 8),
    ) {
        let cmp = dehornoy::compare(&a, &b).unwrap();
        let quotient = b.inverse().compose(&a).unwrap();
        let sign = dehornoy::order_sign(&quotient).unwrap();
        let expected = match sign {
            dehornoy::OrderSign::Negative => Ordering::Less,
            dehornoy::OrderSign::Zero => Ordering::Equal,
            dehornoy::OrderSign::Positive => Ordering::Greater,
        };
        prop_assert_eq!(cmp, expected);
        // Equality in the order must be genuine equality of elements.
        if cmp == Ordering::Equal {
            prop_assert!(garside::equals(&a, &b).unwrap());
        }
    }

    #[test]
    fn order_is_left_invariant(
        g in word(3, 6),
        a in word(3, 6),
        b in word(3, 6),
    ) {
        let before = dehornoy::compare(&a, &b).unwrap();
        let after = dehornoy::compare(
            &g.compose(&a).unwrap(),
            &g.compose(&b).unwrap(),
        )
        .unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn floor_shifts_by_one_per_full_twist(w in word(3, 8), m in -3i64..=3) {
        let base = dehornoy::dehornoy_floor(&w).unwrap().floor;
        let twisted = BraidWord::full_twist_power(3, m)
            .unwrap()
            .compose(&w)
            .unwrap();
        let shifted = dehornoy::dehornoy_floor(&twisted).unwrap().floor;
        prop_assert_eq!(shifted, base + m);
    }

    #[test]
    fn floor_is_superadditive_with_gap_at_most_one(
        a in word(3, 8),
        b in word(3, 8),
    ) {
        let fa = dehornoy::dehornoy_floor(&a).unwrap().floor;
        let fb = dehornoy::dehornoy_floor(&b).unwrap().floor;
        let fab = dehornoy::dehornoy_floor(&a.compose(&b).unwrap())
            .unwrap()
            .floor;
        prop_assert!(fa + fb <= fab);
        prop_assert!(fab <= fa + fb + 1);
    }

    #[test]
    fn burau_oracle_agrees_with_the_equality_decision(
        a in word(3, 8),
        b in word(3, 8),
    ) {
        prop_assert_eq!(
            common::burau_equal(&a, &b),
            garside::equals(&a, &b).unwrap()
        );
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn knot_alexander_polynomials_are_palindromic(w in word(3, 9)) {
        prop_assume!(w.closure_component_count() == 1);
        let alex = invariants::alexander_polynomial(&w);
        prop_assert_eq!(alex.reversed(), alex);
    }

    #[test]
    fn mirror_image_negates_the_signature(w in word(4, 9)) {
        prop_assert_eq!(
            invariants::signature(&w.mirror()),
            -invariants::signature(&w)
        );
    }

    #[test]
    fn stabilization_changes_neither_signature_nor_alexander(
        w in word(3, 9),
        positive in prop::bool::ANY,
    ) {
        let stabilized = w.markov_stabilize(if positive { 1 } else { -1 });
        prop_assert_eq!(
            invariants::signature(&stabilized),
            invariants::signature(&w)
        );
        prop_assert_eq!(
            invariants::alexander_polynomial(&stabilized),
            invariants::alexander_polynomial(&w)
        );
    }

    #[test]
    fn conjugation_changes_neither_signature_nor_alexander(
        w in word(3, 8),
        g in word(3, 6),
    ) {
        let conjugated = BraidWord::conjugate_by(&g, &w).unwrap();
        prop_assert_eq!(
            invariants::signature(&conjugated),
            invariants::signature(&w)
        );
        prop_assert_eq!(
            invariants::alexander_polynomial(&conjugated),
            invariants::alexander_polynomial(&w)
        );
    }

    #[test]
    fn block_decomposition_round_trips_and_counts_parts(w in word(4, 12)) {
        let blocks = w.sigma1_block_decomposition();
        let rebuilt = blocks.concat();
        prop_assert_eq!(rebuilt.letters(), w.letters());
        prop_assert_eq!(blocks.part_count(), 2 * blocks.sigma1_count + 1);
    }

    #[test]
    fn positive_words_pin_the_s_interval_to_a_point(w in word(3, 9)) {
        let positive = BraidWord::new(
            3,
            w.letters().iter().map(|l| l.abs()).collect(),
        )
        .unwrap();
        prop_assume!(positive.closure_component_count() == 1);
        let s = invariants::s_interval(&positive).unwrap();
        prop_assert!(s.is_exact());
        prop_assert_eq!(s.lo, positive.exponent_sum() - 3 + 1);
    }
}
