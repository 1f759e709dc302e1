//! Randomized invariants over the supported profile families.
//!
//! Instances are drawn small enough that every construction returns in
//! milliseconds, then the structural promises are checked: outputs verify,
//! sizes respect the bounds, text and part-order round trips are lossless,
//! and the verifier actually rejects corrupted inputs.

use std::time::Duration;

use proptest::prelude::*;

use genpack::model::GeneralizedPacking;
use genpack::{bounds, construct, views, Optimality, PackingInstance};

fn make(v: Vec<usize>, k: Vec<usize>) -> PackingInstance {
    PackingInstance::new(v, k, 2, 1).expect("strategy produced a bad instance")
}

/// Small instances from every family the constructions cover.  Pair-pair
/// instances keep the second part even so no case falls into the open
/// both-odd regime, whose exact value nobody knows.
fn small_instance() -> impl Strategy<Value = PackingInstance> {
    prop_oneof![
        (2..=9usize, 1..=9usize).prop_map(|(a, b)| make(vec![a, b], vec![2, 1])),
        (3..=9usize, 1..=9usize).prop_map(|(a, b)| make(vec![a, b], vec![3, 1])),
        (2..=6usize, 1..=6usize, 1..=6usize)
            .prop_map(|(a, b, c)| make(vec![a, b, c], vec![2, 1, 1])),
        (2..=6usize, 1..=5usize).prop_map(|(a, b)| make(vec![a, 2 * b], vec![2, 2])),
        (1..=5usize, 1..=5usize, 1..=5usize, 1..=5usize)
            .prop_map(|(a, b, c, d)| make(vec![a, b, c, d], vec![1, 1, 1, 1])),
    ]
}

fn build(inst: &PackingInstance) -> construct::ConstructionResult {
    construct::construct_max_with(inst, Duration::from_secs(30))
        .expect("strategy stays inside the supported families")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Whatever route the dispatcher picks, the output verifies, stays
    /// under the upper bound, and hits the known number exactly.
    #[test]
    fn constructions_verify_and_hit_the_known_numbers(inst in small_instance()) {
        let result = build(&inst);
        let report = result.packing().verify().unwrap();
        prop_assert!(report.valid, "invalid output: {:?}", report.violations.first());
        prop_assert!(result.size() <= bounds::generalized_upper_bound(&inst).value);
        if let Some(known) = bounds::known_packing_number(&inst) {
            prop_assert_eq!(result.size(), known.value);
            prop_assert_eq!(result.optimal(), Optimality::Proven);
        }
    }

    /// The text form is lossless up to normalization.
    #[test]
    fn serialize_then_parse_is_the_identity(inst in small_instance()) {
        let packing = build(&inst).into_packing();
        let round_trip = GeneralizedPacking::parse(&packing.serialize()).unwrap();
        prop_assert_eq!(
            round_trip.normalize().serialize(),
            packing.normalize().serialize()
        );
    }

    /// Rotating the parts must not change the packing number; the result
    /// maps back to the caller's order.
    #[test]
    fn part_order_does_not_change_the_size(inst in small_instance(), shift in 0..4usize) {
        let m = inst.v().len();
        let rotate = |xs: &[usize]| -> Vec<usize> {
            (0..m).map(|i| xs[(i + shift) % m]).collect()
        };
        let rotated = make(rotate(inst.v()), rotate(inst.k()));
        let base = build(&inst);
        let turned = build(&rotated);
        prop_assert_eq!(turned.size(), base.size());
        prop_assert_eq!(turned.packing().instance(), &rotated);
    }

    /// Duplicating any block must trip the verifier.
    #[test]
    fn the_verifier_rejects_a_duplicated_block(inst in small_instance()) {
        let packing = build(&inst).into_packing();
        prop_assume!(!packing.blocks().is_empty());
        let mut text = packing.serialize();
        let last = text.trim_end().rsplit('\n').next().unwrap().to_string();
        text.push_str(&last);
        text.push('\n');
        let corrupted = GeneralizedPacking::parse(&text).unwrap();
        prop_assert!(!corrupted.verify().unwrap().valid);
    }

    /// With strength 2 and one life per pair, each block covers C(K,2)
    /// distinct join-graph edges, so the leave size is forced.
    #[test]
    fn the_leave_size_is_forced_by_the_block_count(inst in small_instance()) {
        let packing = build(&inst).into_packing();
        let block_size: usize = inst.k().iter().sum();
        let covered = packing.blocks().len() * block_size * (block_size - 1) / 2;
        let join = views::join_graph(&inst);
        let leave = views::leave_graph(&packing).unwrap();
        prop_assert_eq!(leave.num_edges(), join.num_edges() - covered);
    }

    /// Fusing the two singleton parts of a pair-point-point packing gives
    /// a valid pair-pair packing of the same size.
    #[test]
    fn merging_singleton_parts_preserves_validity(
        (a, b, c) in (2..=6usize, 1..=6usize, 1..=6usize)
    ) {
        let inst = make(vec![a, b, c], vec![2, 1, 1]);
        let packing = build(&inst).into_packing();
        let merged = construct::merge_parts(&packing, 2, 3).unwrap();
        prop_assert_eq!(merged.instance().v(), &[a, b + c][..]);
        prop_assert_eq!(merged.instance().k(), &[2, 2][..]);
        prop_assert_eq!(merged.blocks().len(), packing.blocks().len());
        prop_assert!(merged.verify().unwrap().valid);
    }
}
