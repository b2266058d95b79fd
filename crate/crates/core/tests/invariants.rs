//! Property-based invariants across the core types.

use proptest::prelude::*;

use transversal_core::generate::{generate_collection, GenModel};
use transversal_core::pattern::OrientationPattern;
use transversal_core::tournament::{Tournament, TournamentCollection};
use transversal_core::Ratio;

fn arbitrary_tournament(max_n: usize) -> impl Strategy<Value = Tournament> {
    (2..=max_n, any::<u64>()).prop_map(|(n, seed)| {
        let mut rng = transversal_core::generate::SplitMix64::new(seed);
        transversal_core::generate::generate_tournament(n, GenModel::Uniform, &mut rng).unwrap()
    })
}

fn arbitrary_pattern(max_len: usize) -> impl Strategy<Value = OrientationPattern> {
    (0..=max_len, any::<u64>())
        .prop_map(|(len, bits)| OrientationPattern::path_from_bits(bits, len))
}

proptest! {
    #[test]
    fn reversal_is_involutive(t in arbitrary_tournament(24)) {
        let r = t.reverse();
        prop_assert_eq!(r.reverse(), t.clone());
        for v in 0..t.vertex_count() {
            prop_assert_eq!(t.out_degree(v), r.in_degree(v));
        }
    }

    #[test]
    fn out_degrees_sum_to_pair_count(t in arbitrary_tournament(40)) {
        let n = t.vertex_count();
        let total: usize = (0..n).map(|v| t.out_degree(v)).sum();
        prop_assert_eq!(total, n * (n - 1) / 2);
        prop_assert!(t.check_invariants());
    }

    #[test]
    fn majority_monotone_in_gamma(
        seed in any::<u64>(),
        n in 2usize..8,
        m in 1usize..5,
        num1 in 1u64..=10,
        num2 in 1u64..=10,
    ) {
        let coll = generate_collection(n, m, seed, GenModel::Uniform).unwrap();
        let (lo, hi) = if num1 <= num2 { (num1, num2) } else { (num2, num1) };
        let loose = coll.majority_digraph(Ratio::new(lo, 10).unwrap()).unwrap();
        let tight = coll.majority_digraph(Ratio::new(hi, 10).unwrap()).unwrap();
        for (u, v) in tight.arcs() {
            prop_assert!(loose.has_arc(u, v));
        }
        // at or below one half, at least one orientation of every pair stays
        if 2 * lo <= 10 {
            for u in 0..n {
                for v in (u + 1)..n {
                    prop_assert!(loose.has_arc(u, v) || loose.has_arc(v, u));
                }
            }
        }
    }

    #[test]
    fn pattern_reversal_and_shift(p in arbitrary_pattern(16)) {
        prop_assert_eq!(p.rev().rev(), p.clone());
        let rev_blocks = p.rev().blocks();
        let mut expect = p.blocks();
        expect.reverse();
        for b in &mut expect {
            b.0 = b.0.flip();
        }
        prop_assert_eq!(rev_blocks, expect);
        if !p.is_empty() {
            let shifted = p.shift().unwrap();
            prop_assert_eq!(shifted.len(), p.len());
            prop_assert!(p.block_count() >= 1);
        }
    }

    #[test]
    fn do_decomposition_is_total(p in arbitrary_pattern(14)) {
        let d = transversal_core::pattern::do_decompose(&p).unwrap();
        prop_assert!(transversal_core::pattern::validate_do(&p, &d).is_ok());
        // interior oscillating pieces and their reversals are good
        let k = d.piece_pairs();
        for i in 0..k.saturating_sub(1) {
            let piece = p.slice(d.oscillating[i].clone());
            prop_assert!(piece.is_good_oscillating());
            prop_assert!(piece.rev().is_good_oscillating());
        }
    }

    #[test]
    fn triangle_counts_complement(t in arbitrary_tournament(60)) {
        let n = t.vertex_count() as u64;
        let transitive = transversal_core::hpartition::transitive_triangles(&t);
        let cyclic = transversal_core::hpartition::cyclic_triangles(&t);
        prop_assert_eq!(transitive + cyclic, n * (n - 1) * (n - 2) / 6);
    }

    #[test]
    fn embeddings_found_by_oracle_validate(
        seed in any::<u64>(),
        n in 2usize..6,
        bits in any::<u64>(),
    ) {
        let coll = generate_collection(n, n - 1, seed, GenModel::Uniform).unwrap();
        let pattern = OrientationPattern::path_from_bits(bits, n - 1);
        if let transversal_core::solver::SearchOutcome::Found(emb) =
            transversal_core::oracle::brute_force_oracle(&coll, &pattern).unwrap()
        {
            prop_assert!(
                transversal_core::embedding::validate_embedding(&coll, &pattern, &emb).is_ok()
            );
        }
    }
}

/// Exhaustive rather than sampled: the collection built from one tournament
/// and its reverse supports both orientations of every pair at γ = 1/2.
#[test]
fn opposed_pair_majority_is_complete() {
    for seed in 0..20u64 {
        let coll = generate_collection(6, 1, seed, GenModel::Uniform).unwrap();
        let t = coll.member(0).clone();
        let pair = TournamentCollection::new(vec![t.clone(), t.reverse()]).unwrap();
        let d = pair.majority_digraph(Ratio::HALF).unwrap();
        assert_eq!(d.arc_count() as usize, 6 * 5);
    }
}
