//! Exhaustive small-instance property suites: every labeled 5-vertex
//! tournament, checked against the median-order toolbox.

use transversal_core::generate::enumerate_labeled;
use transversal_core::order::{
    check_interval_properties, median_order_exact, near_directed_pair, skip_vertex_path,
};
use transversal_core::tournament::Tournament;

/// At most 2d+1 vertices have in-degree (resp. out-degree) at most d.
#[test]
fn degree_concentration_exhaustive_n5() {
    for t in enumerate_labeled(5) {
        for d in 0..5usize {
            let low_in = (0..5).filter(|&v| t.in_degree(v) <= d).count();
            let low_out = (0..5).filter(|&v| t.out_degree(v) <= d).count();
            assert!(low_in <= 2 * d + 1, "in-degree bound failed at d={d}");
            assert!(low_out <= 2 * d + 1, "out-degree bound failed at d={d}");
        }
    }
}

/// Every exact median order is a directed Hamilton path.
#[test]
fn median_orders_are_directed_paths_exhaustive_n5() {
    for t in enumerate_labeled(5) {
        let m = median_order_exact(&t).unwrap();
        for w in m.order.windows(2) {
            assert!(t.has_arc(w[0], w[1]));
        }
        check_interval_properties(&t, &m.order).unwrap();
    }
}

/// The five-vertex skip rewiring produces a valid directed path avoiding the
/// middle vertex of every exact median order.
#[test]
fn skip_vertex_exhaustive_n5() {
    for t in enumerate_labeled(5) {
        let m = median_order_exact(&t).unwrap();
        let skipped = skip_vertex_path(&t, &m.order).unwrap();
        assert_eq!(skipped[0], m.order[0]);
        assert_eq!(skipped[3], m.order[4]);
        assert!(!skipped.contains(&m.order[2]));
        for w in skipped.windows(2) {
            assert!(t.has_arc(w[0], w[1]));
        }
        let mut sorted = skipped.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 4);
    }
}

/// The near-directed pair exists and validates on every 5-vertex tournament.
#[test]
fn near_directed_pair_exhaustive_n5() {
    for t in enumerate_labeled(5) {
        let pair = near_directed_pair(&t).unwrap();
        assert_eq!(pair.directed[0], pair.near[0]);
        assert_eq!(pair.directed.len(), 5);
        assert_eq!(pair.near.len(), 5);
        for w in pair.directed.windows(2) {
            assert!(t.has_arc(w[0], w[1]));
        }
        for (i, w) in pair.near.windows(2).enumerate() {
            if i == pair.backward_arc {
                assert!(t.has_arc(w[1], w[0]));
            } else {
                assert!(t.has_arc(w[0], w[1]));
            }
        }
        let mut sorted = pair.near.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 5);
    }
}

/// Prefix and suffix intervals of an exact median order are themselves
/// interval-valid on the induced subtournament.
#[test]
fn prefix_suffix_restriction_exhaustive_n5() {
    for t in enumerate_labeled(5) {
        let m = median_order_exact(&t).unwrap();
        for cut in 2..=5usize {
            let prefix: Vec<usize> = m.order[..cut].to_vec();
            let mut sorted = prefix.clone();
            sorted.sort_unstable();
            let sub = t.induce(&sorted).unwrap();
            let local: Vec<usize> = prefix
                .iter()
                .map(|v| sorted.binary_search(v).unwrap())
                .collect();
            check_interval_properties(&sub, &local).unwrap();

            let suffix: Vec<usize> = m.order[5 - cut..].to_vec();
            let mut sorted = suffix.clone();
            sorted.sort_unstable();
            let sub = t.induce(&sorted).unwrap();
            let local: Vec<usize> = suffix
                .iter()
                .map(|v| sorted.binary_search(v).unwrap())
                .collect();
            check_interval_properties(&sub, &local).unwrap();
        }
    }
}

/// Degree concentration also holds on assorted larger tournaments.
#[test]
fn degree_concentration_larger_hosts() {
    use transversal_core::generate::{generate_collection, GenModel};
    for seed in 0..10u64 {
        let n = 20 + (seed as usize) * 9;
        let coll = generate_collection(n, 1, seed, GenModel::Uniform).unwrap();
        let t = coll.member(0);
        for d in 0..n {
            let low = (0..n).filter(|&v| t.in_degree(v) <= d).count();
            assert!(low <= 2 * d + 1);
        }
    }
    let t = Tournament::transitive(40);
    for d in 0..40 {
        assert!((0..40).filter(|&v| t.in_degree(v) <= d).count() <= 2 * d + 1);
    }
}
