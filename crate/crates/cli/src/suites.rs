//! Verification suites: each runs a family of checks and counts violations.
//! The `verify` subcommand and the acceptance tests share these entry
//! points, so the CLI surface and the test gate exercise identical code.

use serde::Serialize;

use transversal_core::embedding::validate_embedding;
use transversal_core::generate::{enumerate_labeled, generate_collection, GenModel, SplitMix64};
use transversal_core::hpartition::{
    balanced_vertex, cyclic_triangles, robust_h_partition, transitive_triangles,
    validate_h_partition,
};
use transversal_core::oracle::brute_force_oracle;
use transversal_core::order::{
    check_interval_properties, embed_in_transitive, median_order_exact, near_directed_pair,
    skip_vertex_path,
};
use transversal_core::pattern::{do_decompose, validate_do, OrientationPattern};
use transversal_core::solver::{
    find_transversal_cycle, find_transversal_path, Pruning, SearchOptions, SearchOutcome,
};
use transversal_core::tournament::{Tournament, TournamentCollection};
use transversal_core::Ratio;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: u64,
    pub violations: u64,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.into(),
            checks: 0,
            violations: 0,
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, note: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations += 1;
            if self.notes.len() < 32 {
                self.notes.push(note());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Median-order toolbox over every labeled 5-vertex tournament: degree
/// concentration, directed Hamilton path, vertex-skip rewiring, the
/// near-directed pair, and transitive embeddings of all length-4 patterns.
/// All permutations of `0..5` attaining the maximum forward-arc count.
fn all_median_orders_n5(t: &Tournament) -> Vec<[usize; 5]> {
    let mut orders: Vec<[usize; 5]> = Vec::new();
    let mut best = 0u64;
    let mut perm = [0usize, 1, 2, 3, 4];
    fn visit(
        perm: &mut [usize; 5],
        k: usize,
        t: &Tournament,
        best: &mut u64,
        orders: &mut Vec<[usize; 5]>,
    ) {
        if k == 5 {
            let value = transversal_core::order::forward_arcs(t, perm);
            match value.cmp(best) {
                core::cmp::Ordering::Greater => {
                    *best = value;
                    orders.clear();
                    orders.push(*perm);
                }
                core::cmp::Ordering::Equal => orders.push(*perm),
                core::cmp::Ordering::Less => {}
            }
            return;
        }
        for i in k..5 {
            perm.swap(k, i);
            visit(perm, k + 1, t, best, orders);
            perm.swap(k, i);
        }
    }
    visit(&mut perm, 0, t, &mut best, &mut orders);
    orders
}

pub fn props_suite() -> SuiteReport {
    let mut report = SuiteReport::new("props");
    for (index, t) in enumerate_labeled(5).enumerate() {
        for d in 0..5usize {
            let low_in = (0..5).filter(|&v| t.in_degree(v) <= d).count();
            let low_out = (0..5).filter(|&v| t.out_degree(v) <= d).count();
            report.check(low_in <= 2 * d + 1 && low_out <= 2 * d + 1, || {
                format!("degree concentration failed on #{index} at d={d}")
            });
        }
        // the subset-DP order must attain the enumerated maximum
        let m = median_order_exact(&t).unwrap();
        let maximizers = all_median_orders_n5(&t);
        report.check(
            transversal_core::order::forward_arcs(&t, &maximizers[0]) == m.forward_arcs,
            || format!("subset DP missed the optimum on #{index}"),
        );
        // every maximizing order is a directed Hamilton path, passes the
        // interval check, and supports the vertex-skip rewiring
        for order in &maximizers {
            report.check(
                order.windows(2).all(|w| t.has_arc(w[0], w[1]))
                    && check_interval_properties(&t, order).is_ok(),
                || format!("a median order of #{index} is not a valid backbone"),
            );
            let skip_ok = skip_vertex_path(&t, order)
                .map(|p| {
                    p.windows(2).all(|w| t.has_arc(w[0], w[1]))
                        && !p.contains(&order[2])
                        && p[0] == order[0]
                        && p[3] == order[4]
                })
                .unwrap_or(false);
            report.check(skip_ok, || format!("vertex skip failed on #{index}"));
        }
        let pair_ok = near_directed_pair(&t)
            .map(|pair| {
                pair.directed[0] == pair.near[0]
                    && pair.directed.windows(2).all(|w| t.has_arc(w[0], w[1]))
                    && pair.near.windows(2).enumerate().all(|(i, w)| {
                        if i == pair.backward_arc {
                            t.has_arc(w[1], w[0])
                        } else {
                            t.has_arc(w[0], w[1])
                        }
                    })
            })
            .unwrap_or(false);
        report.check(pair_ok, || format!("near-directed pair failed on #{index}"));
    }
    // every orientation embeds in the transitive tournament
    let transitive = Tournament::transitive(5);
    for bits in 0..16u64 {
        let pattern = OrientationPattern::path_from_bits(bits, 4);
        let seq = embed_in_transitive(&pattern, 5).unwrap();
        report.check(
            (0..4).all(|i| transitive.has_oriented(seq[i], seq[i + 1], pattern.arc(i))),
            || format!("transitive embedding failed for {pattern}"),
        );
    }
    report
}

/// Rainbow short paths: the two-color patterns over ordered pairs of labeled
/// 5-vertex tournaments (all 2^20 pairs when exhaustive, a seeded sample
/// otherwise), plus single arcs over all single tournaments.
pub fn short_paths_suite(exhaustive: bool, sample: u64, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("short-paths");
    let all: Vec<Tournament> = enumerate_labeled(5).collect();
    let plus: OrientationPattern = "+".parse().unwrap();
    for t in &all {
        let coll = TournamentCollection::new(vec![t.clone()]).unwrap();
        let ok = transversal_core::broom::rainbow_short_path(&coll, &plus)
            .map(|emb| validate_embedding(&coll, &plus, &emb).is_ok())
            .unwrap_or(false);
        report.check(ok, || "single-arc case failed".into());
    }
    let patterns: Vec<OrientationPattern> = vec!["++".parse().unwrap(), "+-".parse().unwrap()];
    let run_pair = |i: usize, j: usize, report: &mut SuiteReport| {
        let coll = TournamentCollection::new(vec![all[i].clone(), all[j].clone()]).unwrap();
        for pattern in &patterns {
            let ok = transversal_core::broom::rainbow_short_path(&coll, pattern)
                .map(|emb| validate_embedding(&coll, pattern, &emb).is_ok())
                .unwrap_or(false);
            report.check(ok, || format!("pair ({i}, {j}) failed on {pattern}"));
        }
    };
    if exhaustive {
        for i in 0..all.len() {
            for j in 0..all.len() {
                run_pair(i, j, &mut report);
            }
        }
    } else {
        let mut rng = SplitMix64::new(seed);
        for _ in 0..sample {
            let i = rng.below(all.len() as u64) as usize;
            let j = rng.below(all.len() as u64) as usize;
            run_pair(i, j, &mut report);
        }
    }
    report
}

/// Balanced-vertex density bounds: exhaustive at five vertices, seeded
/// samples at the given sizes. Both inequalities are asserted exactly in
/// their integer-rounded form.
pub fn balanced_vertex_suite(sizes: &[usize], trials_per_size: u64, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("balanced-vertex");
    let bound_ok = |t: &Tournament| -> bool {
        let n = t.vertex_count() as u64;
        match balanced_vertex(t) {
            Ok(b) => {
                let min_degree = b.in_neighbors.len().min(b.out_neighbors.len()) as u64;
                b.cross_arcs >= n * n / 25 + u64::from(!(n * n).is_multiple_of(25))
                    && min_degree >= n / 25 + u64::from(!n.is_multiple_of(25))
            }
            Err(_) => false,
        }
    };
    for t in enumerate_labeled(5) {
        report.check(bound_ok(&t), || "bound failed on a 5-vertex host".into());
    }
    let mut rng = SplitMix64::new(seed);
    for &n in sizes {
        for _ in 0..trials_per_size {
            let t = transversal_core::generate::generate_tournament(n, GenModel::Uniform, &mut rng)
                .unwrap();
            report.check(bound_ok(&t), || format!("bound failed at n={n}"));
        }
    }
    report
}

/// Robust partitions on seeded instances: construct, validate all clauses,
/// and cross-check the two triangle counts against the binomial total.
pub fn hpartition_suite(trials: u64, n_max: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("hpartition");
    let gamma = Ratio::new(1, 25).unwrap();
    let mut rng = SplitMix64::new(seed);
    for _ in 0..trials {
        let n = 10 + rng.below((n_max - 9) as u64) as usize;
        let ell = 4 + rng.below((n - 3) as u64) as usize;
        let t = transversal_core::generate::generate_tournament(n, GenModel::Uniform, &mut rng)
            .unwrap();
        let ok = robust_h_partition(&t, ell, gamma)
            .map(|p| validate_h_partition(&t, &p, true).is_ok())
            .unwrap_or(false);
        report.check(ok, || {
            format!("robust partition failed at n={n}, ell={ell}")
        });
        let total = (n as u64) * (n as u64 - 1) * (n as u64 - 2) / 6;
        report.check(
            transitive_triangles(&t) + cyclic_triangles(&t) == total,
            || format!("triangle identity failed at n={n}"),
        );
    }
    report
}

/// Directed-oscillating decomposition totality over every pattern up to the
/// given length.
pub fn patterns_suite(max_len: usize) -> SuiteReport {
    let mut report = SuiteReport::new("patterns");
    for len in 0..=max_len {
        for bits in 0..(1u64 << len) {
            let pattern = OrientationPattern::path_from_bits(bits, len);
            let ok = do_decompose(&pattern)
                .map(|d| validate_do(&pattern, &d).is_ok())
                .unwrap_or(false);
            report.check(ok, || format!("decomposition failed on {pattern}"));
        }
    }
    report
}

/// Broom constructors on seeded instances; every output revalidates.
pub fn brooms_suite(trials: u64, seed: u64) -> SuiteReport {
    use transversal_core::broom::{
        chain_brooms, directed_broom, oscillating_broom_end, oscillating_broom_step,
        validate_near_rainbow, ChainMode, EndBroom,
    };
    let mut report = SuiteReport::new("brooms");
    let mut rng = SplitMix64::new(seed);

    for trial in 0..trials {
        // directed brooms
        let n = 40 + rng.below(40) as usize;
        let coll = generate_collection(n, 1, rng.next_u64(), GenModel::Uniform).unwrap();
        let ok = directed_broom(coll.member(0), 3, 2, 3)
            .map(|b| b.validate_structure(coll.member(0)).is_ok())
            .unwrap_or(false);
        report.check(ok, || format!("directed broom failed on trial {trial}"));

        // one oscillating step
        let coll = generate_collection(400, 3, rng.next_u64(), GenModel::Uniform).unwrap();
        let v1: Vec<usize> = (0..50).collect();
        let v2: Vec<usize> = (50..350).collect();
        let step_patterns = ["+-+", "-+-", "++-", "--+"];
        let pattern: OrientationPattern = step_patterns[(trial % 4) as usize].parse().unwrap();
        let ok = oscillating_broom_step(&coll, &v1, &v2, &pattern, &[0, 1, 2])
            .map(|(b, c)| validate_near_rainbow(&b, &c, &coll, &[0, 1, 2], &[0, 1, 2]).is_ok())
            .unwrap_or(false);
        report.check(ok, || format!("oscillating step failed on trial {trial}"));

        // one limited end
        let coll = generate_collection(80, 2, rng.next_u64(), GenModel::Uniform).unwrap();
        let v1: Vec<usize> = (1..51).collect();
        let pattern: OrientationPattern = ["+-", "-+"][(trial % 2) as usize].parse().unwrap();
        let ok = match oscillating_broom_end(&coll, &v1, 0, &pattern, &[0, 1], 0) {
            Ok(EndBroom::Full(b, c)) => {
                validate_near_rainbow(&b, &c, &coll, &[0, 1], &[0, 1]).is_ok()
            }
            Ok(EndBroom::Truncated(b, c)) => {
                validate_near_rainbow(&b, &c, &coll, &[0, 1], &[1]).is_ok()
            }
            Err(_) => false,
        };
        report.check(ok, || format!("limited end failed on trial {trial}"));
    }

    // a couple of chains per run (they allocate thousand-vertex hosts)
    for (pattern, mode, v2_len) in [
        ("+-+-+-", ChainMode::WideEnd, 300),
        ("+-+-", ChainMode::ToVertexSet, 2),
    ] {
        let pattern: OrientationPattern = pattern.parse().unwrap();
        let colors: Vec<usize> = (0..pattern.len()).collect();
        let coll =
            generate_collection(1100, pattern.len(), rng.next_u64(), GenModel::Uniform).unwrap();
        let v1: Vec<usize> = (0..50).collect();
        let v2: Vec<usize> = (600..600 + v2_len).collect();
        let ok = chain_brooms(&coll, &v1, &v2, &pattern, mode, &colors)
            .map(|(b, c)| validate_near_rainbow(&b, &c, &coll, &colors, &colors).is_ok())
            .unwrap_or(false);
        report.check(ok, || format!("chain failed for {pattern}"));
    }
    report
}

/// Solver/oracle equivalence with pruning on and off: full Hamilton sweeps
/// on seeded collections, paths on odd trials and cycles on even ones.
pub fn solver_oracle_suite(trials: u64, n_max: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("solver-oracle");
    let n_max = n_max.clamp(2, 6);
    let mut rng = SplitMix64::new(seed);
    let hall = SearchOptions::default();
    let naive = SearchOptions {
        pruning: Pruning::None,
        ..SearchOptions::default()
    };
    for trial in 0..trials {
        let cycle = trial % 2 == 0;
        let n = if cycle {
            3 + rng.below((n_max - 2) as u64) as usize
        } else {
            2 + rng.below((n_max - 1) as u64) as usize
        };
        let m = if cycle { n } else { n - 1 };
        let coll = generate_collection(n, m, rng.next_u64(), GenModel::Uniform).unwrap();
        let arcs = if cycle { n } else { n - 1 };
        for bits in 0..(1u64 << arcs) {
            let base = OrientationPattern::path_from_bits(bits, arcs);
            let (fast, slow, fast_naive, pattern) = if cycle {
                let pattern = OrientationPattern::cycle(base.arcs().to_vec()).unwrap();
                (
                    find_transversal_cycle(&coll, &pattern, &hall).unwrap(),
                    brute_force_oracle(&coll, &pattern).unwrap(),
                    find_transversal_cycle(&coll, &pattern, &naive).unwrap(),
                    pattern,
                )
            } else {
                (
                    find_transversal_path(&coll, &base, &hall).unwrap(),
                    brute_force_oracle(&coll, &base).unwrap(),
                    find_transversal_path(&coll, &base, &naive).unwrap(),
                    base,
                )
            };
            report.check(fast.is_found() == slow.is_found(), || {
                format!("oracle divergence on trial {trial}, pattern {pattern}")
            });
            report.check(fast == fast_naive, || {
                format!("pruning divergence on trial {trial}, pattern {pattern}")
            });
            if let SearchOutcome::Found(emb) = &fast {
                report.check(validate_embedding(&coll, &pattern, emb).is_ok(), || {
                    format!("unsound witness on trial {trial}, pattern {pattern}")
                });
            }
        }
    }
    report
}
