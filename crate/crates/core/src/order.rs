//! Median orders and the constructions they support.
//!
//! A median order maximizes the number of forward arcs. Exact orders come
//! from a subset dynamic program (`O(2^n · n)`, capped); large instances fall
//! back to a deterministic relocation local search. Orders passing the
//! interval degree check (`d^+(v_i, I) >= (|I|-1)/2` at the left end of every
//! interval and symmetrically at the right) support the vertex-skip rewiring,
//! the near-directed path pair, and tip selection for brooms.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::pattern::{Orientation, OrientationPattern};
use crate::tournament::Tournament;
use crate::{Error, Result};

/// Largest `n` for which the exact subset DP runs (2^22 states).
pub const EXACT_MEDIAN_CAP: usize = 22;

/// Largest `n` for exact maximum transitive subtournament search.
pub const EXACT_TRANSITIVE_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MedianOrder {
    pub order: Vec<usize>,
    pub forward_arcs: u64,
    /// True when the order is certified globally maximal.
    pub exact: bool,
}

/// Forward-arc count of an arbitrary order.
pub fn forward_arcs(t: &Tournament, order: &[usize]) -> u64 {
    let mut count = 0u64;
    for i in 0..order.len() {
        for j in (i + 1)..order.len() {
            if t.has_arc(order[i], order[j]) {
                count += 1;
            }
        }
    }
    count
}

/// Globally maximal order by subset DP; among maximizers, returns the
/// lexicographically smallest permutation. `n` capped at
/// [`EXACT_MEDIAN_CAP`]; larger instances should use [`median_order_local`].
pub fn median_order_exact(t: &Tournament) -> Result<MedianOrder> {
    let n = t.vertex_count();
    if n > EXACT_MEDIAN_CAP {
        return Err(Error::Size {
            what: "exact median order (use median_order_local)",
            limit: EXACT_MEDIAN_CAP,
            actual: n,
        });
    }
    if n == 0 {
        return Ok(MedianOrder {
            order: Vec::new(),
            forward_arcs: 0,
            exact: true,
        });
    }

    // in_mask[v] = bitmask of in-neighbors of v
    let mut in_mask = vec![0u32; n];
    for (v, mask) in in_mask.iter_mut().enumerate() {
        for u in 0..n {
            if u != v && t.has_arc(u, v) {
                *mask |= 1 << u;
            }
        }
    }
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };

    // dp[s] = max forward arcs of an internal ordering of subset s,
    // built by appending one vertex to a prefix set at a time.
    let mut dp = vec![0u16; 1usize << n];
    for s in 1..=full {
        let mut best = 0u16;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = s & !(1u32 << v);
            let gain = (in_mask[v] & prev).count_ones() as u16;
            best = best.max(dp[prev as usize] + gain);
        }
        dp[s as usize] = best;
    }
    let optimum = dp[full as usize] as u64;

    // cross(s) = arcs from s into its complement; all such arcs are forward
    // for any order placing s first.
    let cross = |s: u32| -> u64 {
        let comp = full & !s;
        let mut total = 0u64;
        let mut rest = comp;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            total += (in_mask[v] & s).count_ones() as u64;
        }
        total
    };

    // Greedy front reconstruction: the smallest next vertex that keeps an
    // optimal completion reachable.
    let mut order = Vec::with_capacity(n);
    let mut placed: u32 = 0;
    let mut internal: u64 = 0;
    for _ in 0..n {
        for (v, &mask) in in_mask.iter().enumerate() {
            if placed >> v & 1 == 1 {
                continue;
            }
            let next = placed | 1 << v;
            let gained = internal + (mask & placed).count_ones() as u64;
            let remainder = dp[(full & !next) as usize] as u64;
            if gained + cross(next) + remainder == optimum {
                order.push(v);
                placed = next;
                internal = gained;
                break;
            }
        }
    }
    debug_assert_eq!(order.len(), n);

    Ok(MedianOrder {
        order,
        forward_arcs: optimum,
        exact: true,
    })
}

/// Deterministic relocation local search: start from the identity order,
/// scan vertices in increasing label, apply the first improving relocation,
/// repeat to fixpoint. The result is locally maximal under single-vertex
/// relocation, which already implies the interval degree properties.
pub fn median_order_local(t: &Tournament) -> MedianOrder {
    let n = t.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();

    loop {
        let mut improved = false;
        'scan: for label in 0..n {
            let pos = order.iter().position(|&v| v == label).unwrap();
            // gain of moving order[pos] to sit just before position q (q < pos)
            // or just after position q (q > pos), accumulated incrementally
            let mut gain: i64 = 0;
            // leftward moves, nearest first
            for q in (0..pos).rev() {
                let other = order[q];
                // v jumps over `other`: arcs v->other become forward,
                // other->v become backward
                gain += if t.has_arc(label, other) { 1 } else { -1 };
                if gain > 0 {
                    let v = order.remove(pos);
                    order.insert(q, v);
                    improved = true;
                    break 'scan;
                }
            }
            let mut gain: i64 = 0;
            for q in (pos + 1)..n {
                let other = order[q];
                gain += if t.has_arc(other, label) { 1 } else { -1 };
                if gain > 0 {
                    let v = order.remove(pos);
                    order.insert(q, v);
                    improved = true;
                    break 'scan;
                }
            }
        }
        if !improved {
            break;
        }
    }

    let value = forward_arcs(t, &order);
    MedianOrder {
        order,
        forward_arcs: value,
        exact: false,
    }
}

/// Violation of the interval degree properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntervalViolation {
    /// True: left-endpoint out-degree check failed; false: right-endpoint
    /// in-degree check.
    pub at_left_end: bool,
    /// Interval as positions `[start, end]` into the order (inclusive).
    pub start: usize,
    pub end: usize,
    pub degree: usize,
}

impl fmt::Display for IntervalViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = if self.at_left_end { "out" } else { "in" };
        write!(
            f,
            "interval [{}, {}]: {side}-degree {} below ({})/2",
            self.start,
            self.end,
            self.degree,
            self.end - self.start
        )
    }
}

/// Checks `2·d^+(v_i, I) >= |I|-1` and `2·d^-(v_j, I) >= |I|-1` for every
/// interval `I = [i, j]` of the order; reports the first violation in
/// lexicographic `(i, j)` interval order. `O(n^2)`.
pub fn check_interval_properties(
    t: &Tournament,
    order: &[usize],
) -> core::result::Result<(), IntervalViolation> {
    let n = order.len();
    // out_deg[i][j] = d^+(v_i, {v_i..v_j}), in_deg[j][i] = d^-(v_j, {v_i..v_j})
    let mut out_deg = vec![0u32; n * n];
    let mut in_deg = vec![0u32; n * n];
    for i in 0..n {
        let mut acc = 0u32;
        for j in (i + 1)..n {
            if t.has_arc(order[i], order[j]) {
                acc += 1;
            }
            out_deg[i * n + j] = acc;
        }
    }
    for j in 0..n {
        let mut acc = 0u32;
        for i in (0..j).rev() {
            if t.has_arc(order[i], order[j]) {
                acc += 1;
            }
            in_deg[j * n + i] = acc;
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let need = (j - i) as u32; // |I| - 1
            if 2 * out_deg[i * n + j] < need {
                return Err(IntervalViolation {
                    at_left_end: true,
                    start: i,
                    end: j,
                    degree: out_deg[i * n + j] as usize,
                });
            }
            if 2 * in_deg[j * n + i] < need {
                return Err(IntervalViolation {
                    at_left_end: false,
                    start: i,
                    end: j,
                    degree: in_deg[j * n + i] as usize,
                });
            }
        }
    }
    Ok(())
}

/// Realizes a path pattern of length `n-1` inside the canonical transitive
/// tournament on `n` vertices (`i→j` iff `i < j`). Two-pointer construction;
/// valid by construction. Returns the vertex labels in path order.
pub fn embed_in_transitive(pattern: &OrientationPattern, n: usize) -> Result<Vec<usize>> {
    if pattern.is_cyclic() {
        return Err(Error::Parameter(
            "transitive embedding takes a path pattern",
        ));
    }
    if pattern.len() + 1 != n {
        return Err(Error::Parameter(
            "pattern length must be one less than the vertex count",
        ));
    }
    let mut lo = 0usize;
    let mut hi = n - 1;
    let mut seq = Vec::with_capacity(n);
    for i in 0..pattern.len() {
        match pattern.arc(i) {
            Orientation::Forward => {
                seq.push(lo);
                lo += 1;
            }
            Orientation::Backward => {
                seq.push(hi);
                hi -= 1;
            }
        }
    }
    seq.push(lo);
    Ok(seq)
}

/// Vertex-skip rewiring on five vertices: given an order `x1..x5` passing the
/// interval check, returns a directed path from `x1` to `x5` avoiding `x3`.
pub fn skip_vertex_path(t: &Tournament, order: &[usize]) -> Result<[usize; 4]> {
    if t.vertex_count() != 5 || order.len() != 5 {
        return Err(Error::Size {
            what: "vertex-skip rewiring",
            limit: 5,
            actual: order.len(),
        });
    }
    if check_interval_properties(t, order).is_err() {
        return Err(Error::InvalidOrder(
            "order fails the interval degree properties",
        ));
    }
    let (x1, x2, x4, x5) = (order[0], order[1], order[3], order[4]);
    if t.has_arc(x2, x4) {
        Ok([x1, x2, x4, x5])
    } else {
        Ok([x1, x4, x2, x5])
    }
}

/// A directed Hamilton path and a Hamilton path differing from a directed
/// one in exactly one arc, sharing their first vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NearDirectedPair {
    pub directed: Vec<usize>,
    pub near: Vec<usize>,
    /// Arc index of the single backward arc in `near`.
    pub backward_arc: usize,
}

/// Builds the pair from a median order (exact when within cap): find
/// `i ∈ {n-3, n-2}` with `v_i → v_n`, then `j ∈ [i+1, n]` with
/// `v_{i-1} → v_j`; the rerouted path is
/// `v_1..v_{i-1} v_j..v_n v_i..v_{j-1}` with the lone backward arc `v_n v_i`.
pub fn near_directed_pair(t: &Tournament) -> Result<NearDirectedPair> {
    let n = t.vertex_count();
    if n < 5 {
        return Err(Error::Size {
            what: "near-directed pair",
            limit: 5,
            actual: n,
        });
    }
    let order = if n <= EXACT_MEDIAN_CAP {
        median_order_exact(t)?.order
    } else {
        median_order_local(t).order
    };
    let v = |one_based: usize| order[one_based - 1];

    let i = [n - 3, n - 2]
        .into_iter()
        .find(|&i| t.has_arc(v(i), v(n)))
        .ok_or(Error::Construction(
            "no free jump-off vertex near the end of the order",
        ))?;
    let j = ((i + 1)..=n)
        .find(|&j| t.has_arc(v(i - 1), v(j)))
        .ok_or(Error::Construction("no reentry arc from the order"))?;

    let directed: Vec<usize> = order.clone();
    let mut near = Vec::with_capacity(n);
    near.extend((1..i).map(v));
    near.extend((j..=n).map(v));
    near.extend((i..j).map(v));
    let backward_arc = (i - 1) + (n - j); // position of the arc v_n v_i

    Ok(NearDirectedPair {
        directed,
        near,
        backward_arc,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransitiveMode {
    Exact,
    Greedy,
}

/// Vertex set inducing a transitive subtournament, returned in dominance
/// order (each vertex beats all later ones). Exact mode: maximum size by
/// branch and bound, capped at [`EXACT_TRANSITIVE_CAP`]. Greedy mode:
/// repeatedly take a maximum-out-degree vertex and recurse into its
/// out-neighborhood, guaranteeing size >= floor(log2 n) + 1.
pub fn largest_transitive(t: &Tournament, mode: TransitiveMode) -> Result<Vec<usize>> {
    let n = t.vertex_count();
    match mode {
        TransitiveMode::Greedy => {
            let mut pool: Vec<usize> = (0..n).collect();
            let mut chain = Vec::new();
            while !pool.is_empty() {
                let mask = crate::tournament::vertex_mask(n, pool.iter().copied());
                let best = pool
                    .iter()
                    .copied()
                    .max_by_key(|&v| (t.out_degree_masked(v, &mask), core::cmp::Reverse(v)))
                    .unwrap();
                chain.push(best);
                pool.retain(|&v| v != best && t.has_arc(best, v));
            }
            Ok(chain)
        }
        TransitiveMode::Exact => {
            if n > EXACT_TRANSITIVE_CAP {
                return Err(Error::Size {
                    what: "exact maximum transitive subtournament",
                    limit: EXACT_TRANSITIVE_CAP,
                    actual: n,
                });
            }
            let mut best: Vec<usize> = Vec::new();
            let mut chain: Vec<usize> = Vec::new();
            fn extend(t: &Tournament, from: usize, chain: &mut Vec<usize>, best: &mut Vec<usize>) {
                let n = t.vertex_count();
                if chain.len() + (n - from) <= best.len() {
                    return; // cannot beat the incumbent
                }
                for v in from..n {
                    // insert v at its unique compatible position, if any:
                    // in-neighbors of v inside the chain must form a prefix
                    let ins = chain.iter().filter(|&&u| t.has_arc(u, v)).count();
                    if chain[..ins].iter().all(|&u| t.has_arc(u, v))
                        && chain[ins..].iter().all(|&u| t.has_arc(v, u))
                    {
                        chain.insert(ins, v);
                        if chain.len() > best.len() {
                            *best = chain.clone();
                        }
                        extend(t, v + 1, chain, best);
                        chain.remove(ins);
                    }
                }
            }
            extend(t, 0, &mut chain, &mut best);
            Ok(best)
        }
    }
}
