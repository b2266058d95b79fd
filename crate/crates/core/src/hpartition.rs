//! Constructive H-partitions.
//!
//! An H(ℓ,γ)-partition splits the vertex set into ordered blocks
//! `W_1..W_r` joined through dominating separator vertices: every block
//! dominates its right separator, which dominates the next block. The
//! robust variant additionally guarantees, for each cut, a dense pair of
//! blocks across it; the good variant protects the first and last blocks
//! so absorption never touches them.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::tournament::{vertex_mask, Tournament};
use crate::{Error, Ratio, Result};

/// Ordered blocks with separators. Blocks and separators are disjoint and
/// together cover the host tournament's vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPartition {
    pub blocks: Vec<Vec<usize>>,
    pub separators: Vec<usize>,
    pub ell: usize,
    pub gamma: Ratio,
}

/// Blocks `U_0..U_{r+1}` with separators `u_0..u_r`; the inner tuple
/// (`U_1..U_r`, `u_1..u_{r-1}`) is a robust partition of the host minus the
/// protected boundary (`U_0`, `U_{r+1}`, `u_0`, `u_r`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodHPartition {
    pub blocks: Vec<Vec<usize>>,
    pub separators: Vec<usize>,
    pub ell: usize,
    pub gamma: Ratio,
}

impl GoodHPartition {
    /// The protected inner tuple as a plain partition (of the induced host).
    pub fn inner(&self) -> HPartition {
        let r_plus_2 = self.blocks.len();
        HPartition {
            blocks: self.blocks[1..r_plus_2 - 1].to_vec(),
            separators: self.separators[1..self.separators.len() - 1].to_vec(),
            ell: self.ell,
            gamma: self.gamma,
        }
    }
}

/// A vertex whose in/out split is dense on both sides: at least
/// `ceil(n^2/25)` arcs cross from in-neighborhood to out-neighborhood and
/// both degrees are at least `ceil(n/25)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedVertex {
    pub vertex: usize,
    pub in_neighbors: Vec<usize>,
    pub out_neighbors: Vec<usize>,
    pub cross_arcs: u64,
}

/// Number of arcs from the in-neighborhood of `v` to its out-neighborhood,
/// i.e. transitive triangles centered at `v`.
fn center_count(t: &Tournament, v: usize) -> u64 {
    let n = t.vertex_count();
    let out_mask = vertex_mask(n, t.out_neighbors(v).into_iter());
    let mut count = 0u64;
    for u in t.in_neighbors(v) {
        count += t.out_degree_masked(u, &out_mask) as u64;
    }
    count
}

/// Total transitive triangles: sum over vertices of C(d^+, 2); every
/// transitive triangle has exactly one vertex dominating the other two.
pub fn transitive_triangles(t: &Tournament) -> u64 {
    (0..t.vertex_count())
        .map(|v| {
            let d = t.out_degree(v) as u64;
            d * d.saturating_sub(1) / 2
        })
        .sum()
}

/// Cyclic triangles counted independently: arcs from out-neighborhood back
/// to in-neighborhood, summed over vertices, count each cyclic triangle
/// three times.
pub fn cyclic_triangles(t: &Tournament) -> u64 {
    let n = t.vertex_count();
    let total: u64 = (0..n)
        .map(|v| {
            let in_mask = vertex_mask(n, t.in_neighbors(v).into_iter());
            t.out_neighbors(v)
                .into_iter()
                .map(|u| t.out_degree_masked(u, &in_mask) as u64)
                .sum::<u64>()
        })
        .sum();
    total / 3
}

/// Picks the vertex centering the most transitive triangles (lowest label on
/// ties). For `n >= 5` the pigeonhole argument over at least `n^3/25`
/// transitive triangles delivers both density bounds.
pub fn balanced_vertex(t: &Tournament) -> Result<BalancedVertex> {
    let n = t.vertex_count();
    if n < 5 {
        return Err(Error::Size {
            what: "balanced vertex",
            limit: 5,
            actual: n,
        });
    }
    let (vertex, cross_arcs) = (0..n)
        .map(|v| (v, center_count(t, v)))
        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
        .unwrap();
    Ok(BalancedVertex {
        vertex,
        in_neighbors: t.in_neighbors(vertex),
        out_neighbors: t.out_neighbors(vertex),
        cross_arcs,
    })
}

/// First violated clause of the partition definition, with witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HPartitionViolation {
    /// Blocks and separators fail to partition the host's vertex set.
    NotAPartition {
        vertex: usize,
    },
    BlockTooSmall {
        block: usize,
        size: usize,
    },
    BlockTooLarge {
        block: usize,
        size: usize,
    },
    /// Separator `i` does not dominate as required.
    DominationBroken {
        separator: usize,
        vertex: usize,
        /// True: a block vertex fails to beat its right separator; false:
        /// the separator fails to beat a next-block vertex.
        into_separator: bool,
    },
    /// No dense block pair witnesses robustness across cut `i`.
    RobustnessMissing {
        cut: usize,
    },
    /// Good-mode only: the partition has too few blocks to protect both ends.
    TooFewBlocks,
}

impl fmt::Display for HPartitionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use HPartitionViolation::*;
        match self {
            NotAPartition { vertex } => {
                write!(f, "vertex {vertex} not covered exactly once")
            }
            BlockTooSmall { block, size } => {
                write!(f, "block {block} has {size} vertices, below gamma*ell")
            }
            BlockTooLarge { block, size } => {
                write!(f, "block {block} has {size} vertices, above ell")
            }
            DominationBroken {
                separator,
                vertex,
                into_separator,
            } => {
                if *into_separator {
                    write!(f, "vertex {vertex} does not beat separator {separator}")
                } else {
                    write!(f, "separator {separator} does not beat vertex {vertex}")
                }
            }
            RobustnessMissing { cut } => {
                write!(f, "no dense block pair across cut {cut}")
            }
            TooFewBlocks => write!(f, "good partitions need at least three blocks"),
        }
    }
}

/// Validates the partition clauses against its host tournament (whose vertex
/// set must equal blocks ∪ separators): coverage/disjointness, block size
/// bounds, separator domination, and — in robust mode — the dense-pair
/// condition across every cut by exhaustive pair scan.
pub fn validate_h_partition(
    t: &Tournament,
    partition: &HPartition,
    robust: bool,
) -> core::result::Result<(), HPartitionViolation> {
    let n = t.vertex_count();
    let mut covered = vec![0usize; n];
    for block in &partition.blocks {
        for &v in block {
            if v >= n {
                return Err(HPartitionViolation::NotAPartition { vertex: v });
            }
            covered[v] += 1;
        }
    }
    for &s in &partition.separators {
        if s >= n {
            return Err(HPartitionViolation::NotAPartition { vertex: s });
        }
        covered[s] += 1;
    }
    if partition.separators.len() + 1 != partition.blocks.len() {
        return Err(HPartitionViolation::NotAPartition { vertex: n });
    }
    if let Some(v) = (0..n).find(|&v| covered[v] != 1) {
        return Err(HPartitionViolation::NotAPartition { vertex: v });
    }

    for (i, block) in partition.blocks.iter().enumerate() {
        let size = block.len();
        if !partition.gamma.at_most(partition.ell as u64, size as u64) {
            return Err(HPartitionViolation::BlockTooSmall { block: i, size });
        }
        if size > partition.ell {
            return Err(HPartitionViolation::BlockTooLarge { block: i, size });
        }
    }

    for (i, &sep) in partition.separators.iter().enumerate() {
        for &v in &partition.blocks[i] {
            if !t.has_arc(v, sep) {
                return Err(HPartitionViolation::DominationBroken {
                    separator: i,
                    vertex: v,
                    into_separator: true,
                });
            }
        }
        for &v in &partition.blocks[i + 1] {
            if !t.has_arc(sep, v) {
                return Err(HPartitionViolation::DominationBroken {
                    separator: i,
                    vertex: v,
                    into_separator: false,
                });
            }
        }
    }

    if robust {
        let r = partition.blocks.len();
        for cut in 0..r.saturating_sub(1) {
            let mut witnessed = false;
            'pairs: for left in 0..=cut {
                for right in (cut + 1)..r {
                    let a = &partition.blocks[left];
                    let b = &partition.blocks[right];
                    let arcs = t.arcs_between(a, b);
                    // arcs >= gamma*|a|*|b| - n, exactly
                    let product = (a.len() as u64) * (b.len() as u64);
                    if partition.gamma.at_most(product, arcs + n as u64) {
                        witnessed = true;
                        break 'pairs;
                    }
                }
            }
            if !witnessed {
                return Err(HPartitionViolation::RobustnessMissing { cut });
            }
        }
    }

    Ok(())
}

/// Validates a partition whose ground set is a subset of the host's
/// vertices, by inducing the host on that ground set first.
pub fn validate_h_partition_within(
    t: &Tournament,
    partition: &HPartition,
    robust: bool,
) -> core::result::Result<(), HPartitionViolation> {
    let mut ground: Vec<usize> = partition.blocks.iter().flatten().copied().collect();
    ground.extend(partition.separators.iter().copied());
    ground.sort_unstable();
    if ground.windows(2).any(|w| w[0] == w[1]) {
        return Err(HPartitionViolation::NotAPartition { vertex: 0 });
    }
    let induced = t
        .induce(&ground)
        .map_err(|_| HPartitionViolation::NotAPartition { vertex: 0 })?;
    let relabel = |v: usize| ground.binary_search(&v).unwrap();
    let relabeled = HPartition {
        blocks: partition
            .blocks
            .iter()
            .map(|b| b.iter().map(|&v| relabel(v)).collect())
            .collect(),
        separators: partition.separators.iter().map(|&s| relabel(s)).collect(),
        ell: partition.ell,
        gamma: partition.gamma,
    };
    validate_h_partition(&induced, &relabeled, robust)
}

/// Validates a good partition: the outer tuple must satisfy the plain
/// clauses on the full host, and the inner tuple must validate robustly on
/// the host minus the protected boundary.
pub fn validate_good_h_partition(
    t: &Tournament,
    partition: &GoodHPartition,
) -> core::result::Result<(), HPartitionViolation> {
    if partition.blocks.len() < 3 {
        return Err(HPartitionViolation::TooFewBlocks);
    }
    let outer = HPartition {
        blocks: partition.blocks.clone(),
        separators: partition.separators.clone(),
        ell: partition.ell,
        gamma: partition.gamma,
    };
    validate_h_partition(t, &outer, false)?;
    validate_h_partition_within(t, &partition.inner(), true)
}

/// Builds a robust H(ℓ,γ)-partition by repeated balanced splitting: while
/// some block exceeds `ell`, split the lowest-index oversize block around a
/// balanced vertex, which becomes a new separator. The split's cross-arc
/// density seeds robustness for the new cut; existing witnesses survive with
/// the `-n` slack.
pub fn robust_h_partition(t: &Tournament, ell: usize, gamma: Ratio) -> Result<HPartition> {
    let n = t.vertex_count();
    if ell < 4 || ell > n {
        return Err(Error::Parameter("ell must satisfy 4 <= ell <= n"));
    }
    if gamma.is_zero() || gamma > Ratio::new(1, 25).unwrap() {
        return Err(Error::Parameter("gamma must lie in (0, 1/25]"));
    }

    let mut blocks: Vec<Vec<usize>> = vec![(0..n).collect()];
    let mut separators: Vec<usize> = Vec::new();

    while let Some(index) = blocks.iter().position(|b| b.len() > ell) {
        let block = blocks[index].clone();
        let sub = t.induce(&block)?;
        let split = balanced_vertex(&sub)?;
        let to_parent =
            |local: &[usize]| -> Vec<usize> { local.iter().map(|&i| block[i]).collect() };
        let left = to_parent(&split.in_neighbors);
        let right = to_parent(&split.out_neighbors);
        let pivot = block[split.vertex];
        blocks.splice(index..=index, [left, right]);
        separators.insert(index, pivot);
    }

    Ok(HPartition {
        blocks,
        separators,
        ell,
        gamma,
    })
}

/// Fractions steering the boundary split of a good partition. The strict
/// cascade (head 1/50, tail 1/50³) is what the asymptotic construction
/// uses; desk-scale instances usually need coarser values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryFractions {
    /// Fraction of the first block selected (by out-degree into the dense
    /// partner block) before balanced splitting.
    pub head: Ratio,
    /// Fraction of the last block selected by in-degree likewise.
    pub tail: Ratio,
}

impl BoundaryFractions {
    pub fn strict() -> Self {
        BoundaryFractions {
            head: Ratio::new(1, 50).unwrap(),
            tail: Ratio::new(1, 125_000).unwrap(),
        }
    }

    pub fn relaxed() -> Self {
        BoundaryFractions {
            head: Ratio::new(1, 4).unwrap(),
            tail: Ratio::new(1, 4).unwrap(),
        }
    }
}

/// Why a good-partition construction stopped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GoodPartitionFailure {
    Parameter(Error),
    /// The robust partition has a single block; nothing to protect.
    SingleBlock,
    /// The selected boundary pool is empty at the configured fraction.
    PoolEmpty {
        head: bool,
        selected: usize,
    },
    /// The boundary pool is too small to split around a balanced vertex.
    PoolTooSmall {
        head: bool,
        selected: usize,
    },
    /// The assembled partition failed validation.
    Invalid(HPartitionViolation),
}

impl fmt::Display for GoodPartitionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GoodPartitionFailure::*;
        match self {
            Parameter(e) => write!(f, "{e}"),
            SingleBlock => write!(f, "robust partition has a single block"),
            PoolEmpty { head, .. } => {
                write!(f, "{} pool empty", if *head { "V_1" } else { "V_r" })
            }
            PoolTooSmall { head, selected } => write!(
                f,
                "{} pool has {selected} vertices, need 5",
                if *head { "V_1" } else { "V_r" }
            ),
            Invalid(v) => write!(f, "validation failed: {v}"),
        }
    }
}

/// Best-effort good H(ℓ,γ)-partition: build a robust partition at γ=1/25,
/// locate the dense partners of the first and last blocks, select a
/// high-degree pool inside each boundary block at the configured fraction,
/// and split the boundary blocks around balanced vertices of those pools.
/// The construction's guarantee is asymptotic; the assembled partition is
/// validated before return.
pub fn good_h_partition(
    t: &Tournament,
    ell: usize,
    gamma: Ratio,
    fractions: BoundaryFractions,
) -> core::result::Result<GoodHPartition, GoodPartitionFailure> {
    let n = t.vertex_count() as u64;
    if gamma.is_zero() || gamma > Ratio::new(1, 25).unwrap() {
        return Err(GoodPartitionFailure::Parameter(Error::Parameter(
            "gamma must lie in (0, 1/25]",
        )));
    }
    let construction_gamma = Ratio::new(1, 25).unwrap();
    let robust =
        robust_h_partition(t, ell, construction_gamma).map_err(GoodPartitionFailure::Parameter)?;
    let r = robust.blocks.len();
    if r < 2 {
        return Err(GoodPartitionFailure::SingleBlock);
    }

    let dense = |a: &[usize], b: &[usize]| -> bool {
        let arcs = t.arcs_between(a, b);
        let product = (a.len() as u64) * (b.len() as u64);
        construction_gamma.at_most(product, arcs + n)
    };

    // p: largest partner of the first block; q: smallest partner of the last.
    let p = (1..r)
        .rev()
        .find(|&p| dense(&robust.blocks[0], &robust.blocks[p]))
        .ok_or(GoodPartitionFailure::PoolEmpty {
            head: true,
            selected: 0,
        })?;
    let q = (0..r - 1)
        .find(|&q| dense(&robust.blocks[q], &robust.blocks[r - 1]))
        .ok_or(GoodPartitionFailure::PoolEmpty {
            head: false,
            selected: 0,
        })?;

    // Split one boundary block around a balanced vertex of its selected pool.
    let split_boundary =
        |block: &[usize],
         partner: &[usize],
         fraction: Ratio,
         outgoing: bool,
         head: bool|
         -> core::result::Result<(Vec<usize>, usize, Vec<usize>), GoodPartitionFailure> {
            let pool_size = fraction.floor_times(block.len() as u64) as usize;
            if pool_size == 0 {
                return Err(GoodPartitionFailure::PoolEmpty { head, selected: 0 });
            }
            let partner_mask = vertex_mask(t.vertex_count(), partner.iter().copied());
            let mut ranked: Vec<usize> = block.to_vec();
            ranked.sort_by_key(|&v| {
                let deg = if outgoing {
                    t.out_degree_masked(v, &partner_mask)
                } else {
                    partner.iter().filter(|&&u| t.has_arc(u, v)).count()
                };
                (core::cmp::Reverse(deg), v)
            });
            let pool = &ranked[..pool_size];
            if pool.len() < 5 {
                return Err(GoodPartitionFailure::PoolTooSmall {
                    head,
                    selected: pool.len(),
                });
            }
            let mut sorted_pool = pool.to_vec();
            sorted_pool.sort_unstable();
            let sub = t
                .induce(&sorted_pool)
                .map_err(GoodPartitionFailure::Parameter)?;
            let balanced = balanced_vertex(&sub).map_err(GoodPartitionFailure::Parameter)?;
            let pivot = sorted_pool[balanced.vertex];
            // split the whole block by its arcs with the pivot
            let mut before = Vec::new();
            let mut after = Vec::new();
            for &v in block {
                if v == pivot {
                    continue;
                }
                if t.has_arc(v, pivot) {
                    before.push(v);
                } else {
                    after.push(v);
                }
            }
            Ok((before, pivot, after))
        };

    let (u0, sep0, u1) = split_boundary(
        &robust.blocks[0],
        &robust.blocks[p],
        fractions.head,
        true,
        true,
    )?;
    // In-degree pool of the last block looks back at U_q — which is the new
    // U_1 when q = 0, otherwise the untouched block q.
    let uq: &[usize] = if q == 0 { &u1 } else { &robust.blocks[q] };
    let (ur, sep_r, ur1) = split_boundary(&robust.blocks[r - 1], uq, fractions.tail, false, false)?;

    let mut blocks = Vec::with_capacity(r + 2);
    blocks.push(u0);
    blocks.push(u1);
    blocks.extend(robust.blocks[1..r - 1].iter().cloned());
    blocks.push(ur);
    blocks.push(ur1);
    let mut separators = Vec::with_capacity(r + 1);
    separators.push(sep0);
    separators.extend(robust.separators.iter().copied());
    separators.push(sep_r);

    let good = GoodHPartition {
        blocks,
        separators,
        ell,
        gamma,
    };
    validate_good_h_partition(t, &good).map_err(GoodPartitionFailure::Invalid)?;
    Ok(good)
}
