//! Deterministic seeded instance generation.
//!
//! The generator is a splitmix64 stream, specified bit-exactly so ports in
//! other languages reproduce instances:
//!
//! ```text
//! next(state): state += 0x9E3779B97F4A7C15
//!              z = state
//!              z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//!              z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//!              return z ^ (z >> 31)
//! ```
//!
//! Tournaments draw one `next` value per unordered pair, pairs `(u,v)` with
//! `u < v` in lexicographic order; colors are generated sequentially from one
//! stream seeded with the instance seed.

use alloc::vec::Vec;

use crate::tournament::{Tournament, TournamentCollection};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from `0..bound` by modulo; bias is irrelevant for the
    /// instance-sampling uses here and keeps the stream layout trivial.
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }
}

/// Orientation models for generated tournaments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenModel {
    /// Each pair oriented forward with probability 1/2 (one draw per pair,
    /// low bit decides).
    Uniform,
    /// The transitive tournament `i→j` iff `i < j` (no draws).
    Transitive,
    /// Rotational tournament: `i→j` iff `(j-i) mod n` lies in the difference
    /// set — nonzero quadratic residues when `n` is a prime ≡ 3 (mod 4),
    /// `{1..(n-1)/2}` for other odd `n`. Requires odd `n`; no draws.
    QuadraticResidue,
    /// Each pair oriented forward with probability `forward_bp`/10000
    /// (draw modulo 10000 per pair).
    Bias { forward_bp: u32 },
}

fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2usize;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn rotational_difference_set(n: usize) -> Result<Vec<bool>> {
    if n.is_multiple_of(2) {
        return Err(Error::Parameter(
            "rotational model needs an odd vertex count",
        ));
    }
    let mut fwd = alloc::vec![false; n];
    if is_prime(n) && n % 4 == 3 {
        for x in 1..n {
            fwd[(x * x) % n] = true;
        }
    } else {
        fwd[1..=(n - 1) / 2].fill(true);
    }
    Ok(fwd)
}

pub fn generate_tournament(n: usize, model: GenModel, rng: &mut SplitMix64) -> Result<Tournament> {
    if n == 0 {
        return Err(Error::Parameter("vertex count must be positive"));
    }
    match model {
        GenModel::Uniform => Ok(Tournament::from_fn(n, |_, _| rng.next_u64() & 1 == 1)),
        GenModel::Transitive => Ok(Tournament::transitive(n)),
        GenModel::QuadraticResidue => {
            let fwd = rotational_difference_set(n)?;
            Ok(Tournament::from_fn(n, |u, v| fwd[(v - u) % n]))
        }
        GenModel::Bias { forward_bp } => {
            if forward_bp > 10_000 {
                return Err(Error::Parameter("bias must be at most 10000 bp"));
            }
            Ok(Tournament::from_fn(n, |_, _| {
                rng.below(10_000) < forward_bp as u64
            }))
        }
    }
}

/// `m` tournaments on `n` shared vertices, colors generated sequentially
/// from one stream seeded with `seed`.
pub fn generate_collection(
    n: usize,
    m: usize,
    seed: u64,
    model: GenModel,
) -> Result<TournamentCollection> {
    if m == 0 {
        return Err(Error::Parameter("color count must be positive"));
    }
    let mut rng = SplitMix64::new(seed);
    let mut members = Vec::with_capacity(m);
    for _ in 0..m {
        members.push(generate_tournament(n, model, &mut rng)?);
    }
    TournamentCollection::new(members)
}

/// All `2^(n(n-1)/2)` labeled tournaments on `n` vertices, in pair-bit order.
/// Practical for `n <= 5`.
pub fn enumerate_labeled(n: usize) -> impl Iterator<Item = Tournament> {
    let pairs = n * n.saturating_sub(1) / 2;
    assert!(pairs <= 30, "labeled enumeration capped well below 2^30");
    (0u64..1 << pairs).map(move |bits| Tournament::from_pair_bits(n, bits))
}
