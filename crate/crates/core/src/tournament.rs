//! Tournaments, collections and the majority digraph.
//!
//! Vertices and colors are dense integer labels `0..n` / `0..m`; external
//! formats map string names on ingestion. Orientation is stored as a packed
//! boolean matrix, one bit row per vertex (`bit(u,v) = 1` iff the arc `u→v`
//! is present). All types are immutable after construction; derived views
//! (induced, reversed) copy.

use alloc::vec;
use alloc::vec::Vec;

use crate::pattern::Orientation;
use crate::{Error, Ratio, Result};

/// A complete oriented graph on labeled vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Tournament {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Tournament {
    /// Builds from an orientation oracle: `forward(u, v)` for `u < v` decides
    /// whether the pair is oriented `u→v` (true) or `v→u` (false).
    pub fn from_fn(n: usize, mut forward: impl FnMut(usize, usize) -> bool) -> Self {
        let words = n.div_ceil(64).max(1);
        let mut bits = vec![0u64; n * words];
        for u in 0..n {
            for v in (u + 1)..n {
                let (a, b) = if forward(u, v) { (u, v) } else { (v, u) };
                bits[a * words + b / 64] |= 1 << (b % 64);
            }
        }
        Tournament { n, words, bits }
    }

    /// Builds from a full boolean adjacency matrix, checking the tournament
    /// invariant (exactly one orientation per pair, no loops).
    pub fn from_matrix(n: usize, adj: &[bool]) -> Result<Self> {
        if adj.len() != n * n {
            return Err(Error::Parameter("adjacency matrix has wrong size"));
        }
        for u in 0..n {
            if adj[u * n + u] {
                return Err(Error::Parameter("tournament has a loop"));
            }
            for v in (u + 1)..n {
                if adj[u * n + v] == adj[v * n + u] {
                    return Err(Error::Parameter("pair must have exactly one orientation"));
                }
            }
        }
        Ok(Self::from_fn(n, |u, v| adj[u * n + v]))
    }

    /// The transitive tournament: `i→j` iff `i < j`.
    pub fn transitive(n: usize) -> Self {
        Self::from_fn(n, |_, _| true)
    }

    /// Labeled enumeration: pair `(u,v)` with `u < v` in lexicographic order
    /// is assigned bit `k`; bit set means `u→v`. `n` must satisfy
    /// `n*(n-1)/2 <= 64`.
    pub fn from_pair_bits(n: usize, pair_bits: u64) -> Self {
        let mut k = 0usize;
        Self::from_fn(n, |_, _| {
            let fwd = (pair_bits >> k) & 1 == 1;
            k += 1;
            fwd
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Is the arc `(uv)^σ` present? `(uv)^+` is `u→v`, `(uv)^-` is `v→u`.
    #[inline]
    pub fn has_oriented(&self, u: usize, v: usize, orientation: Orientation) -> bool {
        match orientation {
            Orientation::Forward => self.has_arc(u, v),
            Orientation::Backward => self.has_arc(v, u),
        }
    }

    #[inline]
    pub(crate) fn out_row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out_row(u)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn in_degree(&self, u: usize) -> usize {
        self.n - 1 - self.out_degree(u)
    }

    pub fn out_neighbors(&self, u: usize) -> Vec<usize> {
        (0..self.n).filter(|&v| self.has_arc(u, v)).collect()
    }

    pub fn in_neighbors(&self, u: usize) -> Vec<usize> {
        (0..self.n).filter(|&v| self.has_arc(v, u)).collect()
    }

    /// Out-degree of `u` restricted to a vertex mask (see [`vertex_mask`]).
    pub(crate) fn out_degree_masked(&self, u: usize, mask: &[u64]) -> usize {
        self.out_row(u)
            .iter()
            .zip(mask)
            .map(|(w, m)| (w & m).count_ones() as usize)
            .sum()
    }

    /// All orientations flipped.
    pub fn reverse(&self) -> Self {
        Self::from_fn(self.n, |u, v| self.has_arc(v, u))
    }

    /// Subtournament induced by `vertices` (relabeled `0..k` in slice order;
    /// the slice itself is the label map back).
    pub fn induce(&self, vertices: &[usize]) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Parameter("induced vertex set is empty"));
        }
        for &v in vertices {
            if v >= self.n {
                return Err(Error::Parameter("induced vertex out of range"));
            }
        }
        let mut seen = vec![false; self.n];
        for &v in vertices {
            if seen[v] {
                return Err(Error::Parameter("induced vertex repeated"));
            }
            seen[v] = true;
        }
        Ok(Self::from_fn(vertices.len(), |i, j| {
            self.has_arc(vertices[i], vertices[j])
        }))
    }

    /// Number of arcs from `from` to `to` (disjoint vertex slices).
    pub fn arcs_between(&self, from: &[usize], to: &[usize]) -> u64 {
        let to_mask = vertex_mask(self.n, to.iter().copied());
        let mut count = 0u64;
        for &u in from {
            count += self.out_degree_masked(u, &to_mask) as u64;
        }
        count
    }

    /// Checks the packed-matrix invariant. Construction enforces it; this is
    /// for data read back from external formats.
    pub fn check_invariants(&self) -> bool {
        for u in 0..self.n {
            if self.has_arc(u, u) {
                return false;
            }
            for v in (u + 1)..self.n {
                if self.has_arc(u, v) == self.has_arc(v, u) {
                    return false;
                }
            }
        }
        let total: usize = (0..self.n).map(|u| self.out_degree(u)).sum();
        total == self.n * (self.n.saturating_sub(1)) / 2
    }

    /// Row of '0'/'1' bytes for vertex `u` (serialization support).
    pub fn row_chars(&self, u: usize) -> Vec<u8> {
        (0..self.n)
            .map(|v| if self.has_arc(u, v) { b'1' } else { b'0' })
            .collect()
    }
}

impl core::fmt::Debug for Tournament {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "Tournament(n={}", self.n)?;
        for u in 0..self.n {
            write!(f, ", {}->", u)?;
            for v in 0..self.n {
                if self.has_arc(u, v) {
                    write!(f, "{} ", v)?;
                }
            }
        }
        write!(f, ")")
    }
}

/// Packed vertex-set mask over `0..n`.
pub(crate) fn vertex_mask(n: usize, vertices: impl Iterator<Item = usize>) -> Vec<u64> {
    let mut mask = vec![0u64; n.div_ceil(64).max(1)];
    for v in vertices {
        mask[v / 64] |= 1 << (v % 64);
    }
    mask
}

/// A plain digraph over `0..n`; both orientations of a pair may be present
/// (majority digraphs), or neither.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Digraph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Digraph {
            n,
            words,
            bits: vec![0u64; n * words],
        }
    }

    pub fn add_arc(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> u64 {
        self.bits.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in 0..self.n {
                if self.has_arc(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

/// Tournaments on a shared vertex set, indexed by a color set `0..m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TournamentCollection {
    n: usize,
    members: Vec<Tournament>,
}

impl TournamentCollection {
    pub fn new(members: Vec<Tournament>) -> Result<Self> {
        let Some(first) = members.first() else {
            return Err(Error::Parameter("collection must be nonempty"));
        };
        let n = first.vertex_count();
        if members.iter().any(|t| t.vertex_count() != n) {
            return Err(Error::Parameter("all members must share one vertex set"));
        }
        Ok(TournamentCollection { n, members })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn color_count(&self) -> usize {
        self.members.len()
    }

    pub fn member(&self, color: usize) -> &Tournament {
        &self.members[color]
    }

    pub fn members(&self) -> &[Tournament] {
        &self.members
    }

    /// Every member reversed.
    pub fn reverse(&self) -> Self {
        TournamentCollection {
            n: self.n,
            members: self.members.iter().map(Tournament::reverse).collect(),
        }
    }

    /// The vertex- and color-induced collection `T_A[X]`. Vertices are
    /// relabeled `0..|X|` in slice order, colors `0..|A|` likewise; the
    /// argument slices are the label maps back.
    pub fn induce(&self, vertices: &[usize], colors: &[usize]) -> Result<Self> {
        if vertices.is_empty() || colors.is_empty() {
            return Err(Error::Parameter("induced subsets must be nonempty"));
        }
        let mut members = Vec::with_capacity(colors.len());
        for &c in colors {
            if c >= self.members.len() {
                return Err(Error::Parameter("induced color out of range"));
            }
            members.push(self.members[c].induce(vertices)?);
        }
        TournamentCollection::new(members)
    }

    /// The majority digraph `T^γ`: arc `u→v` present iff at least `γ·m`
    /// members contain it, compared exactly.
    pub fn majority_digraph(&self, gamma: Ratio) -> Result<Digraph> {
        if gamma.is_zero() || gamma.exceeds_one() {
            return Err(Error::Parameter("gamma must lie in (0, 1]"));
        }
        let m = self.members.len() as u64;
        let mut digraph = Digraph::empty(self.n);
        for u in 0..self.n {
            for v in 0..self.n {
                if u == v {
                    continue;
                }
                let support = self.members.iter().filter(|t| t.has_arc(u, v)).count() as u64;
                if gamma.at_most(m, support) {
                    digraph.add_arc(u, v);
                }
            }
        }
        Ok(digraph)
    }
}
