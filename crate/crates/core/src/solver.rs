//! Exact transversal search at desk scale.
//!
//! Depth-first extension of the vertex sequence with an incrementally
//! maintained maximum bipartite matching between placed arcs and colors;
//! a branch dies as soon as the matching stops being perfect on the placed
//! arcs. "None" is returned only after the search tree is exhausted; a stop
//! hook turns long runs into a distinct timeout verdict instead.

use alloc::vec;
use alloc::vec::Vec;

use crate::embedding::RainbowEmbedding;
use crate::pattern::OrientationPattern;
use crate::tournament::TournamentCollection;
use crate::{Error, Result};

/// Default exact-search vertex cap.
pub const DEFAULT_VERTEX_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pruning {
    /// No pruning: color feasibility is decided only at complete sequences.
    None,
    /// Matching-based pruning at every extension.
    HallMatching,
}

#[derive(Clone, Copy)]
pub struct SearchOptions<'a> {
    pub vertex_cap: usize,
    pub pruning: Pruning,
    /// Cycle searches fix this vertex at position 0 (symmetry breaking).
    pub anchor: Option<usize>,
    /// Cooperative stop hook; when it returns true the search reports a
    /// timeout verdict. Without a hook, instances over the cap are rejected.
    pub stop: Option<&'a dyn Fn() -> bool>,
}

impl Default for SearchOptions<'_> {
    fn default() -> Self {
        SearchOptions {
            vertex_cap: DEFAULT_VERTEX_CAP,
            pruning: Pruning::HallMatching,
            anchor: None,
            stop: None,
        }
    }
}

impl core::fmt::Debug for SearchOptions<'_> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("SearchOptions")
            .field("vertex_cap", &self.vertex_cap)
            .field("pruning", &self.pruning)
            .field("anchor", &self.anchor)
            .field("stop", &self.stop.is_some())
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(RainbowEmbedding),
    /// Certified exhaustive-search negative.
    None,
    /// The stop hook fired before the tree was exhausted.
    Timeout,
}

impl SearchOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }
}

/// Arc→color matching over resolved directed pairs, grown one arc at a time.
struct Matching {
    arc_of_color: Vec<Option<usize>>,
    color_of_arc: Vec<Option<usize>>,
}

impl Matching {
    fn new(colors: usize, arcs: usize) -> Self {
        Matching {
            arc_of_color: vec![None; colors],
            color_of_arc: vec![None; arcs],
        }
    }

    /// Kuhn augmentation from one arc; colors scanned ascending.
    fn augment(
        &mut self,
        arc: usize,
        arcs: &[(usize, usize)],
        coll: &TournamentCollection,
        visited: &mut [bool],
    ) -> bool {
        let (from, to) = arcs[arc];
        for c in 0..coll.color_count() {
            if visited[c] || !coll.member(c).has_arc(from, to) {
                continue;
            }
            visited[c] = true;
            let displaced = self.arc_of_color[c];
            let reroutes = match displaced {
                Some(other) => self.augment(other, arcs, coll, visited),
                None => true,
            };
            if reroutes {
                self.arc_of_color[c] = Some(arc);
                self.color_of_arc[arc] = Some(c);
                return true;
            }
        }
        false
    }

    fn snapshot(&self) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
        (self.arc_of_color.clone(), self.color_of_arc.clone())
    }

    fn restore(&mut self, snap: (Vec<Option<usize>>, Vec<Option<usize>>)) {
        self.arc_of_color = snap.0;
        self.color_of_arc = snap.1;
    }
}

/// Canonical perfect matching over a complete arc list (fresh Kuhn run, arcs
/// in index order). Both pruning modes emit this same coloring, so verdicts
/// and witnesses are mode-independent.
fn canonical_coloring(arcs: &[(usize, usize)], coll: &TournamentCollection) -> Option<Vec<usize>> {
    let mut matching = Matching::new(coll.color_count(), arcs.len());
    for arc in 0..arcs.len() {
        let mut visited = vec![false; coll.color_count()];
        if !matching.augment(arc, arcs, coll, &mut visited) {
            return None;
        }
    }
    Some(
        matching
            .color_of_arc
            .into_iter()
            .map(|c| c.unwrap())
            .collect(),
    )
}

struct PathSearch<'a, 'b> {
    coll: &'a TournamentCollection,
    pattern: &'a OrientationPattern,
    opts: &'a SearchOptions<'b>,
    sequence: Vec<usize>,
    used: Vec<bool>,
    arcs: Vec<(usize, usize)>,
    matching: Matching,
    /// Pattern rotation offset (cycle alignment; zero for paths).
    rotation: usize,
    stopped: bool,
}

impl PathSearch<'_, '_> {
    fn stop_fired(&mut self) -> bool {
        if let Some(stop) = self.opts.stop {
            if stop() {
                self.stopped = true;
            }
        }
        self.stopped
    }

    fn resolve(&self, u: usize, v: usize, index: usize) -> (usize, usize) {
        let l = self.pattern.len();
        match self.pattern.arc((index + self.rotation) % l) {
            crate::pattern::Orientation::Forward => (u, v),
            crate::pattern::Orientation::Backward => (v, u),
        }
    }

    /// Push the arc joining the last two sequence entries (or the closing
    /// arc); with matching pruning this may reject immediately.
    fn push_arc(&mut self, from: usize, to: usize, index: usize) -> bool {
        let pair = self.resolve(from, to, index);
        self.arcs.push(pair);
        if self.opts.pruning == Pruning::HallMatching {
            let mut visited = vec![false; self.coll.color_count()];
            if !self
                .matching
                .augment(self.arcs.len() - 1, &self.arcs, self.coll, &mut visited)
            {
                self.arcs.pop();
                return false;
            }
        }
        true
    }

    fn dfs_path(&mut self) -> Option<RainbowEmbedding> {
        if self.stop_fired() {
            return None;
        }
        let depth = self.sequence.len();
        if depth == self.pattern.len() + 1 {
            let colors = canonical_coloring(&self.arcs, self.coll)?;
            return Some(RainbowEmbedding {
                vertices: self.sequence.clone(),
                colors,
                pattern: self.pattern.clone(),
            });
        }
        for v in 0..self.coll.vertex_count() {
            if self.used[v] {
                continue;
            }
            let snap = (self.opts.pruning == Pruning::HallMatching && depth > 0)
                .then(|| self.matching.snapshot());
            if depth > 0 && !self.push_arc(self.sequence[depth - 1], v, depth - 1) {
                continue;
            }
            self.sequence.push(v);
            self.used[v] = true;
            if let Some(found) = self.dfs_path() {
                return Some(found);
            }
            self.used[v] = false;
            self.sequence.pop();
            if depth > 0 {
                self.arcs.pop();
                if let Some(snap) = snap {
                    self.matching.restore(snap);
                }
            }
            if self.stopped {
                return None;
            }
        }
        None
    }

    fn dfs_cycle(&mut self) -> Option<RainbowEmbedding> {
        if self.stop_fired() {
            return None;
        }
        let n = self.coll.vertex_count();
        let depth = self.sequence.len();
        if depth == n {
            // closing arc back to the anchor
            let snap = self.matching.snapshot();
            if !self.push_arc(self.sequence[n - 1], self.sequence[0], n - 1) {
                return None;
            }
            let result = canonical_coloring(&self.arcs, self.coll).map(|colors| {
                // rotate so the embedding realizes the unrotated pattern
                let l = n;
                let r = self.rotation % l;
                let vertices: Vec<usize> = (0..l).map(|j| self.sequence[(j + l - r) % l]).collect();
                let colors: Vec<usize> = (0..l).map(|j| colors[(j + l - r) % l]).collect();
                RainbowEmbedding {
                    vertices,
                    colors,
                    pattern: self.pattern.clone(),
                }
            });
            self.arcs.pop();
            self.matching.restore(snap);
            return result;
        }
        for v in 0..n {
            if self.used[v] {
                continue;
            }
            let snap =
                (self.opts.pruning == Pruning::HallMatching).then(|| self.matching.snapshot());
            if !self.push_arc(self.sequence[depth - 1], v, depth - 1) {
                continue;
            }
            self.sequence.push(v);
            self.used[v] = true;
            if let Some(found) = self.dfs_cycle() {
                return Some(found);
            }
            self.used[v] = false;
            self.sequence.pop();
            self.arcs.pop();
            if let Some(snap) = snap {
                self.matching.restore(snap);
            }
            if self.stopped {
                return None;
            }
        }
        None
    }
}

fn check_caps(coll: &TournamentCollection, opts: &SearchOptions) -> Result<()> {
    let n = coll.vertex_count();
    if opts.vertex_cap < 2 {
        return Err(Error::Parameter("vertex cap must be at least 2"));
    }
    if n > opts.vertex_cap && opts.stop.is_none() {
        return Err(Error::Size {
            what: "exact search (set a stop hook to exceed the cap)",
            limit: opts.vertex_cap,
            actual: n,
        });
    }
    Ok(())
}

/// Searches for a transversal copy of a path pattern. `None` certifies that
/// no embedding exists.
pub fn find_transversal_path(
    coll: &TournamentCollection,
    pattern: &OrientationPattern,
    opts: &SearchOptions,
) -> Result<SearchOutcome> {
    if pattern.is_cyclic() {
        return Err(Error::Parameter("path search takes a path pattern"));
    }
    let l = pattern.len();
    if l + 1 > coll.vertex_count() {
        return Err(Error::Infeasible("more path vertices than the host has"));
    }
    if l > coll.color_count() {
        return Err(Error::Infeasible("more arcs than colors"));
    }
    check_caps(coll, opts)?;
    if l == 0 {
        return Ok(SearchOutcome::Found(RainbowEmbedding {
            vertices: vec![0],
            colors: Vec::new(),
            pattern: pattern.clone(),
        }));
    }

    let mut search = PathSearch {
        coll,
        pattern,
        opts,
        sequence: Vec::with_capacity(l + 1),
        used: vec![false; coll.vertex_count()],
        arcs: Vec::with_capacity(l),
        matching: Matching::new(coll.color_count(), l),
        rotation: 0,
        stopped: false,
    };
    match search.dfs_path() {
        Some(embedding) => Ok(SearchOutcome::Found(embedding)),
        None if search.stopped => Ok(SearchOutcome::Timeout),
        None => Ok(SearchOutcome::None),
    }
}

/// Searches for a transversal copy of a cyclic pattern with `ℓ = n = m`.
/// Symmetry is broken by fixing the anchor vertex at position 0 and trying
/// every rotation of the pattern alignment.
pub fn find_transversal_cycle(
    coll: &TournamentCollection,
    pattern: &OrientationPattern,
    opts: &SearchOptions,
) -> Result<SearchOutcome> {
    if !pattern.is_cyclic() {
        return Err(Error::Parameter("cycle search takes a cyclic pattern"));
    }
    let n = coll.vertex_count();
    let l = pattern.len();
    if l != n || coll.color_count() != n {
        return Err(Error::Infeasible(
            "cycle search needs pattern length = vertices = colors",
        ));
    }
    check_caps(coll, opts)?;
    let anchor = opts.anchor.unwrap_or(0);
    if anchor >= n {
        return Err(Error::Parameter("anchor out of range"));
    }

    let mut timed_out = false;
    for rotation in 0..n {
        let mut search = PathSearch {
            coll,
            pattern,
            opts,
            sequence: vec![anchor],
            used: vec![false; n],
            arcs: Vec::with_capacity(n),
            matching: Matching::new(n, n),
            rotation,
            stopped: false,
        };
        search.used[anchor] = true;
        if let Some(embedding) = search.dfs_cycle() {
            return Ok(SearchOutcome::Found(embedding));
        }
        if search.stopped {
            timed_out = true;
            break;
        }
    }
    Ok(if timed_out {
        SearchOutcome::Timeout
    } else {
        SearchOutcome::None
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepKind {
    /// All Hamilton path patterns (`2^(n-1)`).
    Path,
    /// All cyclic patterns (`2^n`).
    Cycle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepVerdict {
    pub pattern: OrientationPattern,
    pub outcome: SearchOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub verdicts: Vec<SweepVerdict>,
    pub found: usize,
    pub none: usize,
    pub timeout: usize,
}

impl SweepReport {
    /// Patterns certified to have no transversal copy.
    pub fn exceptions(&self) -> Vec<&OrientationPattern> {
        self.verdicts
            .iter()
            .filter(|v| v.outcome == SearchOutcome::None)
            .map(|v| &v.pattern)
            .collect()
    }
}

pub(crate) fn pattern_bits(pattern: &OrientationPattern) -> u64 {
    pattern
        .arcs()
        .iter()
        .enumerate()
        .fold(0u64, |acc, (i, &o)| {
            acc | ((o == crate::pattern::Orientation::Backward) as u64) << i
        })
}

/// Runs every Hamilton orientation through the matching search; with
/// reversal dedup, only the lexicographically smaller of each pattern and
/// its reversal is searched (their verdicts coincide).
pub fn sweep_orientations(
    coll: &TournamentCollection,
    kind: SweepKind,
    dedupe_reversal: bool,
    opts: &SearchOptions,
) -> Result<SweepReport> {
    let n = coll.vertex_count();
    let arcs = match kind {
        SweepKind::Path => n - 1,
        SweepKind::Cycle => n,
    };
    if arcs > 63 {
        return Err(Error::Size {
            what: "orientation sweep",
            limit: 63,
            actual: arcs,
        });
    }
    let mut verdicts = Vec::new();
    let (mut found, mut none, mut timeout) = (0usize, 0usize, 0usize);
    for bits in 0..(1u64 << arcs) {
        let pattern = match kind {
            SweepKind::Path => OrientationPattern::path_from_bits(bits, arcs),
            SweepKind::Cycle => {
                let p = OrientationPattern::path_from_bits(bits, arcs);
                OrientationPattern::cycle(p.arcs().to_vec())?
            }
        };
        if dedupe_reversal && pattern_bits(&pattern.rev()) < bits {
            continue;
        }
        let outcome = match kind {
            SweepKind::Path => find_transversal_path(coll, &pattern, opts)?,
            SweepKind::Cycle => find_transversal_cycle(coll, &pattern, opts)?,
        };
        match &outcome {
            SearchOutcome::Found(_) => found += 1,
            SearchOutcome::None => none += 1,
            SearchOutcome::Timeout => timeout += 1,
        }
        verdicts.push(SweepVerdict { pattern, outcome });
    }
    Ok(SweepReport {
        verdicts,
        found,
        none,
        timeout,
    })
}
