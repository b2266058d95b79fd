//! Brute-force oracle, independent of the search path.
//!
//! Enumerates every vertex arrangement outright and decides
//! rainbow-colorability per arrangement with one bipartite matching built
//! from scratch. No pruning, no shared machinery with the solver beyond the
//! core types; capped at eight vertices.

use alloc::vec;
use alloc::vec::Vec;

use crate::embedding::RainbowEmbedding;
use crate::pattern::{Orientation, OrientationPattern};
use crate::solver::SearchOutcome;
use crate::tournament::TournamentCollection;
use crate::{Error, Result};

/// Largest host the oracle enumerates.
pub const ORACLE_CAP: usize = 8;

/// Plain recursive Kuhn matching, local to the oracle.
fn assign_colors(arcs: &[(usize, usize)], coll: &TournamentCollection) -> Option<Vec<usize>> {
    let m = coll.color_count();
    let mut arc_of_color: Vec<Option<usize>> = vec![None; m];

    fn place(
        arc: usize,
        arcs: &[(usize, usize)],
        coll: &TournamentCollection,
        arc_of_color: &mut [Option<usize>],
        tried: &mut [bool],
    ) -> bool {
        let (from, to) = arcs[arc];
        for color in 0..coll.color_count() {
            if tried[color] || !coll.member(color).has_arc(from, to) {
                continue;
            }
            tried[color] = true;
            let free = match arc_of_color[color] {
                None => true,
                Some(owner) => place(owner, arcs, coll, arc_of_color, tried),
            };
            if free {
                arc_of_color[color] = Some(arc);
                return true;
            }
        }
        false
    }

    for arc in 0..arcs.len() {
        let mut tried = vec![false; m];
        if !place(arc, arcs, coll, &mut arc_of_color, &mut tried) {
            return None;
        }
    }
    let mut colors = vec![usize::MAX; arcs.len()];
    for (color, owner) in arc_of_color.iter().enumerate() {
        if let Some(arc) = owner {
            colors[*arc] = color;
        }
    }
    Some(colors)
}

fn resolved_arcs(sequence: &[usize], pattern: &OrientationPattern) -> Vec<(usize, usize)> {
    let span = sequence.len();
    (0..pattern.len())
        .map(|i| {
            let u = sequence[i];
            let v = sequence[(i + 1) % span];
            match pattern.arc(i) {
                Orientation::Forward => (u, v),
                Orientation::Backward => (v, u),
            }
        })
        .collect()
}

/// Decides existence of a transversal copy by full enumeration: every
/// injective vertex sequence of the right span, in lexicographic order, and
/// one matching per sequence.
pub fn brute_force_oracle(
    coll: &TournamentCollection,
    pattern: &OrientationPattern,
) -> Result<SearchOutcome> {
    let n = coll.vertex_count();
    if n > ORACLE_CAP {
        return Err(Error::Size {
            what: "brute-force oracle",
            limit: ORACLE_CAP,
            actual: n,
        });
    }
    let l = pattern.len();
    let span = pattern.vertex_span();
    if span > n {
        return Err(Error::Infeasible("more vertices than the host has"));
    }
    if l > coll.color_count() {
        return Err(Error::Infeasible("more arcs than colors"));
    }
    if pattern.is_cyclic() && (l != n || coll.color_count() != n) {
        return Err(Error::Infeasible(
            "cycle queries need pattern length = vertices = colors",
        ));
    }
    if l == 0 {
        return Ok(SearchOutcome::Found(RainbowEmbedding {
            vertices: vec![0],
            colors: Vec::new(),
            pattern: pattern.clone(),
        }));
    }

    let mut sequence: Vec<usize> = Vec::with_capacity(span);
    let mut used = vec![false; n];

    fn enumerate(
        sequence: &mut Vec<usize>,
        used: &mut Vec<bool>,
        span: usize,
        coll: &TournamentCollection,
        pattern: &OrientationPattern,
    ) -> Option<RainbowEmbedding> {
        if sequence.len() == span {
            let arcs = resolved_arcs(sequence, pattern);
            if arcs
                .iter()
                .any(|&(u, v)| (0..coll.color_count()).all(|c| !coll.member(c).has_arc(u, v)))
            {
                return None;
            }
            let colors = assign_colors(&arcs, coll)?;
            return Some(RainbowEmbedding {
                vertices: sequence.clone(),
                colors,
                pattern: pattern.clone(),
            });
        }
        for v in 0..coll.vertex_count() {
            if used[v] {
                continue;
            }
            used[v] = true;
            sequence.push(v);
            if let Some(found) = enumerate(sequence, used, span, coll, pattern) {
                return Some(found);
            }
            sequence.pop();
            used[v] = false;
        }
        None
    }

    Ok(
        match enumerate(&mut sequence, &mut used, span, coll, pattern) {
            Some(embedding) => SearchOutcome::Found(embedding),
            None => SearchOutcome::None,
        },
    )
}
