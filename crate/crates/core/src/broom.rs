//! Brooms and near-rainbow broom constructors.
//!
//! A `(P, s1, s2)`-broom realizes the path `P` with its first vertex blown up
//! into `s1` start-tips and its last into `s2` end-tips; tip arcs keep the
//! blown-up vertex's orientation. A near-rainbow coloring gives each tip-arc
//! class one uniform color, so every tip-to-tip path is rainbow. Brooms keep
//! the end of a growing rainbow path flexible: the end vertex is committed
//! only after the next piece is explored.

use alloc::vec::Vec;
use core::fmt;

use crate::embedding::RainbowEmbedding;
use crate::order::{median_order_exact, median_order_local, EXACT_MEDIAN_CAP};
use crate::pattern::{Orientation, OrientationPattern};
use crate::tournament::{Tournament, TournamentCollection};
use crate::{Error, Result};

/// Pool sizes the short-path constructors are proved against: start pools of
/// 50 and wide end pools of 300. The degree margins used inside (5, 25, 51)
/// derive from these two values and move with them, so they are fixed
/// constants rather than knobs; out-of-regime pools fail with size errors.
pub const MIN_START_POOL: usize = 50;
pub const MIN_WIDE_POOL: usize = 300;

/// A broom over a host vertex set. For pattern length `L >= 2` the internal
/// path carries `L-1` vertices; `L = 1` is the complete bipartite case with
/// no internal vertices; `L = 0` degenerates to bare end-tips with no arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Broom {
    pub pattern: OrientationPattern,
    pub start_tips: Vec<usize>,
    pub internal: Vec<usize>,
    pub end_tips: Vec<usize>,
}

/// One arc of a broom with its pattern position and tip-class role.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BroomArc {
    pub from: usize,
    pub to: usize,
    pub orientation: Orientation,
    pub pattern_index: usize,
    pub role: BroomArcRole,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BroomArcRole {
    StartTip,
    Internal,
    EndTip,
}

impl Broom {
    /// Degenerate broom: end-tips only, no arcs.
    pub fn bare_tips(end_tips: Vec<usize>) -> Self {
        Broom {
            pattern: OrientationPattern::path(Vec::new()),
            start_tips: Vec::new(),
            internal: Vec::new(),
            end_tips,
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.start_tips
            .iter()
            .chain(self.internal.iter())
            .chain(self.end_tips.iter())
            .copied()
    }

    /// Every arc with its pattern position. Tip arcs are listed per tip.
    pub fn arcs(&self) -> Vec<BroomArc> {
        let l = self.pattern.len();
        let mut out = Vec::new();
        if l == 0 {
            return out;
        }
        if l == 1 {
            for &s in &self.start_tips {
                for &e in &self.end_tips {
                    out.push(BroomArc {
                        from: s,
                        to: e,
                        orientation: self.pattern.arc(0),
                        pattern_index: 0,
                        role: BroomArcRole::StartTip,
                    });
                }
            }
            return out;
        }
        for &s in &self.start_tips {
            out.push(BroomArc {
                from: s,
                to: self.internal[0],
                orientation: self.pattern.arc(0),
                pattern_index: 0,
                role: BroomArcRole::StartTip,
            });
        }
        for i in 0..self.internal.len() - 1 {
            out.push(BroomArc {
                from: self.internal[i],
                to: self.internal[i + 1],
                orientation: self.pattern.arc(i + 1),
                pattern_index: i + 1,
                role: BroomArcRole::Internal,
            });
        }
        for &e in &self.end_tips {
            out.push(BroomArc {
                from: *self.internal.last().unwrap(),
                to: e,
                orientation: self.pattern.arc(l - 1),
                pattern_index: l - 1,
                role: BroomArcRole::EndTip,
            });
        }
        out
    }

    /// Checks shape and vertex distinctness plus arc presence in a single
    /// host tournament (for uncolored brooms).
    pub fn validate_structure(
        &self,
        host: &Tournament,
    ) -> core::result::Result<(), BroomViolation> {
        self.validate_shape(host.vertex_count())?;
        for arc in self.arcs() {
            if !host.has_oriented(arc.from, arc.to, arc.orientation) {
                return Err(BroomViolation::ArcMissing {
                    from: arc.from,
                    to: arc.to,
                });
            }
        }
        Ok(())
    }

    fn validate_shape(&self, n: usize) -> core::result::Result<(), BroomViolation> {
        let l = self.pattern.len();
        if self.pattern.is_cyclic() {
            return Err(BroomViolation::Malformed("cyclic pattern"));
        }
        let shape_ok = match l {
            0 => {
                self.start_tips.is_empty() && self.internal.is_empty() && !self.end_tips.is_empty()
            }
            1 => {
                self.internal.is_empty() && !self.start_tips.is_empty() && !self.end_tips.is_empty()
            }
            _ => {
                self.internal.len() == l - 1
                    && !self.start_tips.is_empty()
                    && !self.end_tips.is_empty()
            }
        };
        if !shape_ok {
            return Err(BroomViolation::Malformed("tip/internal counts"));
        }
        let mut seen = alloc::vec![false; n];
        for v in self.vertices() {
            if v >= n {
                return Err(BroomViolation::VertexOutOfRange { vertex: v });
            }
            if seen[v] {
                return Err(BroomViolation::RepeatVertex { vertex: v });
            }
            seen[v] = true;
        }
        Ok(())
    }

    /// The rainbow path choosing one start- and one end-tip.
    pub fn tip_to_tip(
        &self,
        coloring: &BroomColoring,
        start_index: usize,
        end_index: usize,
    ) -> RainbowEmbedding {
        let l = self.pattern.len();
        let mut vertices = Vec::with_capacity(l + 1);
        let mut colors = Vec::with_capacity(l);
        if l == 0 {
            vertices.push(self.end_tips[end_index]);
        } else {
            vertices.push(self.start_tips[start_index]);
            vertices.extend_from_slice(&self.internal);
            vertices.push(self.end_tips[end_index]);
            colors.push(coloring.start_color.unwrap());
            colors.extend_from_slice(&coloring.internal_colors);
            if l >= 2 {
                colors.push(coloring.end_color.unwrap());
            }
        }
        RainbowEmbedding {
            vertices,
            colors,
            pattern: self.pattern.clone(),
        }
    }
}

/// Colors for a broom: one class per tip side plus one color per internal
/// arc. A length-1 broom has a single arc class (`start == end`); a length-0
/// broom carries no colors at all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BroomColoring {
    pub start_color: Option<usize>,
    pub internal_colors: Vec<usize>,
    pub end_color: Option<usize>,
}

impl BroomColoring {
    pub fn used_colors(&self) -> Vec<usize> {
        let mut used: Vec<usize> = self
            .start_color
            .iter()
            .chain(self.internal_colors.iter())
            .chain(self.end_color.iter())
            .copied()
            .collect();
        used.sort_unstable();
        used.dedup();
        used
    }

    /// Arc colors in pattern order (tip classes once each).
    fn arc_color_list(&self, pattern_len: usize) -> Vec<usize> {
        match pattern_len {
            0 => Vec::new(),
            1 => alloc::vec![self.start_color.unwrap()],
            _ => {
                let mut out = Vec::with_capacity(pattern_len);
                out.push(self.start_color.unwrap());
                out.extend_from_slice(&self.internal_colors);
                out.push(self.end_color.unwrap());
                out
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BroomViolation {
    Malformed(&'static str),
    VertexOutOfRange {
        vertex: usize,
    },
    RepeatVertex {
        vertex: usize,
    },
    ArcMissing {
        from: usize,
        to: usize,
    },
    /// An arc is absent from the tournament of its assigned color.
    ArcAbsentInColor {
        from: usize,
        to: usize,
        color: usize,
    },
    /// A tip-class color collides with an internal color (or the two tip
    /// classes collide), so some tip-to-tip path repeats a color.
    RainbowBroken {
        color: usize,
    },
    /// The coloring uses a color outside C.
    ColorOutsidePalette {
        color: usize,
    },
    /// A required color of C' is unused.
    RequiredColorUnused {
        color: usize,
    },
    ColoringShape(&'static str),
}

impl fmt::Display for BroomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use BroomViolation::*;
        match self {
            Malformed(what) => write!(f, "malformed broom: {what}"),
            VertexOutOfRange { vertex } => write!(f, "vertex {vertex} out of range"),
            RepeatVertex { vertex } => write!(f, "vertex {vertex} repeated"),
            ArcMissing { from, to } => write!(f, "arc {from}->{to} missing in host"),
            ArcAbsentInColor { from, to, color } => {
                write!(f, "arc {from}->{to} absent in color {color}")
            }
            RainbowBroken { color } => write!(f, "color {color} repeats on a tip-to-tip path"),
            ColorOutsidePalette { color } => write!(f, "color {color} outside the palette"),
            RequiredColorUnused { color } => write!(f, "required color {color} unused"),
            ColoringShape(what) => write!(f, "coloring shape: {what}"),
        }
    }
}

/// Checks a colored broom: structure, per-arc presence in the assigned
/// color's tournament, uniform tip classes with all-distinct path colors
/// (the sufficient rainbow condition), and `C' ⊆ used ⊆ C`.
pub fn validate_near_rainbow(
    broom: &Broom,
    coloring: &BroomColoring,
    coll: &TournamentCollection,
    palette: &[usize],
    required: &[usize],
) -> core::result::Result<(), BroomViolation> {
    broom.validate_shape(coll.vertex_count())?;
    let l = broom.pattern.len();

    match l {
        0 => {
            if coloring.start_color.is_some()
                || coloring.end_color.is_some()
                || !coloring.internal_colors.is_empty()
            {
                return Err(BroomViolation::ColoringShape("empty broom takes no colors"));
            }
        }
        1 => {
            if coloring.start_color.is_none() || coloring.start_color != coloring.end_color {
                return Err(BroomViolation::ColoringShape(
                    "single-arc broom carries one shared tip class",
                ));
            }
            if !coloring.internal_colors.is_empty() {
                return Err(BroomViolation::ColoringShape("no internal arcs to color"));
            }
        }
        _ => {
            if coloring.start_color.is_none() || coloring.end_color.is_none() {
                return Err(BroomViolation::ColoringShape("tip classes must be colored"));
            }
            if coloring.internal_colors.len() != l - 2 {
                return Err(BroomViolation::ColoringShape("one color per internal arc"));
            }
        }
    }

    // rainbow condition first: tip classes distinct from each other and
    // from all internal colors; internal colors pairwise distinct
    if l >= 2 {
        let start = coloring.start_color.unwrap();
        let end = coloring.end_color.unwrap();
        if start == end {
            return Err(BroomViolation::RainbowBroken { color: start });
        }
        let mut internal = coloring.internal_colors.clone();
        internal.sort_unstable();
        if let Some(w) = internal.windows(2).find(|w| w[0] == w[1]) {
            return Err(BroomViolation::RainbowBroken { color: w[0] });
        }
        if internal.binary_search(&start).is_ok() {
            return Err(BroomViolation::RainbowBroken { color: start });
        }
        if internal.binary_search(&end).is_ok() {
            return Err(BroomViolation::RainbowBroken { color: end });
        }
    }

    let color_of = |arc: &BroomArc| -> usize {
        match arc.role {
            BroomArcRole::StartTip => coloring.start_color.unwrap(),
            BroomArcRole::EndTip => coloring.end_color.unwrap(),
            BroomArcRole::Internal => coloring.internal_colors[arc.pattern_index - 1],
        }
    };
    for arc in broom.arcs() {
        let color = color_of(&arc);
        if color >= coll.color_count() {
            return Err(BroomViolation::ColorOutsidePalette { color });
        }
        if !coll
            .member(color)
            .has_oriented(arc.from, arc.to, arc.orientation)
        {
            return Err(BroomViolation::ArcAbsentInColor {
                from: arc.from,
                to: arc.to,
                color,
            });
        }
    }

    let used = coloring.used_colors();
    for &c in &used {
        if !palette.contains(&c) {
            return Err(BroomViolation::ColorOutsidePalette { color: c });
        }
    }
    for &c in required {
        if !used.contains(&c) {
            return Err(BroomViolation::RequiredColorUnused { color: c });
        }
    }
    Ok(())
}

fn median_order_auto(t: &Tournament) -> Vec<usize> {
    if t.vertex_count() <= EXACT_MEDIAN_CAP {
        median_order_exact(t).unwrap().order
    } else {
        median_order_local(t).order
    }
}

/// An uncolored `(directed path, s1, s2)`-broom in one tournament. Length 1
/// splits a transitive subtournament; length >= 2 takes a median order with
/// tips drawn from the interval degree guarantees around positions `2·s1`
/// and `ell + 2·s1 - 2`.
pub fn directed_broom(t: &Tournament, ell: usize, s1: usize, s2: usize) -> Result<Broom> {
    let n = t.vertex_count();
    if ell == 0 || s1 == 0 || s2 == 0 {
        return Err(Error::Parameter("ell, s1 and s2 must be positive"));
    }
    let tips_exp = s1 + s2;
    // ell = 1 needs only a transitive subtournament of size s1+s2, which
    // exists from 2^(s1+s2-1) vertices on; longer brooms use the uniform
    // bound ell + 2^(s1+s2)
    let required = if tips_exp >= 60 {
        usize::MAX
    } else if ell == 1 {
        1usize << (tips_exp - 1)
    } else {
        ell + (1usize << tips_exp)
    };
    if n < required {
        return Err(Error::Size {
            what: "directed broom host",
            limit: required,
            actual: n,
        });
    }

    if ell == 1 {
        let chain = crate::order::largest_transitive(t, crate::order::TransitiveMode::Greedy)?;
        if chain.len() < s1 + s2 {
            return Err(Error::Construction(
                "transitive chain shorter than the tip demand",
            ));
        }
        return Ok(Broom {
            pattern: OrientationPattern::directed_path(1),
            start_tips: chain[..s1].to_vec(),
            internal: Vec::new(),
            end_tips: chain[s1..s1 + s2].to_vec(),
        });
    }

    let order = median_order_auto(t);
    let head = 2 * s1; // 1-based position of the first internal vertex
    let tail = ell + 2 * s1 - 2; // 1-based position of the last internal vertex
    if tail > n {
        return Err(Error::Construction("order too short for the internal path"));
    }
    let internal: Vec<usize> = order[head - 1..tail].to_vec();
    let anchor_start = internal[0];
    let anchor_end = *internal.last().unwrap();
    let start_tips: Vec<usize> = order[..head - 1]
        .iter()
        .copied()
        .filter(|&v| t.has_arc(v, anchor_start))
        .take(s1)
        .collect();
    let end_tips: Vec<usize> = order[tail..]
        .iter()
        .copied()
        .filter(|&v| t.has_arc(anchor_end, v))
        .take(s2)
        .collect();
    if start_tips.len() < s1 || end_tips.len() < s2 {
        return Err(Error::Construction("interval degrees did not supply tips"));
    }
    let broom = Broom {
        pattern: OrientationPattern::directed_path(ell),
        start_tips,
        internal,
        end_tips,
    };
    broom
        .validate_structure(t)
        .map_err(|_| Error::Construction("directed broom failed structural validation"))?;
    Ok(broom)
}

/// Rainbow copy of an oriented path of length 1 or 2 in a collection with
/// exactly as many colors as arcs, on at least five shared vertices. Color
/// `i` goes to arc `i`. Universal: succeeds on every such instance.
pub fn rainbow_short_path(
    coll: &TournamentCollection,
    pattern: &OrientationPattern,
) -> Result<RainbowEmbedding> {
    let n = coll.vertex_count();
    let l = pattern.len();
    if pattern.is_cyclic() || l == 0 || l > 2 {
        return Err(Error::Parameter("pattern must be a path of length 1 or 2"));
    }
    if coll.color_count() != l {
        return Err(Error::Parameter(
            "color count must equal the pattern length",
        ));
    }
    if n < 5 {
        return Err(Error::Size {
            what: "rainbow short path host",
            limit: 5,
            actual: n,
        });
    }

    if l == 1 {
        let o = pattern.arc(0);
        for u in 0..n {
            for v in 0..n {
                if u != v && coll.member(0).has_oriented(u, v, o) {
                    return Ok(RainbowEmbedding {
                        vertices: alloc::vec![u, v],
                        colors: alloc::vec![0],
                        pattern: pattern.clone(),
                    });
                }
            }
        }
        unreachable!("a tournament carries both orientations somewhere");
    }

    // reduce to a forward first arc by flipping the whole instance
    if pattern.arc(0) == Orientation::Backward {
        let mut emb = rainbow_short_path(&coll.reverse(), &pattern.flip_all())?;
        emb.pattern = pattern.clone();
        return Ok(emb);
    }

    let sigma2 = pattern.arc(1);
    let order = median_order_auto(coll.member(0));
    let t2 = coll.member(1);
    // among positions 2..5 of the order, one has two σ2-neighbors in T_2
    for pos in 1..5 {
        let mid = order[pos];
        let mut neighbors = (0..n).filter(|&w| w != mid && t2.has_oriented(mid, w, sigma2));
        let first = neighbors.next();
        let second = neighbors.next();
        if second.is_none() {
            continue;
        }
        let prev = order[pos - 1];
        let last = if first != Some(prev) {
            first.unwrap()
        } else {
            second.unwrap()
        };
        return Ok(RainbowEmbedding {
            vertices: alloc::vec![prev, mid, last],
            colors: alloc::vec![0, 1],
            pattern: pattern.clone(),
        });
    }
    Err(Error::Construction(
        "no middle vertex with the degree margin (impossible for n >= 5)",
    ))
}

/// Pool members `w` with the arc `(v, w)` in the requested orientation.
fn successors(t: &Tournament, v: usize, o: Orientation, pool: &[usize]) -> Vec<usize> {
    pool.iter()
        .copied()
        .filter(|&w| w != v && t.has_oriented(v, w, o))
        .collect()
}

/// Pool members `w` with the arc `(w, v)` in the requested orientation —
/// candidates for tips attaching to `v`.
fn attachers(t: &Tournament, v: usize, o: Orientation, pool: &[usize]) -> Vec<usize> {
    pool.iter()
        .copied()
        .filter(|&w| w != v && t.has_oriented(w, v, o))
        .collect()
}

fn check_pools_disjoint(v1: &[usize], v2: &[usize], n: usize) -> Result<()> {
    let mut seen = alloc::vec![0u8; n];
    for &v in v1 {
        if v >= n {
            return Err(Error::Parameter("pool vertex out of range"));
        }
        if seen[v] != 0 {
            return Err(Error::Parameter("pool vertex repeated"));
        }
        seen[v] = 1;
    }
    for &v in v2 {
        if v >= n {
            return Err(Error::Parameter("pool vertex out of range"));
        }
        if seen[v] != 0 {
            return Err(Error::Parameter("pools must be disjoint"));
        }
        seen[v] = 2;
    }
    Ok(())
}

fn check_colors(coll: &TournamentCollection, colors: &[usize]) -> Result<()> {
    for (i, &c) in colors.iter().enumerate() {
        if c >= coll.color_count() {
            return Err(Error::Parameter("color out of range"));
        }
        if colors[..i].contains(&c) {
            return Err(Error::Parameter("colors must be distinct"));
        }
    }
    Ok(())
}

/// One oscillating chunk: a near-rainbow `(P, 2, 50)`-broom from `v1` to `v2`
/// for an oscillating pattern of length three, using exactly the three given
/// colors. Either some rich candidate extends directly into the end pool, or
/// the blocked orientation is exploited at the first orientation change —
/// inside the end pool when `σ1 ≠ σ2`, at the candidate pair when `σ2 ≠ σ3`.
pub fn oscillating_broom_step(
    coll: &TournamentCollection,
    v1: &[usize],
    v2: &[usize],
    pattern: &OrientationPattern,
    colors: &[usize; 3],
) -> Result<(Broom, BroomColoring)> {
    if pattern.is_cyclic() || pattern.len() != 3 || !pattern.is_oscillating() {
        return Err(Error::Parameter(
            "pattern must be an oscillating path of length 3",
        ));
    }
    if v1.len() < MIN_START_POOL {
        return Err(Error::Size {
            what: "start pool",
            limit: MIN_START_POOL,
            actual: v1.len(),
        });
    }
    if v2.len() < MIN_WIDE_POOL {
        return Err(Error::Size {
            what: "end pool",
            limit: MIN_WIDE_POOL,
            actual: v2.len(),
        });
    }
    check_pools_disjoint(v1, v2, coll.vertex_count())?;
    check_colors(coll, colors)?;

    let (s1, s2, s3) = (pattern.arc(0), pattern.arc(1), pattern.arc(2));
    let (t1, t2, t3) = (
        coll.member(colors[0]),
        coll.member(colors[1]),
        coll.member(colors[2]),
    );

    // two candidates with rich tip supply in the start pool
    let candidates: Vec<usize> = v1
        .iter()
        .copied()
        .filter(|&u| attachers(t1, u, s1, v1).len() >= 5)
        .take(2)
        .collect();
    let [mut u1, mut u2] = match candidates[..] {
        [a, b] => [a, b],
        _ => return Err(Error::Construction("start pool too thin for candidates")),
    };

    // fifty end-pool vertices with rich σ3-successor supply
    let w_pool: Vec<usize> = v2
        .iter()
        .copied()
        .filter(|&w| successors(t3, w, s3, v2).len() >= 51)
        .take(MIN_START_POOL)
        .collect();
    if w_pool.len() < MIN_START_POOL {
        return Err(Error::Construction(
            "end pool too thin for the degree margin",
        ));
    }

    if !t3.has_oriented(u1, u2, s2) {
        core::mem::swap(&mut u1, &mut u2);
    }

    let build = |start_tips: Vec<usize>,
                 internal: Vec<usize>,
                 end_tips: Vec<usize>,
                 coloring: BroomColoring|
     -> Result<(Broom, BroomColoring)> {
        let broom = Broom {
            pattern: pattern.clone(),
            start_tips,
            internal,
            end_tips,
        };
        validate_near_rainbow(&broom, &coloring, coll, colors, colors)
            .map_err(|_| Error::Construction("oscillating step failed validation"))?;
        Ok((broom, coloring))
    };

    // direct extension: some candidate reaches the end pool with σ2
    for &u in &[u1, u2] {
        if let Some(&w) = w_pool.iter().find(|&&w| t2.has_oriented(u, w, s2)) {
            let start_tips: Vec<usize> = attachers(t1, u, s1, v1).into_iter().take(2).collect();
            let end_tips: Vec<usize> = successors(t3, w, s3, v2)
                .into_iter()
                .take(MIN_START_POOL)
                .collect();
            return build(
                start_tips,
                alloc::vec![u, w],
                end_tips,
                BroomColoring {
                    start_color: Some(colors[0]),
                    internal_colors: alloc::vec![colors[1]],
                    end_color: Some(colors[2]),
                },
            );
        }
    }

    // blocked: every candidate/end-pool pair is oriented against σ2
    if s1 != s2 {
        // walk inside the end pool: an arc (w, w') oriented σ2 in T_1
        let (w, wp) = w_pool
            .iter()
            .flat_map(|&w| w_pool.iter().map(move |&wp| (w, wp)))
            .find(|&(w, wp)| w != wp && t1.has_oriented(w, wp, s2))
            .ok_or(Error::Construction("no oriented pair inside the end pool"))?;
        let end_tips: Vec<usize> = successors(t3, wp, s3, v2)
            .into_iter()
            .filter(|&e| e != w)
            .take(MIN_START_POOL)
            .collect();
        return build(
            alloc::vec![u1, u2],
            alloc::vec![w, wp],
            end_tips,
            BroomColoring {
                start_color: Some(colors[1]),
                internal_colors: alloc::vec![colors[0]],
                end_color: Some(colors[2]),
            },
        );
    }

    // σ2 ≠ σ3 here, since the pattern oscillates
    let start_tips: Vec<usize> = attachers(t1, u1, s1, v1)
        .into_iter()
        .filter(|&v| v != u2)
        .take(2)
        .collect();
    build(
        start_tips,
        alloc::vec![u1, u2],
        w_pool,
        BroomColoring {
            start_color: Some(colors[0]),
            internal_colors: alloc::vec![colors[2]],
            end_color: Some(colors[1]),
        },
    )
}

/// Outcome of the limited-end construction: either the full pattern reaches
/// `v`, or the pattern minus its last vertex does, releasing the color `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EndBroom {
    Full(Broom, BroomColoring),
    Truncated(Broom, BroomColoring),
}

/// Near-rainbow `(P, 2, 1)`-broom toward a single vertex `v` for a good
/// oscillating pattern of length 2..4. Colors map to arc positions with the
/// droppable color `b` at position `ℓ-1`; whichever orientation class of `v`
/// dominates the pool decides full versus truncated.
pub fn oscillating_broom_end(
    coll: &TournamentCollection,
    v1: &[usize],
    v: usize,
    pattern: &OrientationPattern,
    colors: &[usize],
    dropped: usize,
) -> Result<EndBroom> {
    let l = pattern.len();
    if pattern.is_cyclic() || !(2..=4).contains(&l) || !pattern.is_good_oscillating() {
        return Err(Error::Parameter(
            "pattern must be good oscillating of length 2..4",
        ));
    }
    if colors.len() != l {
        return Err(Error::Parameter("need exactly one color per arc"));
    }
    if !colors.contains(&dropped) {
        return Err(Error::Parameter("the droppable color must be in the set"));
    }
    if v1.len() < MIN_START_POOL {
        return Err(Error::Size {
            what: "start pool",
            limit: MIN_START_POOL,
            actual: v1.len(),
        });
    }
    check_pools_disjoint(v1, &[v], coll.vertex_count())?;
    check_colors(coll, colors)?;

    // reduce to (σ_{ℓ-1}, σ_ℓ) = (+, -)
    if pattern.arc(l - 1) == Orientation::Forward {
        return Ok(
            match oscillating_broom_end(
                &coll.reverse(),
                v1,
                v,
                &pattern.flip_all(),
                colors,
                dropped,
            )? {
                EndBroom::Full(mut b, c) => {
                    b.pattern = pattern.clone();
                    EndBroom::Full(b, c)
                }
                EndBroom::Truncated(mut b, c) => {
                    b.pattern = pattern.slice(0..l - 1);
                    EndBroom::Truncated(b, c)
                }
            },
        );
    }

    // arc position (1-based) -> color: dropped at ℓ-1, the rest ascending
    let mut rest: Vec<usize> = colors.iter().copied().filter(|&c| c != dropped).collect();
    rest.sort_unstable();
    let mut by_position = alloc::vec![0usize; l + 1];
    let mut it = rest.into_iter();
    for (pos, slot) in by_position.iter_mut().enumerate().skip(1) {
        *slot = if pos == l - 1 {
            dropped
        } else {
            it.next().unwrap()
        };
    }

    let t_first = coll.member(by_position[1]);
    let t_last = coll.member(by_position[l]);
    let sigma1 = pattern.arc(0);

    let u_out: Vec<usize> = v1
        .iter()
        .copied()
        .filter(|&w| t_last.has_arc(v, w))
        .collect();
    let u_in: Vec<usize> = v1
        .iter()
        .copied()
        .filter(|&w| t_last.has_arc(w, v))
        .collect();

    // rainbow middle path on a rich five-vertex subpool, arc positions from..=to
    let middle_path = |pool: &[usize], from: usize, to: usize| -> Result<Vec<usize>> {
        let rich: Vec<usize> = pool
            .iter()
            .copied()
            .filter(|&w| attachers(t_first, w, sigma1, pool).len() >= 5)
            .take(5)
            .collect();
        if rich.len() < 5 {
            return Err(Error::Construction("pool too thin for the middle path"));
        }
        if from > to {
            return Ok(alloc::vec![rich[0]]);
        }
        let sub_pattern = pattern.slice(from - 1..to);
        let sub_colors: Vec<usize> = (from..=to).map(|p| by_position[p]).collect();
        let sub = coll.induce(&rich, &sub_colors)?;
        let emb = rainbow_short_path(&sub, &sub_pattern)?;
        Ok(emb.vertices.into_iter().map(|i| rich[i]).collect())
    };

    // shared assembly: tips onto the first internal vertex, end arc into v
    let finish = |internal: Vec<usize>,
                  pattern_out: OrientationPattern,
                  internal_positions: core::ops::Range<usize>,
                  required: Vec<usize>|
     -> Result<(Broom, BroomColoring)> {
        let first = internal[0];
        let tips: Vec<usize> = attachers(t_first, first, sigma1, v1)
            .into_iter()
            .filter(|w| !internal.contains(w))
            .take(2)
            .collect();
        if tips.len() < 2 {
            return Err(Error::Construction("not enough start tips"));
        }
        let broom = Broom {
            pattern: pattern_out,
            start_tips: tips,
            internal,
            end_tips: alloc::vec![v],
        };
        let coloring = BroomColoring {
            start_color: Some(by_position[1]),
            internal_colors: internal_positions.map(|p| by_position[p]).collect(),
            end_color: Some(by_position[l]),
        };
        validate_near_rainbow(&broom, &coloring, coll, colors, &required)
            .map_err(|_| Error::Construction("end broom failed validation"))?;
        Ok((broom, coloring))
    };

    if u_out.len() >= 25 {
        // full: middle path covers positions 2..ℓ-1, the last arc enters v
        let internal = middle_path(&u_out, 2, l - 1)?;
        let (broom, coloring) = finish(internal, pattern.clone(), 2..l, colors.to_vec())?;
        return Ok(EndBroom::Full(broom, coloring));
    }

    let required: Vec<usize> = colors.iter().copied().filter(|&c| c != dropped).collect();
    if l == 2 {
        // truncated single arc straight into v, one shared class
        let tips: Vec<usize> = u_in.iter().copied().take(2).collect();
        if tips.len() < 2 {
            return Err(Error::Construction("not enough attachments at v"));
        }
        let broom = Broom {
            pattern: pattern.slice(0..1),
            start_tips: tips,
            internal: Vec::new(),
            end_tips: alloc::vec![v],
        };
        let coloring = BroomColoring {
            start_color: Some(by_position[l]),
            internal_colors: Vec::new(),
            end_color: Some(by_position[l]),
        };
        validate_near_rainbow(&broom, &coloring, coll, colors, &required)
            .map_err(|_| Error::Construction("end broom failed validation"))?;
        return Ok(EndBroom::Truncated(broom, coloring));
    }

    // truncated: realize P minus its last vertex inside the other class
    let internal = middle_path(&u_in, 2, l - 2)?;
    let (broom, coloring) = finish(internal, pattern.slice(0..l - 1), 2..l - 1, required)?;
    Ok(EndBroom::Truncated(broom, coloring))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainMode {
    /// Finish on a small target set with a `(P, 2, 1)`-broom; needs a good
    /// oscillating pattern and at least two target vertices.
    ToVertexSet,
    /// Finish wide with a `(P, 2, 50)`-broom; needs `3 | ℓ(P)` and a target
    /// pool of 300.
    WideEnd,
}

/// A chunk of the chain failed; chunk 0 marks precondition failures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainFailure {
    pub chunk: usize,
    pub error: Error,
}

impl fmt::Display for ChainFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chunk {}: {}", self.chunk, self.error)
    }
}

struct ChainState {
    spine: Vec<usize>,
    arc_colors: Vec<usize>,
    start_tips: Vec<usize>,
    alive: Vec<usize>,
    blocked: Vec<bool>,
}

impl ChainState {
    /// Merge one chunk broom: the junction vertex is the smallest start-tip
    /// (the first chunk instead donates the final start-tips); internal
    /// vertices join the spine; end-tips become the live pool.
    fn absorb(&mut self, broom: Broom, coloring: &BroomColoring, first: bool) {
        if first {
            self.start_tips = broom.start_tips.clone();
            for &t in &self.start_tips {
                self.blocked[t] = true;
            }
        } else {
            let z = *broom.start_tips.iter().min().unwrap();
            self.spine.push(z);
            self.blocked[z] = true;
        }
        for &x in &broom.internal {
            self.spine.push(x);
            self.blocked[x] = true;
        }
        self.arc_colors
            .extend(coloring.arc_color_list(broom.pattern.len()));
        self.alive = broom.end_tips;
    }
}

/// Chains length-3 oscillating chunks (plus a length 2–4 tail) into a
/// near-rainbow broom from `v1` to `v2`, splitting the color budget chunk by
/// chunk. Each chunk's start-tips come from the previous chunk's fifty
/// end-tips; one survives as the junction vertex. In to-vertex-set mode a
/// truncated endgame completes with the reserved color on an arc into the
/// other target, which the first attempt's failure guarantees to exist.
pub fn chain_brooms(
    coll: &TournamentCollection,
    v1: &[usize],
    v2: &[usize],
    pattern: &OrientationPattern,
    mode: ChainMode,
    colors: &[usize],
) -> core::result::Result<(Broom, BroomColoring), ChainFailure> {
    let fail = |chunk: usize, error: Error| ChainFailure { chunk, error };
    let pre = |cond: bool, msg: &'static str| -> core::result::Result<(), ChainFailure> {
        if cond {
            Ok(())
        } else {
            Err(fail(0, Error::Parameter(msg)))
        }
    };
    let l = pattern.len();
    pre(
        !pattern.is_cyclic() && l > 0,
        "pattern must be a nonempty path",
    )?;
    pre(pattern.is_oscillating(), "pattern must be oscillating")?;
    pre(
        coll.vertex_count() >= l + 1000,
        "host needs pattern length + 1000 vertices",
    )?;
    pre(v1.len() >= MIN_START_POOL, "start pool needs 50 vertices")?;
    pre(colors.len() == l, "need exactly one color per arc")?;
    check_pools_disjoint(v1, v2, coll.vertex_count()).map_err(|e| fail(0, e))?;
    check_colors(coll, colors).map_err(|e| fail(0, e))?;
    match mode {
        ChainMode::WideEnd => {
            pre(
                l.is_multiple_of(3),
                "wide-end mode needs length divisible by 3",
            )?;
            pre(
                v2.len() >= MIN_WIDE_POOL,
                "wide-end target needs 300 vertices",
            )?;
        }
        ChainMode::ToVertexSet => {
            pre(
                pattern.is_good_oscillating(),
                "to-vertex-set mode needs a good oscillating pattern",
            )?;
            pre(v2.len() >= 2, "target set needs two vertices")?;
        }
    }

    // chunk lengths: leading threes, tail in {2,3,4}
    let tail = match l % 3 {
        0 => 3,
        1 => 4,
        _ => 2,
    };
    let (leading, tail) = if l <= 4 {
        (0, l)
    } else {
        ((l - tail) / 3, tail)
    };
    let mut chunk_ranges: Vec<core::ops::Range<usize>> =
        (0..leading).map(|i| 3 * i..3 * (i + 1)).collect();
    chunk_ranges.push(l - tail..l);
    let k = chunk_ranges.len();

    let mut sorted_colors = colors.to_vec();
    sorted_colors.sort_unstable();
    let chunk_colors: Vec<Vec<usize>> = {
        let mut cursor = 0;
        chunk_ranges
            .iter()
            .map(|r| {
                let slice = sorted_colors[cursor..cursor + r.len()].to_vec();
                cursor += r.len();
                slice
            })
            .collect()
    };

    let n = coll.vertex_count();
    let mut v1t: Vec<usize> = v1.to_vec();
    v1t.sort_unstable();
    v1t.truncate(MIN_START_POOL);
    let mut v2t: Vec<usize> = v2.to_vec();
    v2t.sort_unstable();
    if mode == ChainMode::WideEnd {
        v2t.truncate(MIN_WIDE_POOL);
    }

    let mut state = ChainState {
        spine: Vec::with_capacity(l),
        arc_colors: Vec::with_capacity(l),
        start_tips: Vec::new(),
        alive: v1t,
        blocked: alloc::vec![false; n],
    };
    for &x in &v2t {
        state.blocked[x] = true; // reserved for the target
    }

    for (idx, range) in chunk_ranges.iter().enumerate() {
        let chunk_no = idx + 1;
        let chunk_pattern = pattern.slice(range.clone());
        let palette = &chunk_colors[idx];
        let pool = state.alive.clone();
        let first = idx == 0;
        let last_chunk = idx == k - 1;

        if !last_chunk || mode == ChainMode::WideEnd {
            let target: Vec<usize> = if last_chunk {
                v2t.clone()
            } else {
                // fresh intermediate pool: smallest unused labels
                let mut fresh = Vec::with_capacity(MIN_WIDE_POOL);
                for x in 0..n {
                    if !state.blocked[x] && !pool.contains(&x) {
                        fresh.push(x);
                        if fresh.len() == MIN_WIDE_POOL {
                            break;
                        }
                    }
                }
                fresh
            };
            if target.len() < MIN_WIDE_POOL {
                return Err(fail(
                    chunk_no,
                    Error::Construction("ran out of fresh vertices"),
                ));
            }
            let trio = [palette[0], palette[1], palette[2]];
            let (b, c) = oscillating_broom_step(coll, &pool, &target, &chunk_pattern, &trio)
                .map_err(|e| fail(chunk_no, e))?;
            state.absorb(b, &c, first);
            continue;
        }

        // to-vertex-set endgame
        let sigma_last = pattern.arc(l - 1);
        let reserve = *palette.last().unwrap();
        let t_reserve = coll.member(reserve);
        let targets: Vec<usize> = v2t.iter().copied().take(2).collect();

        let mut placed = false;
        for (attempt, &target) in targets.iter().enumerate() {
            let outcome =
                oscillating_broom_end(coll, &pool, target, &chunk_pattern, palette, reserve)
                    .map_err(|e| fail(chunk_no, e))?;
            match outcome {
                EndBroom::Full(b, c) => {
                    state.absorb(b, &c, first);
                    placed = true;
                    break;
                }
                EndBroom::Truncated(b, c) => {
                    let completion = v2t
                        .iter()
                        .copied()
                        .find(|&u| u != target && t_reserve.has_oriented(target, u, sigma_last));
                    let Some(u) = completion else {
                        if attempt == 0 {
                            continue; // the second target then must complete
                        }
                        return Err(fail(
                            chunk_no,
                            Error::Construction("no completion arc in the reserved color"),
                        ));
                    };
                    state.absorb(b, &c, first);
                    state.spine.push(target);
                    state.blocked[target] = true;
                    state.arc_colors.push(reserve);
                    state.alive = alloc::vec![u];
                    placed = true;
                    break;
                }
            }
        }
        if !placed {
            return Err(fail(
                chunk_no,
                Error::Construction("endgame found no target"),
            ));
        }
    }

    let end_tips = state.alive;
    if state.arc_colors.len() != l || state.spine.len() + 1 != l {
        return Err(fail(
            k,
            Error::Construction("chain bookkeeping lost an arc or vertex"),
        ));
    }
    let broom = Broom {
        pattern: pattern.clone(),
        start_tips: state.start_tips,
        internal: state.spine,
        end_tips,
    };
    let coloring = BroomColoring {
        start_color: Some(state.arc_colors[0]),
        internal_colors: state.arc_colors[1..l - 1].to_vec(),
        end_color: Some(state.arc_colors[l - 1]),
    };
    validate_near_rainbow(&broom, &coloring, coll, colors, colors)
        .map_err(|_| fail(k, Error::Construction("assembled chain failed validation")))?;
    Ok((broom, coloring))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::validate_embedding;
    use crate::generate::{generate_collection, GenModel};
    use core::str::FromStr;

    fn pat(s: &str) -> OrientationPattern {
        OrientationPattern::from_str(s).unwrap()
    }

    #[test]
    fn directed_broom_on_transitive_split() {
        let t = Tournament::transitive(8);
        let b = directed_broom(&t, 1, 2, 2).unwrap();
        assert_eq!(b.start_tips.len(), 2);
        assert_eq!(b.end_tips.len(), 2);
        for &s in &b.start_tips {
            for &e in &b.end_tips {
                assert!(t.has_arc(s, e));
            }
        }
    }

    #[test]
    fn directed_broom_boundary() {
        // n = ell + 2^(s1+s2) - 1 is one short
        let t = Tournament::transitive(34);
        assert!(matches!(
            directed_broom(&t, 3, 2, 3),
            Err(Error::Size { .. })
        ));
    }

    #[test]
    fn directed_broom_seeded() {
        let coll = generate_collection(40, 1, 9, GenModel::Uniform).unwrap();
        let t = coll.member(0);
        let b = directed_broom(t, 3, 2, 3).unwrap();
        assert_eq!(b.internal.len(), 2);
        assert_eq!((b.start_tips.len(), b.end_tips.len()), (2, 3));
        b.validate_structure(t).unwrap();
    }

    #[test]
    fn short_path_single_arc() {
        let coll = generate_collection(5, 1, 1, GenModel::Uniform).unwrap();
        for p in ["+", "-"] {
            let pattern = pat(p);
            let emb = rainbow_short_path(&coll, &pattern).unwrap();
            assert!(validate_embedding(&coll, &pattern, &emb).is_ok());
        }
    }

    #[test]
    fn short_path_two_arcs_opposed_members() {
        let t = Tournament::transitive(5);
        let coll = TournamentCollection::new(alloc::vec![t.clone(), t.reverse()]).unwrap();
        for p in ["++", "+-", "-+", "--"] {
            let pattern = pat(p);
            let emb = rainbow_short_path(&coll, &pattern).unwrap();
            assert!(validate_embedding(&coll, &pattern, &emb).is_ok(), "{p}");
        }
    }

    #[test]
    fn short_path_seeded_sweep() {
        for seed in 0..200u64 {
            let coll = generate_collection(5, 2, seed, GenModel::Uniform).unwrap();
            for p in ["++", "+-", "-+", "--"] {
                let pattern = pat(p);
                let emb = rainbow_short_path(&coll, &pattern).unwrap();
                assert!(validate_embedding(&coll, &pattern, &emb).is_ok());
            }
        }
    }

    fn pools(n: usize) -> (Vec<usize>, Vec<usize>) {
        ((0..50).collect(), (50..50 + 300.min(n - 50)).collect())
    }

    #[test]
    fn oscillating_step_seeded() {
        let coll = generate_collection(400, 3, 21, GenModel::Uniform).unwrap();
        let (v1, v2) = pools(400);
        for p in ["+-+", "-+-", "++-", "--+", "+--", "-++"] {
            let pattern = pat(p);
            let (broom, coloring) =
                oscillating_broom_step(&coll, &v1, &v2, &pattern, &[0, 1, 2]).unwrap();
            validate_near_rainbow(&broom, &coloring, &coll, &[0, 1, 2], &[0, 1, 2]).unwrap();
            assert!(v1.contains(&broom.start_tips[0]));
            assert_eq!(broom.end_tips.len(), 50);
            // every tip-to-tip choice is a rainbow copy of the pattern
            for s in 0..broom.start_tips.len() {
                for e in 0..broom.end_tips.len() {
                    let emb = broom.tip_to_tip(&coloring, s, e);
                    assert!(validate_embedding(&coll, &pattern, &emb).is_ok());
                }
            }
        }
    }

    #[test]
    fn oscillating_step_rejects_directed() {
        let coll = generate_collection(400, 3, 2, GenModel::Uniform).unwrap();
        let (v1, v2) = pools(400);
        assert!(matches!(
            oscillating_broom_step(&coll, &v1, &v2, &pat("+++"), &[0, 1, 2]),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn oscillating_step_pool_boundary() {
        let coll = generate_collection(400, 3, 2, GenModel::Uniform).unwrap();
        let v1: Vec<usize> = (0..50).collect();
        let v2: Vec<usize> = (50..349).collect(); // 299 vertices
        assert!(matches!(
            oscillating_broom_step(&coll, &v1, &v2, &pat("+-+"), &[0, 1, 2]),
            Err(Error::Size { .. })
        ));
    }

    #[test]
    fn end_broom_full_case() {
        // v beats everyone in the last color: the full pattern lands
        let fwd = Tournament::from_fn(60, |u, _| u == 0);
        let coll = generate_collection(60, 2, 3, GenModel::Uniform).unwrap();
        let coll = TournamentCollection::new(alloc::vec![coll.member(0).clone(), fwd,]).unwrap();
        let v1: Vec<usize> = (1..51).collect();
        // "+-": dropped color at position ℓ-1 = 1, last color at position 2
        let outcome = oscillating_broom_end(&coll, &v1, 0, &pat("+-"), &[0, 1], 0).unwrap();
        match outcome {
            EndBroom::Full(broom, coloring) => {
                validate_near_rainbow(&broom, &coloring, &coll, &[0, 1], &[0, 1]).unwrap();
                assert_eq!(broom.end_tips, alloc::vec![0]);
            }
            EndBroom::Truncated(..) => panic!("expected the full case"),
        }
    }

    #[test]
    fn end_broom_truncated_case() {
        // v loses to everyone in the last color: truncation drops color 0
        let bwd = Tournament::from_fn(60, |u, _| u != 0);
        let coll = generate_collection(60, 2, 4, GenModel::Uniform).unwrap();
        let coll = TournamentCollection::new(alloc::vec![coll.member(0).clone(), bwd,]).unwrap();
        let v1: Vec<usize> = (1..51).collect();
        let outcome = oscillating_broom_end(&coll, &v1, 0, &pat("+-"), &[0, 1], 0).unwrap();
        match outcome {
            EndBroom::Truncated(broom, coloring) => {
                validate_near_rainbow(&broom, &coloring, &coll, &[0, 1], &[1]).unwrap();
                assert_eq!(broom.pattern, pat("+"));
                assert_eq!(coloring.used_colors(), alloc::vec![1]);
            }
            EndBroom::Full(..) => panic!("expected the truncated case"),
        }
    }

    #[test]
    fn end_broom_rejects_non_good_pattern() {
        let coll = generate_collection(60, 2, 4, GenModel::Uniform).unwrap();
        let v1: Vec<usize> = (1..51).collect();
        assert!(matches!(
            oscillating_broom_end(&coll, &v1, 0, &pat("++"), &[0, 1], 0),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn end_broom_longer_patterns() {
        for seed in 0..20u64 {
            let coll = generate_collection(80, 4, seed, GenModel::Uniform).unwrap();
            let v1: Vec<usize> = (1..52).collect();
            for p in ["+-+-", "-+-+", "+-", "-+", "++-", "--+"] {
                let pattern = pat(p);
                if !pattern.is_good_oscillating() {
                    continue;
                }
                let colors: Vec<usize> = (0..pattern.len()).collect();
                let outcome =
                    oscillating_broom_end(&coll, &v1, 0, &pattern, &colors, colors[0]).unwrap();
                let (broom, coloring, required) = match &outcome {
                    EndBroom::Full(b, c) => (b, c, colors.clone()),
                    EndBroom::Truncated(b, c) => (b, c, colors[1..].to_vec()),
                };
                validate_near_rainbow(broom, coloring, &coll, &colors, &required).unwrap();
            }
        }
    }

    #[test]
    fn chain_wide_end() {
        let coll = generate_collection(2000, 6, 7, GenModel::Uniform).unwrap();
        let v1: Vec<usize> = (0..50).collect();
        let v2: Vec<usize> = (1000..1300).collect();
        let pattern = pat("+-+-+-");
        let colors: Vec<usize> = (0..6).collect();
        let (broom, coloring) =
            chain_brooms(&coll, &v1, &v2, &pattern, ChainMode::WideEnd, &colors).unwrap();
        validate_near_rainbow(&broom, &coloring, &coll, &colors, &colors).unwrap();
        assert_eq!(broom.end_tips.len(), 50);
        assert!(broom.end_tips.iter().all(|e| v2.contains(e)));
        assert!(broom.start_tips.iter().all(|s| v1.contains(s)));
    }

    #[test]
    fn chain_wide_end_needs_divisibility() {
        let coll = generate_collection(2000, 7, 7, GenModel::Uniform).unwrap();
        let v1: Vec<usize> = (0..50).collect();
        let v2: Vec<usize> = (1000..1300).collect();
        let failure = chain_brooms(
            &coll,
            &v1,
            &v2,
            &pat("+-+-+-+"),
            ChainMode::WideEnd,
            &(0..7).collect::<Vec<_>>(),
        )
        .unwrap_err();
        assert_eq!(failure.chunk, 0);
    }

    #[test]
    fn chain_to_vertex_set() {
        let coll = generate_collection(1010, 4, 11, GenModel::Uniform).unwrap();
        let v1: Vec<usize> = (0..50).collect();
        let v2: Vec<usize> = alloc::vec![900, 901];
        let pattern = pat("+-+-");
        let colors: Vec<usize> = (0..4).collect();
        let (broom, coloring) =
            chain_brooms(&coll, &v1, &v2, &pattern, ChainMode::ToVertexSet, &colors).unwrap();
        validate_near_rainbow(&broom, &coloring, &coll, &colors, &colors).unwrap();
        assert_eq!(broom.end_tips.len(), 1);
        assert!(v2.contains(&broom.end_tips[0]));
    }

    #[test]
    fn validator_rejects_tip_class_color_reuse() {
        let coll = generate_collection(400, 3, 21, GenModel::Uniform).unwrap();
        let (v1, v2) = pools(400);
        let (broom, coloring) =
            oscillating_broom_step(&coll, &v1, &v2, &pat("+-+"), &[0, 1, 2]).unwrap();
        // reuse the internal color on a tip class: some tip-to-tip path
        // now repeats a color
        let clash = BroomColoring {
            start_color: Some(coloring.internal_colors[0]),
            ..coloring.clone()
        };
        assert!(matches!(
            validate_near_rainbow(&broom, &clash, &coll, &[0, 1, 2], &[]),
            Err(BroomViolation::RainbowBroken { .. })
        ));
        // an unused required color is a coverage violation
        let used = coloring.used_colors();
        assert!(matches!(
            validate_near_rainbow(&broom, &coloring, &coll, &[0, 1, 2, 3], &[3]),
            Err(BroomViolation::RequiredColorUnused { color: 3 })
        ));
        assert!(!used.contains(&3));
    }

    #[test]
    fn chain_tip_paths_are_rainbow_embeddings() {
        let coll = generate_collection(1010, 5, 13, GenModel::Uniform).unwrap();
        let v1: Vec<usize> = (0..50).collect();
        let v2: Vec<usize> = alloc::vec![700, 701, 702];
        let pattern = pat("+--+-");
        let colors: Vec<usize> = (0..5).collect();
        let (broom, coloring) =
            chain_brooms(&coll, &v1, &v2, &pattern, ChainMode::ToVertexSet, &colors).unwrap();
        for s in 0..broom.start_tips.len() {
            for e in 0..broom.end_tips.len() {
                let emb = broom.tip_to_tip(&coloring, s, e);
                assert!(validate_embedding(&coll, &broom.pattern, &emb).is_ok());
            }
        }
    }
}
