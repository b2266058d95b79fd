//! Orientation patterns and their algebra: blocks, reversal, shift,
//! oscillation classification, and directed-oscillating decompositions.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;
use core::str::FromStr;

use crate::{Error, Result};

/// Direction of one arc along an oriented path: `(v_i v_{i+1})^+` is the arc
/// `v_i → v_{i+1}`, `(v_i v_{i+1})^-` the arc `v_{i+1} → v_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orientation {
    Forward,
    Backward,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Forward => Orientation::Backward,
            Orientation::Backward => Orientation::Forward,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Orientation::Forward => '+',
            Orientation::Backward => '-',
        }
    }
}

/// A sequence of arc orientations describing an oriented path, or — with the
/// cyclic flag — an oriented cycle.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrientationPattern {
    arcs: Vec<Orientation>,
    cyclic: bool,
}

impl OrientationPattern {
    pub fn path(arcs: Vec<Orientation>) -> Self {
        OrientationPattern {
            arcs,
            cyclic: false,
        }
    }

    pub fn cycle(arcs: Vec<Orientation>) -> Result<Self> {
        if arcs.len() < 3 {
            return Err(Error::Parameter("cycle patterns need at least 3 arcs"));
        }
        Ok(OrientationPattern { arcs, cyclic: true })
    }

    /// The directed path of length `len` (all arcs forward).
    pub fn directed_path(len: usize) -> Self {
        Self::path(alloc::vec![Orientation::Forward; len])
    }

    /// Path pattern from the low `len` bits of `bits`: bit set = backward.
    pub fn path_from_bits(bits: u64, len: usize) -> Self {
        Self::path(
            (0..len)
                .map(|i| {
                    if bits >> i & 1 == 1 {
                        Orientation::Backward
                    } else {
                        Orientation::Forward
                    }
                })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic
    }

    pub fn arcs(&self) -> &[Orientation] {
        &self.arcs
    }

    pub fn arc(&self, i: usize) -> Orientation {
        self.arcs[i]
    }

    /// Number of vertices a realization uses.
    pub fn vertex_span(&self) -> usize {
        if self.cyclic {
            self.arcs.len()
        } else {
            self.arcs.len() + 1
        }
    }

    pub fn is_directed(&self) -> bool {
        self.arcs.windows(2).all(|w| w[0] == w[1])
    }

    /// Sub-path pattern over an arc index range.
    pub fn slice(&self, range: Range<usize>) -> OrientationPattern {
        OrientationPattern::path(self.arcs[range].to_vec())
    }

    /// The pattern of the reversed path: arc order reversed, orientations
    /// flipped. Arc sets of a path and its reversal coincide.
    pub fn rev(&self) -> Self {
        OrientationPattern {
            arcs: self.arcs.iter().rev().map(|o| o.flip()).collect(),
            cyclic: self.cyclic,
        }
    }

    /// All orientations flipped in place (the pattern seen in the reversed
    /// tournament collection).
    pub fn flip_all(&self) -> Self {
        OrientationPattern {
            arcs: self.arcs.iter().map(|o| o.flip()).collect(),
            cyclic: self.cyclic,
        }
    }

    /// Cyclic rotation: arc `i` of the result is arc `(i + offset) mod ℓ`.
    pub fn rotate(&self, offset: usize) -> Self {
        let l = self.arcs.len();
        OrientationPattern {
            arcs: (0..l).map(|i| self.arcs[(i + offset) % l]).collect(),
            cyclic: self.cyclic,
        }
    }

    /// Maximal runs of equal orientation, in order.
    pub fn blocks(&self) -> Vec<(Orientation, usize)> {
        let mut out: Vec<(Orientation, usize)> = Vec::new();
        for &o in &self.arcs {
            match out.last_mut() {
                Some((last, len)) if *last == o => *len += 1,
                _ => out.push((o, 1)),
            }
        }
        out
    }

    pub fn block_count(&self) -> usize {
        self.blocks().len()
    }

    /// Moves the last arc, reversed, to the front:
    /// `shift(σ_1..σ_ℓ) = (-σ_ℓ, σ_1, .., σ_{ℓ-1})`.
    pub fn shift(&self) -> Result<Self> {
        if self.cyclic {
            return Err(Error::Parameter("shift is defined for paths"));
        }
        let Some((&last, head)) = self.arcs.split_last() else {
            return Err(Error::Parameter("shift needs a nonempty pattern"));
        };
        let mut arcs = Vec::with_capacity(self.arcs.len());
        arcs.push(last.flip());
        arcs.extend_from_slice(head);
        Ok(OrientationPattern::path(arcs))
    }

    pub fn classify_oscillating(&self) -> OscillationClass {
        if self.blocks().iter().any(|&(_, len)| len > 2) {
            return OscillationClass::NotOscillating;
        }
        let l = self.arcs.len();
        if l >= 2 && self.arcs[l - 1] != self.arcs[l - 2] {
            OscillationClass::GoodOscillating
        } else {
            OscillationClass::Oscillating
        }
    }

    pub fn is_oscillating(&self) -> bool {
        self.classify_oscillating() != OscillationClass::NotOscillating
    }

    pub fn is_good_oscillating(&self) -> bool {
        self.classify_oscillating() == OscillationClass::GoodOscillating
    }
}

impl FromStr for OrientationPattern {
    type Err = Error;

    /// `'+'`/`'-'` characters, optional `'@'` suffix for cyclic patterns.
    fn from_str(s: &str) -> Result<Self> {
        let (body, cyclic) = match s.strip_suffix('@') {
            Some(body) => (body, true),
            None => (s, false),
        };
        let mut arcs = Vec::with_capacity(body.len());
        for ch in body.chars() {
            match ch {
                '+' => arcs.push(Orientation::Forward),
                '-' | '−' => arcs.push(Orientation::Backward),
                _ => return Err(Error::Parameter("pattern characters must be '+' or '-'")),
            }
        }
        if cyclic {
            OrientationPattern::cycle(arcs)
        } else {
            Ok(OrientationPattern::path(arcs))
        }
    }
}

impl fmt::Display for OrientationPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::with_capacity(self.arcs.len() + 1);
        for &o in &self.arcs {
            s.push(o.as_char());
        }
        if self.cyclic {
            s.push('@');
        }
        f.write_str(&s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OscillationClass {
    NotOscillating,
    Oscillating,
    GoodOscillating,
}

/// A directed-oscillating decomposition: alternating arc-index ranges
/// `P^d_1, P^o_1, ..., P^d_k, P^o_k` into the parent pattern. Ranges tile
/// `0..ℓ` in order; empty ranges are permitted only in the first directed
/// and last oscillating slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoDecomposition {
    pub directed: Vec<Range<usize>>,
    pub oscillating: Vec<Range<usize>>,
}

impl DoDecomposition {
    pub fn piece_pairs(&self) -> usize {
        self.directed.len()
    }
}

/// First violated clause of the decomposition definition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DoViolation {
    /// Ranges do not tile the parent pattern in order.
    BrokenTiling { piece: usize },
    /// Pair counts differ or are zero.
    MalformedShape,
    /// A piece other than the first directed / last oscillating is empty.
    EmptyPiece { piece: usize },
    /// A directed slot holds a non-directed range.
    NotDirected { pair: usize },
    /// A nonempty oscillating slot is directed, too short, or not oscillating.
    NotOscillating { pair: usize },
    /// An oscillating piece (or its reversal) required to be good is not.
    NotGood { pair: usize, reversed: bool },
    /// Adjacent boundary arcs with indices in `[2, 2k-2]` differ.
    BoundaryOrientation { piece: usize },
}

impl fmt::Display for DoViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DoViolation::BrokenTiling { piece } => {
                write!(f, "pieces do not tile the pattern at piece {piece}")
            }
            DoViolation::MalformedShape => write!(f, "directed/oscillating slot counts differ"),
            DoViolation::EmptyPiece { piece } => write!(f, "piece {piece} may not be empty"),
            DoViolation::NotDirected { pair } => {
                write!(f, "directed slot {pair} is not a directed path")
            }
            DoViolation::NotOscillating { pair } => write!(
                f,
                "oscillating slot {pair} must be non-directed oscillating with >= 2 arcs"
            ),
            DoViolation::NotGood { pair, reversed } => {
                if *reversed {
                    write!(f, "reversal of oscillating slot {pair} is not good")
                } else {
                    write!(f, "oscillating slot {pair} is not good")
                }
            }
            DoViolation::BoundaryOrientation { piece } => write!(
                f,
                "boundary arcs of pieces {piece} and {} differ in orientation",
                piece + 1
            ),
        }
    }
}

/// Produces the canonical directed-oscillating decomposition of a path
/// pattern. Always succeeds; the output passes [`validate_do`].
pub fn do_decompose(pattern: &OrientationPattern) -> Result<DoDecomposition> {
    if pattern.is_cyclic() {
        return Err(Error::Parameter("DO-decomposition is defined for paths"));
    }
    let l = pattern.len();

    // Length <= 2: the single piece sits in whichever slot its shape allows.
    if l <= 2 {
        return Ok(if pattern.is_directed() {
            DoDecomposition {
                directed: alloc::vec![0..l],
                oscillating: alloc::vec![l..l],
            }
        } else {
            DoDecomposition {
                directed: alloc::vec![0..0],
                oscillating: alloc::vec![0..l],
            }
        });
    }

    // Block spans, then long blocks (length >= 3) as anchors.
    let mut spans: Vec<Range<usize>> = Vec::new();
    let mut start = 0usize;
    for (_, len) in pattern.blocks() {
        spans.push(start..start + len);
        start += len;
    }
    let long: Vec<Range<usize>> = spans.iter().filter(|r| r.len() >= 3).cloned().collect();

    let mut directed: Vec<Range<usize>> = Vec::new();
    let mut oscillating: Vec<Range<usize>> = Vec::new();

    if long.is_empty() {
        // Entirely short blocks. A leading length-2 block donates its first
        // arc to the directed slot so the oscillating piece reverses well.
        let head = if pattern.arc(0) == pattern.arc(1) {
            1
        } else {
            0
        };
        directed.push(0..head);
        oscillating.push(head..l);
        return Ok(DoDecomposition {
            directed,
            oscillating,
        });
    }

    // Walk the long blocks; short runs between them extend by one boundary
    // arc on each side to become good oscillating pieces.
    let first_long_at_start = long[0].start == 0;
    if first_long_at_start {
        // First directed piece keeps its first arc (nothing precedes it).
        let last_is_long_end = long[0].end == l;
        directed.push(if last_is_long_end && long.len() == 1 {
            long[0].clone()
        } else {
            long[0].start..long[0].end - 1
        });
    } else {
        // Leading short run: donate one arc if its first block has length 2.
        let head = if pattern.arc(0) == pattern.arc(1) {
            1
        } else {
            0
        };
        directed.push(0..head);
        let osc_end = long[0].start + 1; // first arc of the long block joins
        oscillating.push(head..osc_end);
        directed.push(if long[0].end == l && long.len() == 1 {
            osc_end..long[0].end
        } else {
            osc_end..long[0].end - 1
        });
    }

    for w in 0..long.len() {
        let cur_end = long[w].end;
        if let Some(next) = long.get(w + 1) {
            // oscillating: last arc of this block .. first arc of the next
            oscillating.push(cur_end - 1..next.start + 1);
            directed.push(if next.end == l && w + 1 == long.len() - 1 {
                next.start + 1..next.end
            } else {
                next.start + 1..next.end - 1
            });
        } else if cur_end == l {
            // pattern ends with this long block; its piece kept the last arc
            oscillating.push(l..l);
        } else {
            // trailing short run takes the block's last arc
            oscillating.push(cur_end - 1..l);
        }
    }

    Ok(DoDecomposition {
        directed,
        oscillating,
    })
}

/// Checks conditions on a claimed DO-decomposition: exact tiling, the empty-
/// piece rule, slot shapes, goodness of interior oscillating pieces (and the
/// last one when the parent's final two arcs differ), and matching boundary
/// orientations.
pub fn validate_do(
    pattern: &OrientationPattern,
    decomposition: &DoDecomposition,
) -> core::result::Result<(), DoViolation> {
    let k = decomposition.directed.len();
    if k == 0 || decomposition.oscillating.len() != k {
        return Err(DoViolation::MalformedShape);
    }
    let l = pattern.len();

    // interleave and check tiling
    let mut pieces: Vec<&Range<usize>> = Vec::with_capacity(2 * k);
    for i in 0..k {
        pieces.push(&decomposition.directed[i]);
        pieces.push(&decomposition.oscillating[i]);
    }
    let mut cursor = 0usize;
    for (idx, piece) in pieces.iter().enumerate() {
        if piece.start != cursor || piece.end < piece.start {
            return Err(DoViolation::BrokenTiling { piece: idx + 1 });
        }
        cursor = piece.end;
    }
    if cursor != l {
        return Err(DoViolation::BrokenTiling { piece: 2 * k });
    }

    // E1: only the first and last piece may be empty
    for (idx, piece) in pieces.iter().enumerate() {
        if piece.is_empty() && idx != 0 && idx != 2 * k - 1 {
            return Err(DoViolation::EmptyPiece { piece: idx + 1 });
        }
    }

    // E2
    for (i, range) in decomposition.directed.iter().enumerate() {
        if !pattern.slice(range.clone()).is_directed() {
            return Err(DoViolation::NotDirected { pair: i + 1 });
        }
    }
    for (i, range) in decomposition.oscillating.iter().enumerate() {
        if range.is_empty() {
            continue;
        }
        let piece = pattern.slice(range.clone());
        if piece.len() < 2 || piece.is_directed() || !piece.is_oscillating() {
            return Err(DoViolation::NotOscillating { pair: i + 1 });
        }
    }

    // E3
    let last_two_differ = l >= 2 && pattern.arc(l - 1) != pattern.arc(l - 2);
    for i in 0..k {
        let needs_good = i + 1 < k || last_two_differ;
        if !needs_good {
            continue;
        }
        let piece = pattern.slice(decomposition.oscillating[i].clone());
        if !piece.is_good_oscillating() {
            return Err(DoViolation::NotGood {
                pair: i + 1,
                reversed: false,
            });
        }
        if !piece.rev().is_good_oscillating() {
            return Err(DoViolation::NotGood {
                pair: i + 1,
                reversed: true,
            });
        }
    }

    // E4: boundary arcs of adjacent pieces share orientation, for piece
    // indices in [2, 2k-2]
    for idx in 1..(2 * k).saturating_sub(2) {
        let left = pieces[idx];
        let right = pieces[idx + 1];
        if left.is_empty() || right.is_empty() {
            continue; // would already be an E1 violation
        }
        if pattern.arc(left.end - 1) != pattern.arc(right.start) {
            return Err(DoViolation::BoundaryOrientation { piece: idx + 1 });
        }
    }

    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn pat(s: &str) -> OrientationPattern {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["+", "-", "++-", "+-+-", "+++@", "+-+@"] {
            assert_eq!(pat(s).to_string(), s);
        }
        assert!("+x".parse::<OrientationPattern>().is_err());
        assert!("++@".parse::<OrientationPattern>().is_err()); // cycles need >= 3
    }

    #[test]
    fn block_structure() {
        assert_eq!(pat("+++").blocks(), alloc::vec![(Orientation::Forward, 3)]);
        assert_eq!(
            pat("+-").blocks(),
            alloc::vec![(Orientation::Forward, 1), (Orientation::Backward, 1)]
        );
        assert_eq!(
            pat("++-+--").blocks(),
            alloc::vec![
                (Orientation::Forward, 2),
                (Orientation::Backward, 1),
                (Orientation::Forward, 1),
                (Orientation::Backward, 2)
            ]
        );
        let p = pat("++-+--");
        assert_eq!(p.blocks().iter().map(|b| b.1).sum::<usize>(), p.len());
    }

    #[test]
    fn shift_examples() {
        assert_eq!(pat("+").shift().unwrap(), pat("-"));
        assert_eq!(pat("++-").shift().unwrap(), pat("+++"));
        assert_eq!(pat("-+").shift().unwrap(), pat("--"));
        assert!(pat("").shift().is_err());
    }

    #[test]
    fn oscillation_classes() {
        assert_eq!(
            pat("+++").classify_oscillating(),
            OscillationClass::NotOscillating
        );
        assert_eq!(
            pat("++--").classify_oscillating(),
            OscillationClass::Oscillating
        );
        assert_eq!(
            pat("+-").classify_oscillating(),
            OscillationClass::GoodOscillating
        );
        assert_eq!(
            pat("").classify_oscillating(),
            OscillationClass::Oscillating
        );
        assert_eq!(
            pat("+").classify_oscillating(),
            OscillationClass::Oscillating
        );
    }

    #[test]
    fn decompose_base_cases() {
        // single directed arc sits in the directed slot (forced by E2)
        let d = do_decompose(&pat("+")).unwrap();
        assert_eq!(d.directed, alloc::vec![0..1]);
        assert_eq!(d.oscillating, alloc::vec![1..1]);
        validate_do(&pat("+"), &d).unwrap();

        let d = do_decompose(&pat("+-")).unwrap();
        assert_eq!(d.directed, alloc::vec![0..0]);
        assert_eq!(d.oscillating, alloc::vec![0..2]);
        validate_do(&pat("+-"), &d).unwrap();

        let empty = pat("");
        let d = do_decompose(&empty).unwrap();
        validate_do(&empty, &d).unwrap();
    }

    #[test]
    fn decompose_long_block_head() {
        // "+++-+--": long head block keeps its first arc, donates its last
        let p = pat("+++-+--");
        let d = do_decompose(&p).unwrap();
        validate_do(&p, &d).unwrap();
        assert_eq!(d.directed, alloc::vec![0..2]);
        assert_eq!(d.oscillating, alloc::vec![2..7]);
        assert_eq!(p.slice(d.oscillating[0].clone()), pat("+-+--"));
    }

    #[test]
    fn decompose_exhaustive_small() {
        for l in 0..=12usize {
            for bits in 0..(1u64 << l) {
                let p = OrientationPattern::path_from_bits(bits, l);
                let d = do_decompose(&p).unwrap();
                if let Err(v) = validate_do(&p, &d) {
                    panic!("pattern {p}: {v} (decomposition {d:?})");
                }
            }
        }
    }

    #[test]
    fn validator_rejects_bad_shapes() {
        // a directed length-2 piece in an oscillating slot
        let p = pat("++");
        let bad = DoDecomposition {
            directed: alloc::vec![0..0],
            oscillating: alloc::vec![0..2],
        };
        assert_eq!(
            validate_do(&p, &bad),
            Err(DoViolation::NotOscillating { pair: 1 })
        );
        // dropping an arc breaks the tiling
        let p = pat("++-");
        let bad = DoDecomposition {
            directed: alloc::vec![0..1],
            oscillating: alloc::vec![1..2],
        };
        assert!(matches!(
            validate_do(&p, &bad),
            Err(DoViolation::BrokenTiling { .. })
        ));
    }

    #[test]
    fn rev_and_rotate() {
        let p = pat("++-");
        assert_eq!(p.rev(), pat("+--"));
        assert_eq!(p.rev().rev(), p);
        let c: OrientationPattern = "+-+@".parse().unwrap();
        assert_eq!(c.rotate(1).to_string(), "-++@");
        assert_eq!(c.rotate(3), c);
    }
}
