//! Rainbow embeddings: a vertex sequence plus an injective arc→color
//! assignment realizing an orientation pattern in a collection.

use alloc::vec::Vec;
use core::fmt;

use crate::pattern::OrientationPattern;
use crate::tournament::TournamentCollection;

/// A realized transversal copy of a pattern. For a path of length `ℓ` the
/// vertex sequence has `ℓ+1` entries; for a cycle, `ℓ` entries and arc `i`
/// joins `vertices[i]` to `vertices[(i+1) mod ℓ]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RainbowEmbedding {
    pub vertices: Vec<usize>,
    pub colors: Vec<usize>,
    pub pattern: OrientationPattern,
}

impl RainbowEmbedding {
    /// The embedding traversed backwards, realizing the reversed pattern.
    pub fn rev(&self) -> Self {
        if self.pattern.is_cyclic() {
            let mut vertices = self.vertices.clone();
            vertices[1..].reverse();
            let mut colors = self.colors.clone();
            colors.reverse();
            RainbowEmbedding {
                vertices,
                colors,
                pattern: self.pattern.rev(),
            }
        } else {
            RainbowEmbedding {
                vertices: self.vertices.iter().rev().copied().collect(),
                colors: self.colors.iter().rev().copied().collect(),
                pattern: self.pattern.rev(),
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbeddingViolation {
    /// Vertex/color sequence lengths do not match the pattern.
    LengthMismatch,
    VertexOutOfRange {
        index: usize,
    },
    ColorOutOfRange {
        index: usize,
    },
    RepeatVertex {
        index: usize,
    },
    RepeatColor {
        index: usize,
    },
    /// The pair is oriented the other way in the assigned color.
    WrongOrientation {
        index: usize,
    },
    /// The arc joins a vertex to itself, so no tournament can carry it.
    ArcAbsent {
        index: usize,
    },
}

impl fmt::Display for EmbeddingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use EmbeddingViolation::*;
        match self {
            LengthMismatch => write!(f, "sequence lengths do not match the pattern"),
            VertexOutOfRange { index } => write!(f, "vertex {index} out of range"),
            ColorOutOfRange { index } => write!(f, "color {index} out of range"),
            RepeatVertex { index } => write!(f, "repeated vertex at position {index}"),
            RepeatColor { index } => write!(f, "repeated color at arc {index}"),
            WrongOrientation { index } => write!(f, "wrong orientation at arc {index}"),
            ArcAbsent { index } => write!(f, "arc {index} absent in its color"),
        }
    }
}

/// Validation outcome: `ok` or every violation found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<EmbeddingViolation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks a claimed embedding against a collection: sequence lengths, vertex
/// and color distinctness and ranges, and per-arc orientation/presence in the
/// assigned color's tournament.
pub fn validate_embedding(
    coll: &TournamentCollection,
    pattern: &OrientationPattern,
    embedding: &RainbowEmbedding,
) -> ValidationReport {
    let mut violations = Vec::new();
    let l = pattern.len();
    let expected_vertices = pattern.vertex_span();

    if embedding.pattern != *pattern
        || embedding.vertices.len() != expected_vertices
        || embedding.colors.len() != l
    {
        violations.push(EmbeddingViolation::LengthMismatch);
        return ValidationReport { violations };
    }

    let n = coll.vertex_count();
    let m = coll.color_count();
    let mut seen_vertex = alloc::vec![false; n];
    for (i, &v) in embedding.vertices.iter().enumerate() {
        if v >= n {
            violations.push(EmbeddingViolation::VertexOutOfRange { index: i });
        } else if seen_vertex[v] {
            violations.push(EmbeddingViolation::RepeatVertex { index: i });
        } else {
            seen_vertex[v] = true;
        }
    }
    let mut seen_color = alloc::vec![false; m];
    for (i, &c) in embedding.colors.iter().enumerate() {
        if c >= m {
            violations.push(EmbeddingViolation::ColorOutOfRange { index: i });
        } else if seen_color[c] {
            violations.push(EmbeddingViolation::RepeatColor { index: i });
        } else {
            seen_color[c] = true;
        }
    }
    if !violations.is_empty() {
        return ValidationReport { violations };
    }

    for i in 0..l {
        let u = embedding.vertices[i];
        let v = embedding.vertices[(i + 1) % expected_vertices];
        let color = embedding.colors[i];
        if u == v {
            violations.push(EmbeddingViolation::ArcAbsent { index: i });
            continue;
        }
        if !coll.member(color).has_oriented(u, v, pattern.arc(i)) {
            violations.push(EmbeddingViolation::WrongOrientation { index: i });
        }
    }

    ValidationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::Orientation;
    use crate::tournament::Tournament;
    use alloc::vec;

    fn single_arc_coll() -> TournamentCollection {
        // one tournament on {0,1} with 0→1
        TournamentCollection::new(vec![Tournament::from_fn(2, |_, _| true)]).unwrap()
    }

    #[test]
    fn accepts_single_arc() {
        let coll = single_arc_coll();
        let pattern = OrientationPattern::path(vec![Orientation::Forward]);
        let emb = RainbowEmbedding {
            vertices: vec![0, 1],
            colors: vec![0],
            pattern: pattern.clone(),
        };
        assert!(validate_embedding(&coll, &pattern, &emb).is_ok());
    }

    #[test]
    fn flags_repeat_color() {
        let t = Tournament::transitive(3);
        let coll = TournamentCollection::new(vec![t.clone(), t]).unwrap();
        let pattern = OrientationPattern::path(vec![Orientation::Forward; 2]);
        let emb = RainbowEmbedding {
            vertices: vec![0, 1, 2],
            colors: vec![0, 0],
            pattern: pattern.clone(),
        };
        let report = validate_embedding(&coll, &pattern, &emb);
        assert_eq!(
            report.violations,
            vec![EmbeddingViolation::RepeatColor { index: 1 }]
        );
    }

    #[test]
    fn flags_wrong_orientation() {
        let coll = single_arc_coll();
        let pattern = OrientationPattern::path(vec![Orientation::Backward]);
        let emb = RainbowEmbedding {
            vertices: vec![0, 1],
            colors: vec![0],
            pattern: pattern.clone(),
        };
        let report = validate_embedding(&coll, &pattern, &emb);
        assert_eq!(
            report.violations,
            vec![EmbeddingViolation::WrongOrientation { index: 0 }]
        );
    }

    #[test]
    fn cycle_indexing_wraps() {
        // 3-cycle member: 0→1→2→0; cyclic pattern +++@
        let t = Tournament::from_fn(3, |u, v| (u, v) != (0, 2));
        let coll = TournamentCollection::new(vec![t.clone(), t.clone(), t]).unwrap();
        let pattern = OrientationPattern::cycle(vec![Orientation::Forward; 3]).unwrap();
        let emb = RainbowEmbedding {
            vertices: vec![0, 1, 2],
            colors: vec![0, 1, 2],
            pattern: pattern.clone(),
        };
        assert!(validate_embedding(&coll, &pattern, &emb).is_ok());
    }
}
