//! Instance file format.
//!
//! ```text
//! transversal-instance v1
//! n 5
//! m 2
//! vertex-labels a b c d e        (optional)
//! color-labels red blue          (optional)
//! color 0
//! 01101
//! 00110
//! 10010
//! 01001
//! 00100
//! color 1
//! ...
//! ```
//!
//! Row `u`, column `v` of each matrix holds `'1'` iff the arc `u→v` is
//! present. Serialization is canonical, so parse∘serialize is the identity
//! on well-formed files.

use std::fmt::Write as _;

use transversal_core::tournament::{Tournament, TournamentCollection};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub collection: TournamentCollection,
    pub vertex_labels: Option<Vec<String>>,
    pub color_labels: Option<Vec<String>>,
}

#[derive(Debug)]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for FormatError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for FormatError {}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError {
        line,
        message: message.into(),
    }
}

pub fn parse_instance(text: &str) -> Result<InstanceFile, FormatError> {
    let mut lines = text.lines().enumerate();
    let mut next_content = || loop {
        match lines.next() {
            Some((no, line)) => {
                let trimmed = line.trim();
                if trimmed.is_empty() || trimmed.starts_with('#') {
                    continue;
                }
                return Some((no + 1, trimmed.to_string()));
            }
            None => return None,
        }
    };

    let (no, header) = next_content().ok_or_else(|| err(0, "empty file"))?;
    if header != "transversal-instance v1" {
        return Err(err(no, "expected header 'transversal-instance v1'"));
    }
    let (no, n_line) = next_content().ok_or_else(|| err(no, "missing n"))?;
    let n: usize = n_line
        .strip_prefix("n ")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| err(no, "expected 'n <count>'"))?;
    let (no, m_line) = next_content().ok_or_else(|| err(no, "missing m"))?;
    let m: usize = m_line
        .strip_prefix("m ")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| err(no, "expected 'm <count>'"))?;
    if n == 0 || m == 0 {
        return Err(err(no, "n and m must be positive"));
    }

    let mut vertex_labels = None;
    let mut color_labels = None;
    let mut pending = next_content();
    while let Some((no, line)) = &pending {
        if let Some(rest) = line.strip_prefix("vertex-labels ") {
            let labels: Vec<String> = rest.split_whitespace().map(String::from).collect();
            if labels.len() != n {
                return Err(err(*no, "vertex label count must equal n"));
            }
            vertex_labels = Some(labels);
            pending = next_content();
        } else if let Some(rest) = line.strip_prefix("color-labels ") {
            let labels: Vec<String> = rest.split_whitespace().map(String::from).collect();
            if labels.len() != m {
                return Err(err(*no, "color label count must equal m"));
            }
            color_labels = Some(labels);
            pending = next_content();
        } else {
            break;
        }
    }

    let mut members = Vec::with_capacity(m);
    for color in 0..m {
        let (no, line) = pending
            .take()
            .ok_or_else(|| err(usize::MAX, format!("missing 'color {color}' section")))?;
        if line != format!("color {color}") {
            return Err(err(no, format!("expected 'color {color}', found '{line}'")));
        }
        let mut adj = vec![false; n * n];
        for row in 0..n {
            let (no, digits) =
                next_content().ok_or_else(|| err(no, format!("missing row {row}")))?;
            if digits.len() != n {
                return Err(err(no, format!("row {row} must have {n} characters")));
            }
            for (col, ch) in digits.chars().enumerate() {
                adj[row * n + col] = match ch {
                    '0' => false,
                    '1' => true,
                    _ => return Err(err(no, "rows must contain only '0' and '1'")),
                };
            }
        }
        let t =
            Tournament::from_matrix(n, &adj).map_err(|e| err(no, format!("color {color}: {e}")))?;
        members.push(t);
        pending = next_content();
    }
    if let Some((no, line)) = pending {
        return Err(err(no, format!("unexpected trailing content '{line}'")));
    }

    let collection = TournamentCollection::new(members).map_err(|e| err(0, e.to_string()))?;
    Ok(InstanceFile {
        collection,
        vertex_labels,
        color_labels,
    })
}

pub fn serialize_instance(instance: &InstanceFile) -> String {
    let coll = &instance.collection;
    let n = coll.vertex_count();
    let mut out = String::new();
    out.push_str("transversal-instance v1\n");
    let _ = writeln!(out, "n {n}");
    let _ = writeln!(out, "m {}", coll.color_count());
    if let Some(labels) = &instance.vertex_labels {
        let _ = writeln!(out, "vertex-labels {}", labels.join(" "));
    }
    if let Some(labels) = &instance.color_labels {
        let _ = writeln!(out, "color-labels {}", labels.join(" "));
    }
    for (c, member) in coll.members().iter().enumerate() {
        let _ = writeln!(out, "color {c}");
        for u in 0..n {
            out.push_str(&String::from_utf8(member.row_chars(u)).unwrap());
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use transversal_core::generate::{generate_collection, GenModel};

    #[test]
    fn round_trip_is_identity() {
        let coll = generate_collection(6, 3, 42, GenModel::Uniform).unwrap();
        let instance = InstanceFile {
            collection: coll,
            vertex_labels: None,
            color_labels: Some(vec!["a".into(), "b".into(), "c".into()]),
        };
        let text = serialize_instance(&instance);
        let parsed = parse_instance(&text).unwrap();
        assert_eq!(parsed, instance);
        assert_eq!(serialize_instance(&parsed), text);
    }

    #[test]
    fn rejects_non_tournament_rows() {
        let text = "transversal-instance v1\nn 2\nm 1\ncolor 0\n00\n00\n";
        assert!(parse_instance(text).is_err());
        let text = "transversal-instance v1\nn 2\nm 1\ncolor 0\n01\n10\n";
        assert!(parse_instance(text).is_err()); // both orientations set
    }

    #[test]
    fn accepts_comments_and_blanks() {
        let text = "# generated\ntransversal-instance v1\n\nn 2\nm 1\ncolor 0\n01\n00\n";
        let parsed = parse_instance(text).unwrap();
        assert_eq!(parsed.collection.vertex_count(), 2);
        assert!(parsed.collection.member(0).has_arc(0, 1));
    }
}
