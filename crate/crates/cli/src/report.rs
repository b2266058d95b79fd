//! Structured run reports: one machine-readable JSON document per run.
//! Verdict content is reproducible byte-for-byte under identical seeds and
//! options; wall-clock timing is carried separately and excluded from
//! determinism comparisons.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use transversal_core::embedding::RainbowEmbedding;
use transversal_core::solver::SearchOutcome;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub options: Value,
    pub payload: Value,
    /// Count of validator checks that ran while assembling the payload.
    pub validations: u64,
    pub wall_ms: u128,
}

impl RunReport {
    /// The report with timing erased — the determinism contract compares
    /// these views.
    pub fn deterministic_view(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v["wall_ms"] = Value::from(0u64);
        v
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EmbeddingDoc {
    pub vertices: Vec<usize>,
    pub colors: Vec<usize>,
    pub pattern: String,
}

impl From<&RainbowEmbedding> for EmbeddingDoc {
    fn from(emb: &RainbowEmbedding) -> Self {
        EmbeddingDoc {
            vertices: emb.vertices.clone(),
            colors: emb.colors.clone(),
            pattern: emb.pattern.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum VerdictDoc {
    Found { embedding: EmbeddingDoc },
    None,
    Timeout,
}

impl From<&SearchOutcome> for VerdictDoc {
    fn from(outcome: &SearchOutcome) -> Self {
        match outcome {
            SearchOutcome::Found(emb) => VerdictDoc::Found {
                embedding: emb.into(),
            },
            SearchOutcome::None => VerdictDoc::None,
            SearchOutcome::Timeout => VerdictDoc::Timeout,
        }
    }
}
