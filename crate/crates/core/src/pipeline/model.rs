//! Fitted model and its JSON persistence.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::selection::{Heuristic, PprConfig, SelectionConfig};
use crate::weighting::IdfTable;
use crate::wsd::WsdConfig;

pub const MODEL_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub k: f64,
    pub heuristic: Heuristic,
    pub d: usize,
    pub window: usize,
    pub depth_cutoff: Option<u32>,
    pub clean_social: bool,
    pub ppr_alpha: f64,
    pub ppr_tol: f64,
    pub ppr_max_iter: usize,
    /// Stopwords used at fit time; transform reuses them.
    pub stopwords: Vec<String>,
}

impl ModelConfig {
    pub fn wsd(&self) -> WsdConfig {
        WsdConfig {
            window: self.window,
            clean_social: self.clean_social,
            stopwords: self.stopwords.iter().cloned().collect(),
        }
    }

    pub fn selection(&self) -> SelectionConfig {
        SelectionConfig {
            heuristic: self.heuristic,
            d: self.d,
            ppr: PprConfig {
                alpha: self.ppr_alpha,
                tol: self.ppr_tol,
                max_iter: self.ppr_max_iter,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelTerm {
    pub id: String,
    /// Training documents containing the term.
    pub n_t: u64,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FittedModel {
    pub version: String,
    pub config: ModelConfig,
    pub n_docs_train: u64,
    pub terms: Vec<ModelTerm>,
    pub taxonomy_fingerprint: String,
}

impl FittedModel {
    pub fn term_ids(&self) -> Vec<String> {
        self.terms.iter().map(|t| t.id.clone()).collect()
    }

    /// Frozen idf statistics of the selected terms.
    pub fn idf_table(&self) -> IdfTable {
        IdfTable {
            n_docs: self.n_docs_train,
            columns: self.term_ids(),
            doc_freq: self.terms.iter().map(|t| t.n_t).collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::ModelInvariant(m));
        if self.version != MODEL_VERSION {
            return Err(Error::ModelVersion {
                found: self.version.clone(),
                expected: MODEL_VERSION.into(),
            });
        }
        let c = &self.config;
        if !(0.0..=1.0).contains(&c.k) {
            return bad(format!("k = {} outside [0, 1]", c.k));
        }
        if c.d == 0 {
            return bad("d must be at least 1".into());
        }
        if c.window == 0 {
            return bad("window must be at least 1".into());
        }
        if let Err(e) = c.selection().ppr.validate() {
            return bad(e.to_string());
        }
        if self.terms.len() > c.d {
            return bad(format!("{} terms exceed d = {}", self.terms.len(), c.d));
        }
        let mut seen = HashSet::new();
        for t in &self.terms {
            if !seen.insert(t.id.as_str()) {
                return bad(format!("term `{}` listed twice", t.id));
            }
            if t.n_t < 1 || t.n_t > self.n_docs_train {
                return bad(format!(
                    "term `{}` has n_t = {} outside [1, {}]",
                    t.id, t.n_t, self.n_docs_train
                ));
            }
            if !t.score.is_finite() {
                return bad(format!("term `{}` has a non-finite score", t.id));
            }
        }
        let fp = &self.taxonomy_fingerprint;
        if fp.len() != 64 || !fp.bytes().all(|b| matches!(b, b'0'..=b'9' | b'a'..=b'f')) {
            return bad("taxonomy_fingerprint must be 64 lowercase hex digits".into());
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("model serializes");
        s.push('\n');
        s
    }

    /// Parses and validates a saved model.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        match value.get("version").and_then(|v| v.as_str()) {
            Some(MODEL_VERSION) => {}
            Some(other) => {
                return Err(Error::ModelVersion {
                    found: other.into(),
                    expected: MODEL_VERSION.into(),
                })
            }
            None => return Err(Error::ModelInvariant("missing `version` field".into())),
        }
        let model: FittedModel = serde_json::from_value(value)?;
        model.validate()?;
        Ok(model)
    }

    pub fn save(&self, path: impl AsRef<std::path::Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model() -> FittedModel {
        FittedModel {
            version: MODEL_VERSION.into(),
            config: ModelConfig {
                k: 0.5,
                heuristic: Heuristic::Rarest,
                d: 2,
                window: 3,
                depth_cutoff: None,
                clean_social: false,
                ppr_alpha: 0.85,
                ppr_tol: 1e-9,
                ppr_max_iter: 1000,
                stopwords: vec!["the".into()],
            },
            n_docs_train: 2,
            terms: vec![
                ModelTerm {
                    id: "cat.n.01".into(),
                    n_t: 1,
                    score: -1.0,
                },
                ModelTerm {
                    id: "dog.n.01".into(),
                    n_t: 2,
                    score: -3.0,
                },
            ],
            taxonomy_fingerprint: "ab".repeat(32),
        }
    }

    #[test]
    fn json_round_trip() {
        let m = model();
        assert_eq!(FittedModel::from_json(&m.to_json()).unwrap(), m);
    }

    #[test]
    fn truncated_stream() {
        let json = model().to_json();
        assert!(matches!(
            FittedModel::from_json(&json[..json.len() / 2]),
            Err(Error::MalformedModel(_))
        ));
    }

    #[test]
    fn n_t_above_n_names_term() {
        let json = model().to_json().replace("\"n_t\": 2", "\"n_t\": 7");
        match FittedModel::from_json(&json) {
            Err(Error::ModelInvariant(m)) => assert!(m.contains("dog.n.01"), "{m}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn version_mismatch() {
        let json = model()
            .to_json()
            .replace("\"version\": \"1\"", "\"version\": \"0\"");
        assert!(matches!(
            FittedModel::from_json(&json),
            Err(Error::ModelVersion { .. })
        ));
    }

    #[test]
    fn too_many_terms() {
        let mut m = model();
        m.config.d = 1;
        assert!(matches!(
            FittedModel::from_json(&m.to_json()),
            Err(Error::ModelInvariant(_))
        ));
    }
}
