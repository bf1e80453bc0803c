//! Scoring and top-`d` selection of corpus taxonomy terms.
//!
//! Every heuristic produces [`RankedTerms`]: descending score, ties broken by
//! ascending synset id.

mod centrality;
mod mutual_info;
mod pagerank;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::CorpusGraph;
use crate::error::{Error, Result};

pub use centrality::{betweenness, closeness, TermGraph};
pub use mutual_info::{binarize, mutual_info_per_class, mutual_info_scores};
pub use pagerank::{personalized_pagerank, PprConfig, PprRun};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Heuristic {
    Rarest,
    Betweenness,
    Closeness,
    MutualInfo,
    Pagerank,
}

impl Heuristic {
    pub const ALL: [Heuristic; 5] = [
        Heuristic::Rarest,
        Heuristic::Betweenness,
        Heuristic::Closeness,
        Heuristic::MutualInfo,
        Heuristic::Pagerank,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Heuristic::Rarest => "rarest",
            Heuristic::Betweenness => "betweenness",
            Heuristic::Closeness => "closeness",
            Heuristic::MutualInfo => "mutual_info",
            Heuristic::Pagerank => "pagerank",
        }
    }

    pub fn needs_labels(self) -> bool {
        self == Heuristic::MutualInfo
    }
}

impl fmt::Display for Heuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Heuristic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Heuristic::ALL
            .into_iter()
            .find(|h| h.as_str() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown heuristic `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelectionConfig {
    pub heuristic: Heuristic,
    pub d: usize,
    pub ppr: PprConfig,
}

impl SelectionConfig {
    pub fn new(heuristic: Heuristic, d: usize) -> Self {
        SelectionConfig {
            heuristic,
            d,
            ppr: PprConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::InvalidConfig("d must be at least 1".into()));
        }
        self.ppr.validate()
    }
}

/// Selected terms with their scores.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RankedTerms(pub Vec<(String, f64)>);

impl RankedTerms {
    /// Keeps the `d` best of `scores` under the ranking order.
    pub fn top(mut scores: Vec<(String, f64)>, d: usize) -> Self {
        scores.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        scores.truncate(d);
        RankedTerms(scores)
    }

    pub fn ids(&self) -> Vec<String> {
        self.0.iter().map(|(id, _)| id.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True when the list is sorted by descending score, then ascending id,
    /// without repeated ids.
    pub fn is_well_ordered(&self) -> bool {
        self.0
            .windows(2)
            .all(|w| w[0].1 > w[1].1 || (w[0].1 == w[1].1 && w[0].0 < w[1].0))
    }
}

/// Terms with the smallest corpus counts; the score is the negated count.
pub fn select_rarest(graph: &CorpusGraph, d: usize) -> RankedTerms {
    let scores = graph
        .nodes
        .iter()
        .map(|t| {
            let count = graph.total_counts.get(t).copied().unwrap_or(0);
            (t.clone(), -(count as f64))
        })
        .collect();
    RankedTerms::top(scores, d)
}

pub fn select_betweenness(graph: &CorpusGraph, d: usize) -> RankedTerms {
    RankedTerms::top(betweenness(graph), d)
}

pub fn select_closeness(graph: &CorpusGraph, d: usize) -> RankedTerms {
    RankedTerms::top(closeness(graph), d)
}

pub fn select_mutual_info<L: Ord + Clone + Sync>(
    matrix: &crate::matrix::FeatureMatrix,
    labels: &[L],
    d: usize,
) -> Result<RankedTerms> {
    Ok(RankedTerms::top(mutual_info_scores(matrix, labels)?, d))
}

pub fn select_pagerank(graph: &CorpusGraph, d: usize, config: &PprConfig) -> Result<RankedTerms> {
    let run = personalized_pagerank(graph, config)?;
    Ok(RankedTerms::top(run.scores, d))
}
