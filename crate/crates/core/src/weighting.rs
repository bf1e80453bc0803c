//! Double-normalized tf-idf over taxonomy terms.

use rayon::prelude::*;

use crate::corpus::{CorpusGraph, DocTermCounts};
use crate::error::{Error, Result};
use crate::matrix::FeatureMatrix;

/// Default double-normalization constant.
pub const DEFAULT_K: f64 = 0.5;

/// `(k + (1 - k) * f_td / f_max) * ln(n_docs / n_t)`.
///
/// Panics if `f_td > f_max`, `f_max == 0`, `n_t == 0`, `n_t > n_docs` or
/// `k` is outside `[0, 1]`.
pub fn tfidf_value(f_td: u64, f_max: u64, n_docs: u64, n_t: u64, k: f64) -> f64 {
    assert!(f_max > 0 && f_td <= f_max, "need 0 < f_td <= f_max");
    assert!(n_t >= 1 && n_t <= n_docs, "need 1 <= n_t <= n_docs");
    assert!((0.0..=1.0).contains(&k), "k must lie in [0, 1]");
    let tf = k + (1.0 - k) * (f_td as f64 / f_max as f64);
    let idf = (n_docs as f64 / n_t as f64).ln();
    tf * idf
}

/// Document frequencies of the columns of a feature space.
#[derive(Debug, Clone, PartialEq)]
pub struct IdfTable {
    pub n_docs: u64,
    pub columns: Vec<String>,
    pub doc_freq: Vec<u64>,
}

impl IdfTable {
    pub fn from_graph(graph: &CorpusGraph, columns: &[String]) -> Result<Self> {
        let doc_freq = columns
            .iter()
            .map(|c| {
                graph
                    .doc_freq
                    .get(c)
                    .copied()
                    .ok_or_else(|| Error::UnknownColumn(c.clone()))
            })
            .collect::<Result<_>>()?;
        Ok(IdfTable {
            n_docs: graph.n_docs as u64,
            columns: columns.to_vec(),
            doc_freq,
        })
    }

    /// Weights `docs` (one row each, in slice order). `f_max` is taken over
    /// each document's full term set, not only the table's columns.
    pub fn weigh(&self, docs: &[DocTermCounts], k: f64) -> FeatureMatrix {
        let rows: Vec<Vec<(usize, usize, f64)>> = docs
            .par_iter()
            .enumerate()
            .map(|(row, doc)| {
                let Some(f_max) = doc.max_count() else {
                    return Vec::new();
                };
                self.columns
                    .iter()
                    .zip(&self.doc_freq)
                    .enumerate()
                    .filter_map(|(col, (term, &n_t))| {
                        let f = doc.counts.get(term).copied().unwrap_or(0);
                        if f == 0 {
                            return None;
                        }
                        let v = tfidf_value(f, f_max, self.n_docs, n_t, k);
                        (v > 0.0).then_some((row, col, v))
                    })
                    .collect()
            })
            .collect();
        FeatureMatrix {
            n_rows: docs.len(),
            columns: self.columns.clone(),
            entries: rows.into_iter().flatten().collect(),
        }
    }
}

/// Builds the tf-idf matrix for `columns` using the corpus statistics.
pub fn build_matrix(
    graph: &CorpusGraph,
    docs: &[DocTermCounts],
    columns: &[String],
    k: f64,
) -> Result<FeatureMatrix> {
    if !(0.0..=1.0).contains(&k) {
        return Err(Error::InvalidConfig(format!("k = {k} outside [0, 1]")));
    }
    Ok(IdfTable::from_graph(graph, columns)?.weigh(docs, k))
}
