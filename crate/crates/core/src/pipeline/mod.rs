//! Fit/transform orchestration.
//!
//! `fit` maps every document onto the taxonomy (in parallel), merges the
//! results into a [`CorpusGraph`], selects `d` terms and freezes their
//! document frequencies in a [`FittedModel`]. `transform` replays the
//! document mapping for new text and weights it with the frozen statistics.

mod model;
mod report;

use crate::corpus::{map_documents, merge, CorpusGraph, DocTermCounts};
use crate::error::{Error, Result};
use crate::matrix::FeatureMatrix;
use crate::selection::{self, Heuristic, RankedTerms, SelectionConfig};
use crate::taxonomy::Taxonomy;
use crate::weighting::{build_matrix, DEFAULT_K};
use crate::wsd::{Disambiguator, WsdConfig};

pub use model::{FittedModel, ModelConfig, ModelTerm, MODEL_VERSION};
pub use report::{class_report, inspect_report};

#[derive(Debug, Clone)]
pub struct FitConfig {
    pub wsd: WsdConfig,
    pub k: f64,
    pub selection: SelectionConfig,
    /// Maximum hypernym hops kept above each disambiguated sense.
    pub depth_cutoff: Option<u32>,
    pub workers: usize,
}

impl FitConfig {
    pub fn new(heuristic: Heuristic, d: usize) -> Self {
        FitConfig {
            wsd: WsdConfig::default(),
            k: DEFAULT_K,
            selection: SelectionConfig::new(heuristic, d),
            depth_cutoff: None,
            workers: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.wsd.validate()?;
        self.selection.validate()?;
        if !(0.0..=1.0).contains(&self.k) {
            return Err(Error::InvalidConfig(format!(
                "k = {} outside [0, 1]",
                self.k
            )));
        }
        if self.workers == 0 {
            return Err(Error::InvalidConfig("workers must be at least 1".into()));
        }
        Ok(())
    }

    fn model_config(&self) -> ModelConfig {
        ModelConfig {
            k: self.k,
            heuristic: self.selection.heuristic,
            d: self.selection.d,
            window: self.wsd.window,
            depth_cutoff: self.depth_cutoff,
            clean_social: self.wsd.clean_social,
            ppr_alpha: self.selection.ppr.alpha,
            ppr_tol: self.selection.ppr.tol,
            ppr_max_iter: self.selection.ppr.max_iter,
            stopwords: self.wsd.stopwords.iter().cloned().collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Fitted {
    pub model: FittedModel,
    /// Training documents over the selected terms, in model term order.
    pub matrix: FeatureMatrix,
    pub graph: CorpusGraph,
    pub ranked: RankedTerms,
    pub warnings: Vec<String>,
}

/// Runs `f` on a dedicated pool with `workers` threads.
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if workers == 0 {
        return Err(Error::InvalidConfig("workers must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn document_counts<S: AsRef<str> + Sync>(
    texts: &[S],
    taxonomy: &Taxonomy,
    wsd: &WsdConfig,
    depth_cutoff: Option<u32>,
) -> Result<Vec<crate::corpus::DocumentTaxonomy>> {
    let disambiguator = Disambiguator::new(taxonomy, wsd);
    map_documents(texts, &disambiguator, wsd, depth_cutoff)
}

/// Maps and merges a corpus without selecting or weighting anything.
pub fn corpus_graph<S: AsRef<str> + Sync>(
    texts: &[S],
    taxonomy: &Taxonomy,
    wsd: &WsdConfig,
    depth_cutoff: Option<u32>,
    workers: usize,
) -> Result<CorpusGraph> {
    wsd.validate()?;
    with_workers(workers, || {
        let docs = document_counts(texts, taxonomy, wsd, depth_cutoff)?;
        merge(&docs, texts.len())
    })?
}

pub fn fit<S: AsRef<str> + Sync>(
    texts: &[S],
    labels: Option<&[String]>,
    taxonomy: &Taxonomy,
    config: &FitConfig,
) -> Result<Fitted> {
    config.validate()?;
    if texts.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let heuristic = config.selection.heuristic;
    if heuristic.needs_labels() && labels.is_none() {
        return Err(Error::LabelsRequired);
    }
    if let Some(labels) = labels {
        if labels.len() != texts.len() {
            return Err(Error::LabelCountMismatch {
                labels: labels.len(),
                rows: texts.len(),
            });
        }
    }

    with_workers(config.workers, || {
        let docs = document_counts(texts, taxonomy, &config.wsd, config.depth_cutoff)?;
        let graph = merge(&docs, texts.len())?;
        let counts: Vec<DocTermCounts> = docs.into_iter().map(|d| d.counts).collect();
        let mut warnings = Vec::new();

        let d = config.selection.d;
        let ranked = if graph.nodes.is_empty() {
            warnings
                .push("no word in the corpus maps to the taxonomy; the model has no terms".into());
            RankedTerms::default()
        } else {
            match heuristic {
                Heuristic::Rarest => selection::select_rarest(&graph, d),
                Heuristic::Betweenness => selection::select_betweenness(&graph, d),
                Heuristic::Closeness => selection::select_closeness(&graph, d),
                Heuristic::Pagerank => {
                    selection::select_pagerank(&graph, d, &config.selection.ppr)?
                }
                Heuristic::MutualInfo => {
                    let all: Vec<String> = graph.nodes.iter().cloned().collect();
                    let full = build_matrix(&graph, &counts, &all, config.k)?;
                    selection::select_mutual_info(&full, labels.expect("checked above"), d)?
                }
            }
        };

        let model = FittedModel {
            version: MODEL_VERSION.into(),
            config: config.model_config(),
            n_docs_train: texts.len() as u64,
            terms: ranked
                .0
                .iter()
                .map(|(id, score)| ModelTerm {
                    id: id.clone(),
                    n_t: graph.doc_freq[id],
                    score: *score,
                })
                .collect(),
            taxonomy_fingerprint: taxonomy.fingerprint().to_owned(),
        };
        let matrix = model.idf_table().weigh(&counts, config.k);
        Ok(Fitted {
            model,
            matrix,
            graph,
            ranked,
            warnings,
        })
    })?
}

/// Projects new documents onto a fitted model's terms using the stored
/// document frequencies.
pub fn transform<S: AsRef<str> + Sync>(
    model: &FittedModel,
    texts: &[S],
    taxonomy: &Taxonomy,
    workers: usize,
) -> Result<FeatureMatrix> {
    if model.taxonomy_fingerprint != taxonomy.fingerprint() {
        return Err(Error::FingerprintMismatch {
            expected: model.taxonomy_fingerprint.clone(),
            actual: taxonomy.fingerprint().to_owned(),
        });
    }
    if model.terms.is_empty() {
        return Err(Error::EmptyModel);
    }
    let wsd = model.config.wsd();
    with_workers(workers, || {
        let docs = document_counts(texts, taxonomy, &wsd, model.config.depth_cutoff)?;
        let counts: Vec<DocTermCounts> = docs.into_iter().map(|d| d.counts).collect();
        Ok(model.idf_table().weigh(&counts, model.config.k))
    })?
}

/// Prefix applied to the columns of the external matrix in [`concat`].
pub const EXTERNAL_PREFIX: &str = "ext:";

/// Appends semantic columns after the external ones. External column names
/// get the [`EXTERNAL_PREFIX`]; semantic ids are kept as they are.
pub fn concat(semantic: &FeatureMatrix, external: &FeatureMatrix) -> Result<FeatureMatrix> {
    if semantic.n_rows != external.n_rows {
        return Err(Error::RowCountMismatch {
            left: semantic.n_rows,
            right: external.n_rows,
        });
    }
    let offset = external.n_cols();
    let columns = external
        .columns
        .iter()
        .map(|c| format!("{EXTERNAL_PREFIX}{c}"))
        .chain(semantic.columns.iter().cloned())
        .collect();
    let entries = external
        .entries
        .iter()
        .copied()
        .chain(semantic.entries.iter().map(|&(r, c, v)| (r, c + offset, v)))
        .collect();
    FeatureMatrix::from_entries(semantic.n_rows, columns, entries)
}
