//! Document-level hypernym counting and the merged corpus graph.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::wsd::{tokenize, Disambiguator, Token};

/// Per-document term counts `f(t, D)`: how many word occurrences in the
/// document generalize to `t` (the disambiguated sense itself included).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DocTermCounts {
    pub doc_id: usize,
    pub counts: BTreeMap<String, u64>,
}

impl DocTermCounts {
    /// Largest count in the document, `None` for an empty document.
    pub fn max_count(&self) -> Option<u64> {
        self.counts.values().copied().max()
    }
}

/// Taxonomy slice induced by one document.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DocumentTaxonomy {
    pub nodes: BTreeSet<String>,
    /// `(child, parent)` hypernym links among `nodes`.
    pub edges: BTreeSet<(String, String)>,
    pub counts: DocTermCounts,
    /// Senses chosen directly by disambiguation.
    pub seeds: BTreeSet<String>,
}

/// Maps the content tokens of one document onto the taxonomy.
///
/// Every occurrence adds one to each member of its sense's hypernym closure,
/// at most once per member even when several paths lead there. With
/// `depth_cutoff = Some(k)` only terms at most `k` hops above the sense are
/// kept.
pub fn build_document_taxonomy(
    doc_id: usize,
    tokens: &[Token],
    wsd: &Disambiguator<'_>,
    depth_cutoff: Option<u32>,
) -> Result<DocumentTaxonomy> {
    let taxonomy = wsd.taxonomy();
    let mut closures: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut counts: HashMap<usize, u64> = HashMap::new();
    let mut seeds = BTreeSet::new();

    for i in 0..tokens.len() {
        let Some(sense) = wsd.disambiguate(tokens, i)? else {
            continue;
        };
        seeds.insert(sense);
        let closure = closures.entry(sense).or_insert_with(|| {
            taxonomy
                .closure_with_depth(sense)
                .into_iter()
                .filter(|&(_, depth)| depth_cutoff.is_none_or(|k| depth <= k))
                .map(|(idx, _)| idx)
                .collect()
        });
        for &term in closure.iter() {
            *counts.entry(term).or_default() += 1;
        }
    }

    let mut edges = BTreeSet::new();
    for &node in counts.keys() {
        for &parent in taxonomy.parents_of(node) {
            if counts.contains_key(&parent) {
                edges.insert((
                    taxonomy.synset(node).id.clone(),
                    taxonomy.synset(parent).id.clone(),
                ));
            }
        }
    }

    let counts: BTreeMap<String, u64> = counts
        .into_iter()
        .map(|(idx, c)| (taxonomy.synset(idx).id.clone(), c))
        .collect();
    Ok(DocumentTaxonomy {
        nodes: counts.keys().cloned().collect(),
        edges,
        counts: DocTermCounts { doc_id, counts },
        seeds: seeds
            .into_iter()
            .map(|idx| taxonomy.synset(idx).id.clone())
            .collect(),
    })
}

/// Tokenizes `text` and maps it onto the taxonomy.
pub fn map_document(
    doc_id: usize,
    text: &str,
    wsd: &Disambiguator<'_>,
    config: &crate::wsd::WsdConfig,
    depth_cutoff: Option<u32>,
) -> Result<DocumentTaxonomy> {
    let tokens = tokenize(text, config);
    build_document_taxonomy(doc_id, &tokens, wsd, depth_cutoff)
}

/// Maps every document in parallel on the current rayon pool. Output is in
/// document order.
pub fn map_documents<S: AsRef<str> + Sync>(
    texts: &[S],
    wsd: &Disambiguator<'_>,
    config: &crate::wsd::WsdConfig,
    depth_cutoff: Option<u32>,
) -> Result<Vec<DocumentTaxonomy>> {
    texts
        .par_iter()
        .enumerate()
        .map(|(doc_id, text)| map_document(doc_id, text.as_ref(), wsd, config, depth_cutoff))
        .collect()
}

/// The corpus-level hypernym graph with aggregate statistics.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CorpusGraph {
    pub nodes: BTreeSet<String>,
    /// `(child, parent)` pairs.
    pub edges: BTreeSet<(String, String)>,
    /// Sum of `f(t, D)` over documents.
    pub total_counts: BTreeMap<String, u64>,
    /// Number of documents whose counts contain `t`.
    pub doc_freq: BTreeMap<String, u64>,
    pub seed_terms: BTreeSet<String>,
    pub n_docs: usize,
}

impl CorpusGraph {
    /// Checks the structural invariants; returns a description of the first
    /// violation.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        for (t, &df) in &self.doc_freq {
            if df as usize > self.n_docs {
                return Err(format!(
                    "doc_freq[{t}] = {df} exceeds n_docs = {}",
                    self.n_docs
                ));
            }
            if self.total_counts.get(t).copied().unwrap_or(0) < df {
                return Err(format!("total_counts[{t}] < doc_freq[{t}]"));
            }
        }
        if let Some(s) = self.seed_terms.iter().find(|s| !self.nodes.contains(*s)) {
            return Err(format!("seed {s} is not a node"));
        }
        if let Some((c, p)) = self
            .edges
            .iter()
            .find(|(c, p)| !self.nodes.contains(c) || !self.nodes.contains(p))
        {
            return Err(format!("edge ({c}, {p}) leaves the node set"));
        }
        Ok(())
    }
}

/// Partially merged corpus; merging is commutative and associative.
#[derive(Debug, Clone, Default)]
struct Partial {
    docs: BTreeSet<usize>,
    graph: CorpusGraph,
}

impl Partial {
    fn from_doc(doc: &DocumentTaxonomy) -> Self {
        let mut graph = CorpusGraph {
            nodes: doc.nodes.clone(),
            edges: doc.edges.clone(),
            seed_terms: doc.seeds.clone(),
            ..CorpusGraph::default()
        };
        for (t, &c) in &doc.counts.counts {
            graph.total_counts.insert(t.clone(), c);
            graph.doc_freq.insert(t.clone(), 1);
        }
        Partial {
            docs: BTreeSet::from([doc.counts.doc_id]),
            graph,
        }
    }

    fn combine(mut self, other: Partial) -> Result<Partial> {
        if let Some(&dup) = self.docs.intersection(&other.docs).next() {
            return Err(Error::DuplicateDocument(dup));
        }
        self.docs.extend(other.docs);
        let g = &mut self.graph;
        let o = other.graph;
        g.nodes.extend(o.nodes);
        g.edges.extend(o.edges);
        g.seed_terms.extend(o.seed_terms);
        for (t, c) in o.total_counts {
            *g.total_counts.entry(t).or_default() += c;
        }
        for (t, c) in o.doc_freq {
            *g.doc_freq.entry(t).or_default() += c;
        }
        Ok(self)
    }
}

/// Joins per-document results into the corpus graph. `docs` must carry each
/// id in `0..n_docs` exactly once.
pub fn merge(docs: &[DocumentTaxonomy], n_docs: usize) -> Result<CorpusGraph> {
    if let Some(doc) = docs.iter().find(|d| d.counts.doc_id >= n_docs) {
        return Err(Error::DocumentOutOfRange {
            doc_id: doc.counts.doc_id,
            n_docs,
        });
    }
    let merged = docs
        .par_iter()
        .map(|d| Ok(Partial::from_doc(d)))
        .try_reduce(Partial::default, Partial::combine)?;
    if merged.docs.len() != n_docs {
        return Err(Error::MissingDocuments {
            expected: n_docs,
            got: merged.docs.len(),
        });
    }
    let mut graph = merged.graph;
    graph.n_docs = n_docs;
    Ok(graph)
}
