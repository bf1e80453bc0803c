//! Corpus graph diagnostics: hypernym frequency table and connected
//! components.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::corpus::CorpusGraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyRow {
    pub id: String,
    pub total_count: u64,
    pub doc_freq: u64,
}

/// One row per node, by descending total count then id.
pub fn frequency_table(graph: &CorpusGraph) -> Vec<FrequencyRow> {
    let mut rows: Vec<FrequencyRow> = graph
        .nodes
        .iter()
        .map(|id| FrequencyRow {
            id: id.clone(),
            total_count: graph.total_counts.get(id).copied().unwrap_or(0),
            doc_freq: graph.doc_freq.get(id).copied().unwrap_or(0),
        })
        .collect();
    rows.sort_by(|a, b| {
        b.total_count
            .cmp(&a.total_count)
            .then_with(|| a.id.cmp(&b.id))
    });
    rows
}

pub fn frequency_tsv(rows: &[FrequencyRow]) -> String {
    let mut out = String::from("term_id\ttotal_count\tdoc_freq\n");
    for r in rows {
        let _ = writeln!(out, "{}\t{}\t{}", r.id, r.total_count, r.doc_freq);
    }
    out
}

/// Undirected connected components, largest first (ties by smallest
/// member), members sorted.
pub fn components(graph: &CorpusGraph) -> Vec<Vec<String>> {
    let ids: Vec<&str> = graph.nodes.iter().map(String::as_str).collect();
    let index: HashMap<&str, usize> = ids.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut parent: Vec<usize> = (0..ids.len()).collect();

    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }

    for (a, b) in &graph.edges {
        if let (Some(&a), Some(&b)) = (index.get(a.as_str()), index.get(b.as_str())) {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for (i, id) in ids.iter().enumerate() {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push((*id).to_owned());
    }
    let mut out: Vec<Vec<String>> = groups.into_values().collect();
    out.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a[0].cmp(&b[0])));
    out
}

pub fn components_tsv(components: &[Vec<String>]) -> String {
    let mut out = String::from("component_index\tsize\tmembers\n");
    for (i, c) in components.iter().enumerate() {
        let _ = writeln!(out, "{}\t{}\t{}", i, c.len(), c.join(","));
    }
    out
}
