//! Betweenness and closeness on the undirected view of the corpus graph.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;

use crate::corpus::CorpusGraph;

/// Sources per Brandes work unit. Fixed so that the floating-point summation
/// order does not depend on the number of threads.
const SOURCE_CHUNK: usize = 32;

/// Index-based adjacency built from a [`CorpusGraph`]. Node `i` is the
/// `i`-th id in lexicographic order.
#[derive(Debug, Clone)]
pub struct TermGraph {
    pub ids: Vec<String>,
    /// Undirected neighbours, sorted, without self-loops or duplicates.
    pub neighbors: Vec<Vec<usize>>,
    /// Directed child -> parent links.
    pub parents: Vec<Vec<usize>>,
}

impl TermGraph {
    pub fn new(graph: &CorpusGraph) -> Self {
        let ids: Vec<String> = graph.nodes.iter().cloned().collect();
        let index: HashMap<&str, usize> = ids
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let n = ids.len();
        let mut neighbors = vec![Vec::new(); n];
        let mut parents = vec![Vec::new(); n];
        for (child, parent) in &graph.edges {
            let (Some(&c), Some(&p)) = (index.get(child.as_str()), index.get(parent.as_str()))
            else {
                continue;
            };
            parents[c].push(p);
            if c != p {
                neighbors[c].push(p);
                neighbors[p].push(c);
            }
        }
        for list in neighbors.iter_mut().chain(parents.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        TermGraph {
            ids,
            neighbors,
            parents,
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    fn label(&self, scores: Vec<f64>) -> Vec<(String, f64)> {
        self.ids.iter().cloned().zip(scores).collect()
    }

    /// Brandes dependency accumulation from one source, added into `acc`.
    fn accumulate_from(&self, s: usize, acc: &mut [f64]) {
        let n = self.len();
        let mut order = Vec::with_capacity(n);
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut sigma = vec![0f64; n];
        let mut dist = vec![usize::MAX; n];
        sigma[s] = 1.0;
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &self.neighbors[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                    preds[w].push(v);
                }
            }
        }
        let mut delta = vec![0f64; n];
        while let Some(w) = order.pop() {
            for &v in &preds[w] {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if w != s {
                acc[w] += delta[w];
            }
        }
    }
}

/// Betweenness `sum over unordered pairs {u, v} of sigma_uv(t) / sigma_uv`,
/// per node in id order.
pub fn betweenness(graph: &CorpusGraph) -> Vec<(String, f64)> {
    let g = TermGraph::new(graph);
    let n = g.len();
    let sources: Vec<usize> = (0..n).collect();
    let partials: Vec<Vec<f64>> = sources
        .par_chunks(SOURCE_CHUNK)
        .map(|chunk| {
            let mut acc = vec![0f64; n];
            for &s in chunk {
                g.accumulate_from(s, &mut acc);
            }
            acc
        })
        .collect();
    let mut total = vec![0f64; n];
    for part in partials {
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
    }
    // Each unordered pair was counted from both endpoints.
    for t in &mut total {
        *t /= 2.0;
    }
    g.label(total)
}

/// Component-aware closeness: `(r - 1) / sum(dist) * (r - 1) / (n - 1)` with
/// `r` the size of the node's connected component. Isolated nodes score 0.
pub fn closeness(graph: &CorpusGraph) -> Vec<(String, f64)> {
    let g = TermGraph::new(graph);
    let n = g.len();
    let scores = (0..n)
        .into_par_iter()
        .map(|s| {
            let mut dist = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            let (mut reached, mut total) = (0usize, 0usize);
            while let Some(v) = queue.pop_front() {
                reached += 1;
                total += dist[v];
                for &w in &g.neighbors[v] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
            if reached <= 1 || total == 0 {
                return 0.0;
            }
            let r = (reached - 1) as f64;
            (r / total as f64) * (r / (n - 1) as f64)
        })
        .collect();
    g.label(scores)
}
