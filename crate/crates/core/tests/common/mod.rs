//! Shared generators and brute-force oracles for the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use taxofeat_core::corpus::CorpusGraph;
use taxofeat_core::Taxonomy;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const CONSONANTS: &[u8] = b"bdfgklmnprstvz";
const VOWELS: &[u8] = b"aeiou";

/// Distinct pronounceable six-letter word for every `i < 70^3`.
pub fn word(i: usize) -> String {
    let mut s = String::with_capacity(6);
    let mut x = i;
    for _ in 0..3 {
        let syl = x % 70;
        x /= 70;
        s.push(CONSONANTS[syl % 14] as char);
        s.push(VOWELS[syl / 14] as char);
    }
    s
}

/// Random DAG as parent lists; parents always precede children.
pub fn random_dag(rng: &mut ChaCha8Rng, n: usize, edge_p: f64) -> Vec<Vec<usize>> {
    (0..n)
        .map(|i| {
            let mut ps: Vec<usize> = (0..i).filter(|_| rng.gen_bool(edge_p)).collect();
            ps.truncate(3);
            ps
        })
        .collect()
}

/// Corpus graph over a random DAG with shuffled node names, random counts
/// and a nonempty random seed set.
pub fn random_corpus_graph(rng: &mut ChaCha8Rng, n: usize) -> CorpusGraph {
    let edge_p = rng.gen_range(0.02..0.3);
    let parents = random_dag(rng, n, edge_p);
    let mut names: Vec<String> = (0..n).map(|i| format!("t{i:02}.n.01")).collect();
    names.shuffle(rng);
    let n_docs = rng.gen_range(1..6usize);
    let mut g = CorpusGraph {
        n_docs,
        ..CorpusGraph::default()
    };
    for (i, ps) in parents.iter().enumerate() {
        g.nodes.insert(names[i].clone());
        for &p in ps {
            g.edges.insert((names[i].clone(), names[p].clone()));
        }
        let df = rng.gen_range(1..=n_docs as u64);
        g.doc_freq.insert(names[i].clone(), df);
        g.total_counts
            .insert(names[i].clone(), df + rng.gen_range(0..4));
    }
    let n_seeds = rng.gen_range(1..=n.min(5));
    for name in names.choose_multiple(rng, n_seeds) {
        g.seed_terms.insert(name.clone());
    }
    g
}

pub struct Adjacency {
    pub ids: Vec<String>,
    pub undirected: Vec<BTreeSet<usize>>,
    /// child -> parents
    pub out: Vec<BTreeSet<usize>>,
}

pub fn adjacency(g: &CorpusGraph) -> Adjacency {
    let ids: Vec<String> = g.nodes.iter().cloned().collect();
    let pos: BTreeMap<&str, usize> = ids
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i))
        .collect();
    let mut undirected = vec![BTreeSet::new(); ids.len()];
    let mut out = vec![BTreeSet::new(); ids.len()];
    for (c, p) in &g.edges {
        let (c, p) = (pos[c.as_str()], pos[p.as_str()]);
        undirected[c].insert(p);
        undirected[p].insert(c);
        out[c].insert(p);
    }
    Adjacency {
        ids,
        undirected,
        out,
    }
}

/// Distances and shortest-path counts from `s`.
pub fn bfs_counts(adj: &[BTreeSet<usize>], s: usize) -> (Vec<Option<usize>>, Vec<f64>) {
    let mut dist = vec![None; adj.len()];
    let mut sigma = vec![0.0; adj.len()];
    dist[s] = Some(0);
    sigma[s] = 1.0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &v in &adj[u] {
            match dist[v] {
                None => {
                    dist[v] = Some(du + 1);
                    sigma[v] = sigma[u];
                    queue.push_back(v);
                }
                Some(dv) if dv == du + 1 => sigma[v] += sigma[u],
                _ => {}
            }
        }
    }
    (dist, sigma)
}

/// Betweenness by enumerating every unordered pair and every intermediate
/// node: `sigma_uv(t) = sigma_ut * sigma_tv` when `t` lies on a geodesic.
pub fn betweenness_oracle(g: &CorpusGraph) -> BTreeMap<String, f64> {
    let a = adjacency(g);
    let n = a.ids.len();
    let all: Vec<_> = (0..n).map(|s| bfs_counts(&a.undirected, s)).collect();
    let mut bc = vec![0.0; n];
    for u in 0..n {
        for v in u + 1..n {
            let Some(duv) = all[u].0[v] else { continue };
            for t in 0..n {
                if t == u || t == v {
                    continue;
                }
                if let (Some(dut), Some(dtv)) = (all[u].0[t], all[t].0[v]) {
                    if dut + dtv == duv {
                        bc[t] += all[u].1[t] * all[t].1[v] / all[u].1[v];
                    }
                }
            }
        }
    }
    a.ids.into_iter().zip(bc).collect()
}

pub fn closeness_oracle(g: &CorpusGraph) -> BTreeMap<String, f64> {
    let a = adjacency(g);
    let n = a.ids.len();
    (0..n)
        .map(|s| {
            let (dist, _) = bfs_counts(&a.undirected, s);
            let reach: Vec<usize> = dist.iter().flatten().copied().collect();
            let r = reach.len();
            let total: usize = reach.iter().sum();
            let score = if r <= 1 || n <= 1 {
                0.0
            } else {
                ((r - 1) as f64 / total as f64) * ((r - 1) as f64 / (n - 1) as f64)
            };
            (a.ids[s].clone(), score)
        })
        .collect()
}

/// Solves `(I - alpha*P^T - alpha*v*dangling^T) pi = (1 - alpha) v` densely.
pub fn pagerank_oracle(g: &CorpusGraph, alpha: f64) -> BTreeMap<String, f64> {
    use nalgebra::{DMatrix, DVector};
    let a = adjacency(g);
    let n = a.ids.len();
    let seeds: Vec<usize> = (0..n)
        .filter(|&i| g.seed_terms.contains(&a.ids[i]))
        .collect();
    let mut v = DVector::zeros(n);
    for &s in &seeds {
        v[s] = 1.0 / seeds.len() as f64;
    }
    let mut m = DMatrix::<f64>::identity(n, n);
    for j in 0..n {
        if a.out[j].is_empty() {
            for i in 0..n {
                m[(i, j)] -= alpha * v[i];
            }
        } else {
            let w = 1.0 / a.out[j].len() as f64;
            for &i in &a.out[j] {
                m[(i, j)] -= alpha * w;
            }
        }
    }
    let pi = m.lu().solve(&(v * (1.0 - alpha))).expect("nonsingular");
    a.ids.into_iter().zip(pi.iter().copied()).collect()
}

/// Mutual information of a binary column against one-hot classes, from the
/// explicit 2x2 joint probability table.
pub fn mi_oracle(column: &[bool], labels: &[usize], class: usize) -> f64 {
    let n = column.len() as f64;
    let mut joint = [[0.0f64; 2]; 2];
    for (&x, &y) in column.iter().zip(labels) {
        joint[x as usize][(y == class) as usize] += 1.0 / n;
    }
    let px = [joint[0][0] + joint[0][1], joint[1][0] + joint[1][1]];
    let py = [joint[0][0] + joint[1][0], joint[0][1] + joint[1][1]];
    let mut mi = 0.0;
    for x in 0..2 {
        for y in 0..2 {
            let p = joint[x][y];
            if p > 0.0 {
                mi += p * (p / (px[x] * py[y])).log2();
            }
        }
    }
    mi
}

/// Portable taxonomy text with `n` noun synsets over a random DAG. About a
/// quarter of the lemmas are shared between two synsets so the Lesk step
/// has real choices to make; glosses reuse vocabulary words.
pub fn synthetic_taxonomy(rng: &mut ChaCha8Rng, n: usize) -> (String, Vec<String>) {
    let parents = random_dag(rng, n, 0.15);
    let vocab_size = (n * 3 / 4).max(1);
    let vocab: Vec<String> = (0..vocab_size).map(word).collect();
    let mut sense_count: BTreeMap<usize, u32> = BTreeMap::new();
    let mut ids: Vec<String> = Vec::with_capacity(n);
    let mut out = String::new();
    for i in 0..n {
        let lemma = if i < vocab_size {
            i
        } else {
            rng.gen_range(0..vocab_size)
        };
        let rank = sense_count.entry(lemma).or_default();
        *rank += 1;
        let id = format!("{}.n.{:02}", vocab[lemma], rank);
        let gloss: Vec<&str> = (0..rng.gen_range(2..6))
            .map(|_| vocab[rng.gen_range(0..vocab_size)].as_str())
            .collect();
        let example: Vec<&str> = (0..3)
            .map(|_| vocab[rng.gen_range(0..vocab_size)].as_str())
            .collect();
        let hypers: Vec<&str> = parents[i].iter().map(|&p| ids[p].as_str()).collect();
        let hypers = hypers.join(",");
        out.push_str(&format!(
            "{id}\tn\t{}:{}\tthe {}\t{}\t{}\n",
            vocab[lemma],
            rank,
            gloss.join(" "),
            example.join(" "),
            hypers
        ));
        ids.push(id);
    }
    (out, vocab)
}

/// Documents drawn from the vocabulary plus stopwords and unknown words,
/// with labels from `n_classes` classes (every class used when possible).
pub fn synthetic_corpus(
    rng: &mut ChaCha8Rng,
    vocab: &[String],
    n_docs: usize,
    n_classes: usize,
) -> (Vec<String>, Vec<String>) {
    let filler = ["the", "and", "of", "qwxz", "Unknown", "with"];
    let mut texts = Vec::with_capacity(n_docs);
    let mut labels = Vec::with_capacity(n_docs);
    for i in 0..n_docs {
        let class = if i < n_classes {
            i
        } else {
            rng.gen_range(0..n_classes)
        };
        // Class-dependent vocabulary slice so mutual information has signal.
        let lo = class * vocab.len() / n_classes / 2;
        let len = rng.gen_range(3..15);
        let words: Vec<String> = (0..len)
            .map(|_| {
                if rng.gen_bool(0.2) {
                    filler[rng.gen_range(0..filler.len())].to_string()
                } else if rng.gen_bool(0.5) {
                    vocab[(lo + rng.gen_range(0..vocab.len() / 2 + 1)) % vocab.len()].clone()
                } else {
                    vocab[rng.gen_range(0..vocab.len())].clone()
                }
            })
            .collect();
        texts.push(words.join(" "));
        labels.push(format!("c{class}"));
    }
    (texts, labels)
}

/// The four-animal taxonomy and two-document corpus used for the
/// hand-computed weighting fixtures.
pub const ANIMALS: &str = "entity.n.01\tn\tentity\tthat which exists\t\t\n\
animal.n.01\tn\tanimal\ta living organism\t\tentity.n.01\n\
dog.n.01\tn\tdog\ta domestic canine\t\tanimal.n.01\n\
cat.n.01\tn\tcat\ta small feline\t\tanimal.n.01\n";

pub const TOY_DOCS: [&str; 2] = ["dog dog", "dog cat"];

pub fn animals() -> Taxonomy {
    Taxonomy::parse_portable(ANIMALS).unwrap()
}
