//! Personalized PageRank over the directed (child -> parent) corpus graph,
//! restarting uniformly into the disambiguated seed terms.

use rayon::prelude::*;

use super::centrality::TermGraph;
use crate::corpus::CorpusGraph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PprConfig {
    /// Probability of following an edge instead of restarting.
    pub alpha: f64,
    /// Stop once the L1 change between iterates drops below this.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for PprConfig {
    fn default() -> Self {
        PprConfig {
            alpha: 0.85,
            tol: 1e-9,
            max_iter: 1000,
        }
    }
}

impl PprConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "pagerank alpha {} must lie in (0, 1)",
                self.alpha
            )));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::InvalidConfig(
                "pagerank tolerance must be positive".into(),
            ));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidConfig(
                "pagerank max_iter must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PprRun {
    /// Stationary probability per node, in id order.
    pub scores: Vec<(String, f64)>,
    pub iterations: usize,
    pub converged: bool,
}

/// Power iteration for
/// `pi = alpha * (P^T pi + dangling(pi) * v) + (1 - alpha) * v`,
/// where `v` is uniform over the seed terms and `dangling(pi)` is the mass
/// sitting on nodes without parents.
pub fn personalized_pagerank(graph: &CorpusGraph, config: &PprConfig) -> Result<PprRun> {
    config.validate()?;
    let g = TermGraph::new(graph);
    let n = g.len();

    let seeds: Vec<usize> = g
        .ids
        .iter()
        .enumerate()
        .filter(|(_, id)| graph.seed_terms.contains(*id))
        .map(|(i, _)| i)
        .collect();
    if seeds.is_empty() {
        return Err(Error::EmptySeedSet);
    }
    let mut restart = vec![0f64; n];
    for &s in &seeds {
        restart[s] = 1.0 / seeds.len() as f64;
    }

    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (c, ps) in g.parents.iter().enumerate() {
        for &p in ps {
            children[p].push(c);
        }
    }
    let out_degree: Vec<f64> = g.parents.iter().map(|p| p.len() as f64).collect();
    let dangling: Vec<usize> = (0..n).filter(|&i| g.parents[i].is_empty()).collect();

    let alpha = config.alpha;
    let mut pi = restart.clone();
    let mut iterations = 0;
    let mut converged = false;
    while iterations < config.max_iter {
        iterations += 1;
        let dangling_mass: f64 = dangling.iter().map(|&i| pi[i]).sum();
        let restart_weight = alpha * dangling_mass + (1.0 - alpha);
        let next: Vec<f64> = (0..n)
            .into_par_iter()
            .map(|i| {
                let inflow: f64 = children[i].iter().map(|&j| pi[j] / out_degree[j]).sum();
                alpha * inflow + restart_weight * restart[i]
            })
            .collect();
        let change: f64 = next.iter().zip(&pi).map(|(a, b)| (a - b).abs()).sum();
        pi = next;
        if change < config.tol {
            converged = true;
            break;
        }
    }

    Ok(PprRun {
        scores: g.ids.into_iter().zip(pi).collect(),
        iterations,
        converged,
    })
}
