//! Seeded random threshold systems for experiments.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphKind};
use crate::rng::seeded_rng;
use crate::system::ThresholdSystem;

/// A random perfect matching on `n` (even) vertices; each threshold uniform
/// over its canonical range `0..=3`.
pub fn random_matching_system(n: usize, seed: u64) -> Result<ThresholdSystem> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::invalid(format!(
            "a perfect matching needs a positive even n (got {n})"
        )));
    }
    let mut rng = seeded_rng(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let edges = order.chunks(2).map(|p| (p[0], p[1]));
    let graph = Graph::new(n, GraphKind::Undirected, edges)?;
    let taus = (0..n).map(|_| rng.gen_range(0..=3)).collect();
    ThresholdSystem::new(graph, taus)
}

/// A random directed system: each vertex draws an in-degree uniform in
/// `0..=min(delta, n-1)`, then that many distinct in-neighbors, then a
/// threshold uniform over its canonical range.
pub fn random_directed_system(n: usize, delta: usize, seed: u64) -> Result<ThresholdSystem> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let mut rng = seeded_rng(seed);
    let mut edges = Vec::new();
    let mut taus = Vec::with_capacity(n);
    for v in 0..n {
        let others: Vec<usize> = (0..n).filter(|&u| u != v).collect();
        let d = rng.gen_range(0..=delta.min(others.len()));
        let chosen: Vec<usize> = others.choose_multiple(&mut rng, d).copied().collect();
        edges.extend(chosen.iter().map(|&u| (u, v)));
        taus.push(rng.gen_range(0..=d as i64 + 2));
    }
    ThresholdSystem::new(Graph::new(n, GraphKind::Directed, edges)?, taus)
}

/// A random undirected system: each pair is an edge with probability `p`;
/// thresholds uniform over the canonical range.
pub fn random_undirected_system(n: usize, p: f64, seed: u64) -> Result<ThresholdSystem> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("edge probability {p} is outside [0, 1]")));
    }
    let mut rng = seeded_rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    let graph = Graph::new(n, GraphKind::Undirected, edges)?;
    let taus = (0..n)
        .map(|v| rng.gen_range(0..=graph.closed_neighborhood(v).len() as i64 + 1))
        .collect();
    ThresholdSystem::new(graph, taus)
}
