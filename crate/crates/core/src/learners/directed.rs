//! Directed learner with in-degree at most Δ.

use itertools::Itertools;
use rayon::prelude::*;

use super::{certify, precheck, LearnOutcome, Refusal};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphKind};
use crate::observations::{score_bounds, TrainingSet};
use crate::system::ThresholdSystem;
use crate::Parallelism;

/// True iff some threshold over `{v} ∪ Y` reproduces every observed state of
/// `v`, i.e. `ℓ(v, {v} ∪ Y) < h(v, {v} ∪ Y)`.
pub fn threshold_consistent_via(obs: &TrainingSet, v: usize, y: &[usize]) -> Result<bool> {
    obs.check_vertex(v)?;
    if y.contains(&v) {
        return Err(Error::invalid(format!(
            "vertex {v} may not be in its own in-neighbor set"
        )));
    }
    for &u in y {
        obs.check_vertex(u)?;
    }
    let set = with_self(v, y);
    let (low, high) = score_bounds(obs, v, &set);
    Ok(low < high)
}

fn with_self(v: usize, y: &[usize]) -> Vec<usize> {
    let mut set = Vec::with_capacity(y.len() + 1);
    set.push(v);
    set.extend_from_slice(y);
    set.sort_unstable();
    set
}

/// First in-neighbor set (smallest size, then lexicographic) that works for
/// `v`, with its threshold.
fn first_neighborhood(obs: &TrainingSet, v: usize, delta: usize) -> Option<(Vec<usize>, i64)> {
    let others: Vec<usize> = (0..obs.n()).filter(|&u| u != v).collect();
    for size in 0..=delta.min(others.len()) {
        for y in others.iter().copied().combinations(size) {
            let set = with_self(v, &y);
            let (low, high) = score_bounds(obs, v, &set);
            if low < high {
                return Some((y, high));
            }
        }
    }
    None
}

/// Learns a directed system with in-degree at most `delta`, picking for each
/// vertex the canonically first in-neighbor set that admits a threshold.
pub fn learn_directed_bounded(n: usize, obs: &TrainingSet, delta: usize) -> Result<LearnOutcome> {
    learn_directed_bounded_with(n, obs, delta, Parallelism::Serial)
}

/// As [`learn_directed_bounded`], optionally fanning vertices out to worker
/// threads; the result does not depend on the mode.
pub fn learn_directed_bounded_with(
    n: usize,
    obs: &TrainingSet,
    delta: usize,
    parallelism: Parallelism,
) -> Result<LearnOutcome> {
    if let Some(r) = precheck(n, obs)? {
        return Ok(LearnOutcome::Refused(r));
    }
    let per_vertex: Vec<Option<(Vec<usize>, i64)>> = match parallelism {
        Parallelism::Serial => (0..n).map(|v| first_neighborhood(obs, v, delta)).collect(),
        Parallelism::Parallel => (0..n)
            .into_par_iter()
            .map(|v| first_neighborhood(obs, v, delta))
            .collect(),
    };
    let mut edges = Vec::new();
    let mut taus = Vec::with_capacity(n);
    for (v, found) in per_vertex.into_iter().enumerate() {
        let Some((y, tau)) = found else {
            return Ok(LearnOutcome::Refused(Refusal::NoNeighborhood { vertex: v, delta }));
        };
        edges.extend(y.into_iter().map(|u| (u, v)));
        taus.push(tau);
    }
    let graph = Graph::new(n, GraphKind::Directed, edges)?;
    certify(ThresholdSystem::with_clamped_thresholds(graph, taus)?, obs)
}
