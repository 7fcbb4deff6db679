//! The perfect-matching learner built on the threshold-compatibility graph.

use super::{certify, precheck, LearnOutcome, Refusal};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphKind};
use crate::matching::{is_perfect, max_cardinality_matching};
use crate::observations::{score_bounds, TrainingSet};
use crate::system::ThresholdSystem;

/// True iff ordering the pairs by `score(C, {u, v})` never orders the
/// successor states of `u` or `v` the other way. Within equal scores the
/// successors must therefore agree.
pub fn threshold_compatible(obs: &TrainingSet, u: usize, v: usize) -> Result<bool> {
    if u == v {
        return Err(Error::invalid("threshold compatibility needs two distinct vertices"));
    }
    obs.check_vertex(u)?;
    obs.check_vertex(v)?;
    Ok(compatible_unchecked(obs, u, v))
}

fn compatible_unchecked(obs: &TrainingSet, u: usize, v: usize) -> bool {
    // For each score 0..=2, the lowest and highest successor state seen.
    for x in [u, v] {
        let mut lo = [1u8; 3];
        let mut hi = [0u8; 3];
        for p in obs {
            let s = p.predecessor.get(u) as usize + p.predecessor.get(v) as usize;
            let out = p.successor.get(x) as u8;
            lo[s] = lo[s].min(out);
            hi[s] = hi[s].max(out);
        }
        if (0..3).any(|s| lo[s..].iter().any(|&l| hi[s] > l)) {
            return false;
        }
    }
    true
}

/// Undirected graph with an edge for every threshold-compatible pair.
pub fn compatibility_graph(n: usize, obs: &TrainingSet) -> Result<Graph> {
    if obs.n() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: obs.n(),
        });
    }
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| compatible_unchecked(obs, u, v));
    Graph::new(n, GraphKind::Undirected, edges)
}

/// Learns a system whose graph is a perfect matching, or refuses when the
/// compatibility graph has no perfect matching (then no such system exists).
pub fn learn_matching(n: usize, obs: &TrainingSet) -> Result<LearnOutcome> {
    if let Some(r) = precheck(n, obs)? {
        return Ok(LearnOutcome::Refused(r));
    }
    if n % 2 == 1 {
        return Ok(LearnOutcome::Refused(Refusal::OddVertexCount { n }));
    }
    let compat = compatibility_graph(n, obs)?;
    let m = max_cardinality_matching(&compat);
    if !is_perfect(&m, n) {
        return Ok(LearnOutcome::Refused(Refusal::NoPerfectMatching));
    }
    let mut taus = vec![0i64; n];
    for &(u, v) in m.edges() {
        let pair = [u, v];
        for x in pair {
            let (_, high) = score_bounds(obs, x, &pair);
            // Never firing on a matching edge is threshold 3.
            taus[x] = if high > 2 { 3 } else { high };
        }
    }
    let graph = Graph::new(n, GraphKind::Undirected, m.edges().iter().copied())?;
    certify(ThresholdSystem::new(graph, taus)?, obs)
}
