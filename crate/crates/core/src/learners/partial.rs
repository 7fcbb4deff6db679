//! Learner for a partially observed graph missing at most `k` edges, at most
//! one per vertex.
//!
//! Vertices whose observed neighborhood already forces `ℓ = h` need exactly
//! one more edge (`V′`); `ℓ > h` would need two (`V″`). Candidate repairs are
//! weighted `t = |V′|` when they fix one `V′` vertex and `2t + 1` when they fix
//! two, so a maximum-weight matching covers as much of `V′` as possible with
//! as few edges as possible.

use super::{certify, precheck, LearnOutcome, Refusal};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphKind};
use crate::matching::{max_weight_matching, Matching, WeightedGraph};
use crate::observations::{score_bounds, TrainingSet};
use crate::system::ThresholdSystem;

/// An observed graph that may be missing up to `k` true edges, with at most
/// `cap` missing edges at any vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialInstance {
    g_obs: Graph,
    k: usize,
    cap: usize,
}

impl PartialInstance {
    pub fn new(g_obs: Graph, k: usize, cap: usize) -> Result<Self> {
        if g_obs.kind() != GraphKind::Undirected {
            return Err(Error::invalid("observed graph must be undirected"));
        }
        if cap == 1 && k > g_obs.n() / 2 {
            return Err(Error::invalid(format!(
                "k = {k} exceeds n/2 = {} with one missing edge per vertex",
                g_obs.n() / 2
            )));
        }
        Ok(PartialInstance { g_obs, k, cap })
    }

    pub fn g_obs(&self) -> &Graph {
        &self.g_obs
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn cap(&self) -> usize {
        self.cap
    }
}

/// Intermediate quantities of the partial learner, exposed for inspection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialAnalysis {
    /// `ℓ(v, N⁺(G_obs, v))` per vertex.
    pub low: Vec<i64>,
    /// `h(v, N⁺(G_obs, v))` per vertex.
    pub high: Vec<i64>,
    pub v_prime: Vec<usize>,
    pub v_double_prime: Vec<usize>,
    /// `|V′|`.
    pub t: u64,
    /// Viable pairs with one endpoint in `V′`.
    pub e1: Vec<(usize, usize)>,
    /// Viable pairs with both endpoints in `V′`.
    pub e2: Vec<(usize, usize)>,
    /// The weighted repair graph; `None` when it has no edges.
    pub gm: Option<WeightedGraph>,
}

fn bounds_with(obs: &TrainingSet, g: &Graph, v: usize, extra: usize) -> (i64, i64) {
    let mut set = g.closed_neighborhood(v).to_vec();
    set.push(extra);
    set.sort_unstable();
    score_bounds(obs, v, &set)
}

/// Computes `ℓ`, `h`, `V′`, `V″` and the repair graph for `instance`.
pub fn analyze_partial(instance: &PartialInstance, obs: &TrainingSet) -> Result<PartialAnalysis> {
    let g = &instance.g_obs;
    let n = g.n();
    if obs.n() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: obs.n(),
        });
    }
    let (low, high): (Vec<i64>, Vec<i64>) = (0..n).map(|v| score_bounds(obs, v, g.closed_neighborhood(v))).unzip();
    let v_prime: Vec<usize> = (0..n).filter(|&v| low[v] == high[v]).collect();
    let v_double_prime: Vec<usize> = (0..n).filter(|&v| low[v] > high[v]).collect();
    let in_prime = |v: usize| low[v] == high[v];
    let t = v_prime.len() as u64;

    let mut e1 = Vec::new();
    let mut e2 = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) || !(in_prime(u) || in_prime(v)) {
                continue;
            }
            let (lu, hu) = bounds_with(obs, g, u, v);
            let (lv, hv) = bounds_with(obs, g, v, u);
            if lu < hu && lv < hv {
                if in_prime(u) && in_prime(v) {
                    e2.push((u, v));
                } else {
                    e1.push((u, v));
                }
            }
        }
    }
    let gm = if e1.is_empty() && e2.is_empty() {
        None
    } else {
        let weighted = e1
            .iter()
            .map(|&(u, v)| (u, v, t))
            .chain(e2.iter().map(|&(u, v)| (u, v, 2 * t + 1)));
        Some(WeightedGraph::new(n, weighted)?)
    };
    Ok(PartialAnalysis {
        low,
        high,
        v_prime,
        v_double_prime,
        t,
        e1,
        e2,
        gm,
    })
}

/// Repairs `G_obs` with a maximum-weight matching of viable pairs and sets
/// `τ′_v = h(v, N⁺(G′, v))`.
pub fn learn_partial(instance: &PartialInstance, obs: &TrainingSet) -> Result<LearnOutcome> {
    if instance.cap != 1 {
        return Err(Error::UnsupportedInstance(format!(
            "partial learner needs at most one missing edge per vertex (cap = {})",
            instance.cap
        )));
    }
    if let Some(r) = precheck(instance.g_obs.n(), obs)? {
        return Ok(LearnOutcome::Refused(r));
    }
    let a = analyze_partial(instance, obs)?;
    if !a.v_double_prime.is_empty() {
        return Ok(LearnOutcome::Refused(Refusal::NeedsTwoEdges {
            vertices: a.v_double_prime,
        }));
    }
    let m = match &a.gm {
        Some(gm) => max_weight_matching(gm),
        None => Matching::new([], 0)?,
    };
    let covered = m.covered();
    let uncovered: Vec<usize> = a
        .v_prime
        .iter()
        .copied()
        .filter(|v| covered.binary_search(v).is_err())
        .collect();
    if !uncovered.is_empty() {
        return Ok(LearnOutcome::Refused(Refusal::UncoveredVertices {
            vertices: uncovered,
        }));
    }
    if m.cardinality() > instance.k {
        return Ok(LearnOutcome::Refused(Refusal::BudgetExceeded {
            needed: m.cardinality(),
            k: instance.k,
        }));
    }
    let repaired = instance.g_obs.with_edges(m.edges().iter().copied())?;
    let taus = (0..repaired.n())
        .map(|v| score_bounds(obs, v, repaired.closed_neighborhood(v)).1)
        .collect();
    certify(ThresholdSystem::with_clamped_thresholds(repaired, taus)?, obs)
}
