//! Baseline learner for a known graph: only the thresholds are unknown.

use super::{certify, precheck, LearnOutcome, Refusal};
use crate::error::Result;
use crate::graph::Graph;
use crate::observations::{score_bounds, TrainingSet};
use crate::system::ThresholdSystem;

/// Sets `τ_v = h(v, N⁺(v))` (clamped) for every vertex, refusing when some
/// vertex has `ℓ ≥ h`.
pub fn learn_known_graph(graph: &Graph, obs: &TrainingSet) -> Result<LearnOutcome> {
    if let Some(r) = precheck(graph.n(), obs)? {
        return Ok(LearnOutcome::Refused(r));
    }
    let mut taus = Vec::with_capacity(graph.n());
    for v in 0..graph.n() {
        let (low, high) = score_bounds(obs, v, graph.closed_neighborhood(v));
        if low >= high {
            return Ok(LearnOutcome::Refused(Refusal::NoThreshold { vertex: v, low, high }));
        }
        taus.push(high);
    }
    certify(ThresholdSystem::with_clamped_thresholds(graph.clone(), taus)?, obs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphKind;
    use crate::observations::sample_training_set;
    use crate::ConfigDistribution;

    fn obs(pairs: &[(&str, &str)]) -> TrainingSet {
        TrainingSet::from_bitstrings(pairs).unwrap()
    }

    #[test]
    fn edgeless_examples() {
        let g = Graph::empty(2, GraphKind::Undirected);
        let s = learn_known_graph(&g, &obs(&[("10", "01")])).unwrap();
        assert_eq!(s.system().unwrap().thresholds(), &[2, 0]);

        let r = learn_known_graph(&g, &obs(&[("10", "00"), ("00", "10")])).unwrap();
        assert_eq!(
            r.refusal(),
            Some(&Refusal::NoThreshold {
                vertex: 0,
                low: 1,
                high: 0
            })
        );
    }

    #[test]
    fn realizable_samples_are_learned() {
        let g = Graph::new(4, GraphKind::Undirected, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let truth = ThresholdSystem::new(g.clone(), vec![1, 2, 3, 0]).unwrap();
        let o = sample_training_set(&truth, &ConfigDistribution::uniform(4), 12, 5).unwrap();
        assert!(learn_known_graph(&g, &o).unwrap().is_learned());
    }
}
