//! Consistent learners and the exhaustive oracle they are checked against.
//!
//! Every learner answers the consistency decision problem for its class: it
//! either returns a system reproducing every observed pair or refuses with a
//! machine-readable reason. Returned systems are re-checked before return.

mod brute;
mod directed;
mod known;
mod pairing;
mod partial;

use std::fmt;

pub use brute::{brute_force_consistent, BruteForceOptions, HypothesisClass, DEFAULT_ENUMERATION_LIMIT};
pub use directed::{learn_directed_bounded, learn_directed_bounded_with, threshold_consistent_via};
pub use known::learn_known_graph;
pub use pairing::{compatibility_graph, learn_matching, threshold_compatible};
pub use partial::{analyze_partial, learn_partial, PartialAnalysis, PartialInstance};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::observations::{is_consistent, observations_deterministic, TrainingSet};
use crate::system::ThresholdSystem;
use crate::Parallelism;

/// Why a learner answered "No".
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refusal {
    /// Some predecessor appears with two different successors.
    Contradictory,
    /// A perfect matching needs an even number of vertices.
    OddVertexCount {
        n: usize,
    },
    NoPerfectMatching,
    /// No in-neighbor set of size at most `delta` works for `vertex`.
    NoNeighborhood {
        vertex: usize,
        delta: usize,
    },
    /// The given graph admits no threshold at `vertex`.
    NoThreshold {
        vertex: usize,
        low: i64,
        high: i64,
    },
    /// Vertices needing at least two missing edges.
    NeedsTwoEdges {
        vertices: Vec<usize>,
    },
    /// The maximum-weight matching leaves these vertices uncovered.
    UncoveredVertices {
        vertices: Vec<usize>,
    },
    /// The repair needs more edges than the budget allows.
    BudgetExceeded {
        needed: usize,
        k: usize,
    },
    /// Exhaustive search found no consistent system in the class.
    NoConsistentSystem,
}

impl Refusal {
    /// Stable short code for scripts.
    pub fn code(&self) -> &'static str {
        match self {
            Refusal::Contradictory => "contradictory-observations",
            Refusal::OddVertexCount { .. } => "odd-vertex-count",
            Refusal::NoPerfectMatching => "no-perfect-matching",
            Refusal::NoNeighborhood { .. } => "no-neighborhood",
            Refusal::NoThreshold { .. } => "no-threshold",
            Refusal::NeedsTwoEdges { .. } => "needs-two-edges",
            Refusal::UncoveredVertices { .. } => "uncovered-vertices",
            Refusal::BudgetExceeded { .. } => "budget-exceeded",
            Refusal::NoConsistentSystem => "no-consistent-system",
        }
    }
}

impl fmt::Display for Refusal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refusal::Contradictory => write!(f, "contradictory observations"),
            Refusal::OddVertexCount { n } => write!(f, "odd vertex count {n} has no perfect matching"),
            Refusal::NoPerfectMatching => write!(f, "no perfect matching in compatibility graph"),
            Refusal::NoNeighborhood { vertex, delta } => {
                write!(f, "no in-neighbor set of size at most {delta} for vertex {vertex}")
            }
            Refusal::NoThreshold { vertex, low, high } => {
                write!(f, "no threshold at vertex {vertex} (l = {low} >= h = {high})")
            }
            Refusal::NeedsTwoEdges { vertices } => {
                write!(f, "vertices {vertices:?} need at least two missing edges")
            }
            Refusal::UncoveredVertices { vertices } => {
                write!(f, "matching misses vertices {vertices:?}")
            }
            Refusal::BudgetExceeded { needed, k } => {
                write!(f, "repair needs {needed} edges but k = {k}")
            }
            Refusal::NoConsistentSystem => write!(f, "no consistent system in class"),
        }
    }
}

/// A consistent hypothesis, or a refusal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LearnOutcome {
    Learned(ThresholdSystem),
    Refused(Refusal),
}

impl LearnOutcome {
    pub fn is_learned(&self) -> bool {
        matches!(self, LearnOutcome::Learned(_))
    }

    pub fn system(&self) -> Option<&ThresholdSystem> {
        match self {
            LearnOutcome::Learned(s) => Some(s),
            LearnOutcome::Refused(_) => None,
        }
    }

    pub fn refusal(&self) -> Option<&Refusal> {
        match self {
            LearnOutcome::Learned(_) => None,
            LearnOutcome::Refused(r) => Some(r),
        }
    }
}

/// Checks a learner's output before handing it out.
pub(crate) fn certify(system: ThresholdSystem, obs: &TrainingSet) -> Result<LearnOutcome> {
    if !is_consistent(&system, obs)? {
        return Err(Error::Internal(
            "learner produced a hypothesis inconsistent with its observations".into(),
        ));
    }
    Ok(LearnOutcome::Learned(system))
}

/// Shared entry checks: vertex count agreement and determinism.
pub(crate) fn precheck(n: usize, obs: &TrainingSet) -> Result<Option<Refusal>> {
    if obs.n() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: obs.n(),
        });
    }
    if !observations_deterministic(obs) {
        return Ok(Some(Refusal::Contradictory));
    }
    Ok(None)
}

/// A learner together with its parameters.
#[derive(Clone, Debug)]
pub enum Learner {
    Matching,
    DirectedBounded { delta: usize },
    KnownGraph(Graph),
    Partial(PartialInstance),
    BruteForce(HypothesisClass, BruteForceOptions),
}

impl Learner {
    pub fn learn(&self, obs: &TrainingSet) -> Result<LearnOutcome> {
        self.learn_with(obs, Parallelism::Serial)
    }

    /// Runs the learner; parallel and serial runs give identical results.
    pub fn learn_with(&self, obs: &TrainingSet, parallelism: Parallelism) -> Result<LearnOutcome> {
        match self {
            Learner::Matching => learn_matching(obs.n(), obs),
            Learner::DirectedBounded { delta } => learn_directed_bounded_with(obs.n(), obs, *delta, parallelism),
            Learner::KnownGraph(g) => learn_known_graph(g, obs),
            Learner::Partial(instance) => learn_partial(instance, obs),
            Learner::BruteForce(class, options) => {
                let options = BruteForceOptions {
                    parallelism,
                    ..options.clone()
                };
                brute_force_consistent(obs.n(), obs, class, &options)
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Learner::Matching => "matching",
            Learner::DirectedBounded { .. } => "directed",
            Learner::KnownGraph(_) => "known",
            Learner::Partial(_) => "partial",
            Learner::BruteForce(..) => "brute",
        }
    }
}
