//! Threshold synchronous dynamical systems: exact dynamics, consistent
//! learners, 3SAT hardness reductions, sample-complexity bounds and the
//! Natarajan shattering construction.

pub mod configuration;
pub mod error;
pub mod evaluation;
pub mod generate;
pub mod graph;
pub mod hardness;
pub mod learners;
pub mod matching;
pub mod observations;
pub mod rng;
pub mod system;
pub mod text;
pub mod theory;

pub use configuration::Configuration;
pub use error::{Error, Result};
pub use graph::{Graph, GraphKind};
pub use observations::{ConfigDistribution, Observation, TrainingSet};
pub use system::{ThresholdSystem, Violation};

/// Whether an operation that supports it may fan work out to threads.
/// Results never depend on this choice.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Parallelism {
    #[default]
    Serial,
    Parallel,
}
