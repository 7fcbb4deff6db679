//! True error, PAC experiments and the consistency-via-PAC protocol.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::configuration::{all_configurations, Configuration};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphKind};
use crate::learners::{HypothesisClass, LearnOutcome, Learner};
use crate::observations::{
    is_consistent, observations_deterministic, sample_training_set, ConfigDistribution, Observation, TrainingSet,
};
use crate::rng::{derive_seed, seeded_rng};
use crate::system::ThresholdSystem;
use crate::theory::{sample_complexity_upper, BoundQuery};
use crate::Parallelism;

/// Largest `n` for which the uniform and Bernoulli errors are computed by
/// enumerating all `2^n` configurations.
pub const EXACT_ERROR_LIMIT: usize = 20;

fn check_pair(s: &ThresholdSystem, s_star: &ThresholdSystem, dist: &ConfigDistribution) -> Result<()> {
    dist.validate()?;
    for n in [s_star.n(), dist.n()] {
        if n != s.n() {
            return Err(Error::LengthMismatch {
                expected: s.n(),
                actual: n,
            });
        }
    }
    Ok(())
}

fn disagree(s: &ThresholdSystem, s_star: &ThresholdSystem, c: &Configuration) -> bool {
    s.successor_unchecked(c) != s_star.successor_unchecked(c)
}

/// `Pr_{C ~ dist}[S(C) ≠ S*(C)]`, computed exactly.
pub fn true_error_exact(s: &ThresholdSystem, s_star: &ThresholdSystem, dist: &ConfigDistribution) -> Result<f64> {
    check_pair(s, s_star, dist)?;
    match dist {
        ConfigDistribution::Empirical { support, weights } => {
            let total: u64 = weights.iter().sum();
            let bad: u64 = support
                .iter()
                .zip(weights)
                .filter(|(c, _)| disagree(s, s_star, c))
                .map(|(_, &w)| w)
                .sum();
            Ok(bad as f64 / total as f64)
        }
        _ if s.n() > EXACT_ERROR_LIMIT => Err(Error::UnsupportedInstance(format!(
            "exact error enumerates 2^n configurations and is limited to n <= {EXACT_ERROR_LIMIT}; use true_error_mc"
        ))),
        ConfigDistribution::Uniform { n } => {
            let bad = all_configurations(*n).filter(|c| disagree(s, s_star, c)).count();
            Ok(bad as f64 / (1u64 << n) as f64)
        }
        ConfigDistribution::Bernoulli { probs } => Ok(all_configurations(probs.len())
            .filter(|c| disagree(s, s_star, c))
            .map(|c| {
                probs
                    .iter()
                    .enumerate()
                    .map(|(v, &p)| if c.get(v) { p } else { 1.0 - p })
                    .product::<f64>()
            })
            .sum()),
    }
}

/// Monte Carlo estimate of the true error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorEstimate {
    pub estimate: f64,
    /// Binomial standard error `sqrt(p(1-p)/samples)`.
    pub stderr: f64,
    pub samples: usize,
}

pub fn true_error_mc(
    s: &ThresholdSystem,
    s_star: &ThresholdSystem,
    dist: &ConfigDistribution,
    samples: usize,
    seed: u64,
) -> Result<ErrorEstimate> {
    check_pair(s, s_star, dist)?;
    if samples == 0 {
        return Err(Error::invalid("samples must be at least 1"));
    }
    let mut rng = seeded_rng(seed);
    let bad = (0..samples)
        .filter(|_| disagree(s, s_star, &dist.sample(&mut rng)))
        .count();
    let p = bad as f64 / samples as f64;
    Ok(ErrorEstimate {
        estimate: p,
        stderr: (p * (1.0 - p) / samples as f64).sqrt(),
        samples,
    })
}

/// Training-set size of a PAC experiment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SampleSize {
    Explicit(usize),
    /// `⌈(1/ε)(n² + n ln n + ln(1/δ))⌉`.
    FromBound,
}

#[derive(Clone, Debug)]
pub struct PacExperimentConfig {
    pub truth: ThresholdSystem,
    pub dist: ConfigDistribution,
    pub eps: f64,
    pub delta: f64,
    pub trials: usize,
    pub q: SampleSize,
    pub learner: Learner,
    pub seed: u64,
    /// Samples per Monte Carlo error estimate when exact error is infeasible.
    pub mc_samples: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PacReport {
    pub q: usize,
    pub trials: usize,
    /// True error per trial; a refused trial counts as error 1.
    pub errors: Vec<f64>,
    /// Whether each error was computed exactly.
    pub exact: bool,
    pub exceed_fraction: f64,
    pub refusals: usize,
    pub mean_error: f64,
    pub wall_time: Duration,
}

impl PacReport {
    /// `δ + 3 sqrt(δ(1-δ)/T)`: the tolerance for the exceed fraction.
    pub fn tolerance(delta: f64, trials: usize) -> f64 {
        delta + 3.0 * (delta * (1.0 - delta) / trials as f64).sqrt()
    }
}

fn is_matching_graph(g: &Graph) -> bool {
    g.kind() == GraphKind::Undirected && g.is_perfect_matching()
}

fn extra_edges_ok(truth: &Graph, base: &Graph, k: usize, cap: Option<usize>) -> bool {
    if truth.kind() != GraphKind::Undirected || truth.n() != base.n() {
        return false;
    }
    if !base.edges().iter().all(|&(u, v)| truth.has_edge(u, v)) {
        return false;
    }
    let extra: Vec<(usize, usize)> = truth
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| !base.has_edge(u, v))
        .collect();
    extra.len() <= k
        && cap.is_none_or(|c| (0..truth.n()).all(|v| extra.iter().filter(|&&(a, b)| a == v || b == v).count() <= c))
}

/// True iff `truth` lies in the hypothesis class `learner` searches.
pub fn learner_class_contains(learner: &Learner, truth: &ThresholdSystem) -> bool {
    let g = truth.graph();
    match learner {
        Learner::Matching => is_matching_graph(g),
        Learner::DirectedBounded { delta } => g.is_directed() && (0..g.n()).all(|v| g.degree(v) <= *delta),
        Learner::KnownGraph(known) => known == g,
        Learner::Partial(inst) => extra_edges_ok(g, inst.g_obs(), inst.k(), Some(inst.cap())),
        Learner::BruteForce(class, _) => match class {
            HypothesisClass::UndirectedThreshold => g.kind() == GraphKind::Undirected,
            HypothesisClass::MatchingThreshold => is_matching_graph(g),
            HypothesisClass::DirectedBounded { delta } => g.is_directed() && (0..g.n()).all(|v| g.degree(v) <= *delta),
            HypothesisClass::SupergraphOf { base, k, cap } => extra_edges_ok(g, base, *k, *cap),
            HypothesisClass::TreeThreshold2 => g.is_tree() && truth.thresholds().iter().all(|&t| t == 2),
        },
    }
}

/// Runs `trials` independent learn-and-measure rounds. Trial `t` samples with
/// seed `seed + t`, so serial and parallel runs report identical errors.
pub fn run_pac_experiment(config: &PacExperimentConfig, parallelism: Parallelism) -> Result<PacReport> {
    let start = Instant::now();
    let n = config.truth.n();
    if config.trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    let query = BoundQuery::new(n, config.eps, config.delta);
    query.validate()?;
    if config.dist.n() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: config.dist.n(),
        });
    }
    if !learner_class_contains(&config.learner, &config.truth) {
        return Err(Error::invalid(format!(
            "ground truth is not in the {} learner's class; the experiment would not be realizable",
            config.learner.name()
        )));
    }
    let q = match config.q {
        SampleSize::Explicit(q) => q,
        SampleSize::FromBound => sample_complexity_upper(&query)?.ceil() as usize,
    };
    let exact = matches!(config.dist, ConfigDistribution::Empirical { .. }) || n <= EXACT_ERROR_LIMIT;
    let trial = |t: usize| -> Result<(f64, bool)> {
        let seed = derive_seed(config.seed, t as u64);
        let obs = sample_training_set(&config.truth, &config.dist, q, seed)?;
        match config.learner.learn(&obs)? {
            LearnOutcome::Learned(h) => {
                let err = if exact {
                    true_error_exact(&h, &config.truth, &config.dist)?
                } else {
                    true_error_mc(&h, &config.truth, &config.dist, config.mc_samples, !seed)?.estimate
                };
                Ok((err, false))
            }
            LearnOutcome::Refused(_) => Ok((1.0, true)),
        }
    };
    let results: Vec<(f64, bool)> = match parallelism {
        Parallelism::Serial => (0..config.trials).map(trial).collect::<Result<_>>()?,
        Parallelism::Parallel => (0..config.trials).into_par_iter().map(trial).collect::<Result<_>>()?,
    };
    let errors: Vec<f64> = results.iter().map(|r| r.0).collect();
    let refusals = results.iter().filter(|r| r.1).count();
    let exceed = errors.iter().filter(|&&e| e > config.eps).count();
    Ok(PacReport {
        q,
        trials: config.trials,
        mean_error: errors.iter().sum::<f64>() / errors.len() as f64,
        exceed_fraction: exceed as f64 / config.trials as f64,
        errors,
        exact,
        refusals,
        wall_time: start.elapsed(),
    })
}

/// Both answers of the consistency-via-PAC protocol.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConsistencyVerdict {
    /// The literal protocol: learn from fresh samples of the uniform
    /// distribution over the observed predecessors, accept iff some repeat
    /// yields a hypothesis consistent with all of `obs`.
    pub protocol: bool,
    /// Learn from `obs` itself and accept iff a hypothesis comes back.
    pub direct: bool,
    /// `1 / (2q)`.
    pub eps: f64,
    pub delta: f64,
}

/// Decides consistency through a PAC learner: `ε = 1/(2q)`, `δ = 0.1`, and a
/// hypothesis with error at most `ε` under the uniform distribution over
/// `obs` must be consistent with all of it.
pub fn consistency_via_pac(
    obs: &TrainingSet,
    learner: &Learner,
    repeats: usize,
    seed: u64,
) -> Result<ConsistencyVerdict> {
    if repeats == 0 {
        return Err(Error::invalid("repeats must be at least 1"));
    }
    let q = obs.len();
    let eps = if q == 0 { 0.5 } else { 1.0 / (2.0 * q as f64) };
    let delta = 0.1;
    let no = ConsistencyVerdict {
        protocol: false,
        direct: false,
        eps,
        delta,
    };
    if !observations_deterministic(obs) {
        return Ok(no);
    }
    let direct = learner.learn(obs)?.is_learned();
    if q == 0 {
        return Ok(ConsistencyVerdict {
            protocol: direct,
            direct,
            ..no
        });
    }
    let dist = ConfigDistribution::uniform_over(obs.iter().map(|p| &p.predecessor))?;
    let label: HashMap<&Configuration, &Configuration> = obs.iter().map(|p| (&p.predecessor, &p.successor)).collect();
    let mut protocol = false;
    for r in 0..repeats {
        let mut rng = seeded_rng(derive_seed(seed, r as u64));
        let pairs = (0..q)
            .map(|_| {
                let c = dist.sample(&mut rng);
                let s = label[&c].clone();
                Observation::new(c, s)
            })
            .collect();
        let sample = TrainingSet::new(obs.n(), pairs)?;
        if let LearnOutcome::Learned(h) = learner.learn(&sample)? {
            if is_consistent(&h, obs)? {
                protocol = true;
                break;
            }
        }
    }
    Ok(ConsistencyVerdict { protocol, direct, ..no })
}
