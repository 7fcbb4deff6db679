//! Training sets of (configuration, successor) pairs, the distributions they
//! are drawn from, and the per-vertex score bounds used by every learner.

use std::collections::HashMap;

use rand::{Rng, RngCore};

use crate::configuration::Configuration;
use crate::error::{Error, Result};
use crate::rng::{seeded_rng, SeededRng};
use crate::system::ThresholdSystem;

/// One observed transition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Observation {
    pub predecessor: Configuration,
    pub successor: Configuration,
}

impl Observation {
    pub fn new(predecessor: Configuration, successor: Configuration) -> Self {
        Observation { predecessor, successor }
    }
}

/// An ordered list of observed transitions over `n` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrainingSet {
    n: usize,
    pairs: Vec<Observation>,
}

impl TrainingSet {
    pub fn new(n: usize, pairs: Vec<Observation>) -> Result<Self> {
        for p in &pairs {
            for c in [&p.predecessor, &p.successor] {
                if c.len() != n {
                    return Err(Error::LengthMismatch {
                        expected: n,
                        actual: c.len(),
                    });
                }
            }
        }
        Ok(TrainingSet { n, pairs })
    }

    pub fn empty(n: usize) -> Self {
        TrainingSet { n, pairs: Vec::new() }
    }

    /// Builds from `(predecessor, successor)` bitstrings. Intended for tests
    /// and examples.
    pub fn from_bitstrings(pairs: &[(&str, &str)]) -> Result<Self> {
        let n = pairs.first().map(|(p, _)| p.len()).unwrap_or(0);
        let pairs = pairs
            .iter()
            .map(|(p, s)| Ok(Observation::new(p.parse()?, s.parse()?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, pairs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of pairs, `q`.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[Observation] {
        &self.pairs
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Observation> {
        self.pairs.iter()
    }

    pub fn push(&mut self, obs: Observation) -> Result<()> {
        for c in [&obs.predecessor, &obs.successor] {
            if c.len() != self.n {
                return Err(Error::LengthMismatch {
                    expected: self.n,
                    actual: c.len(),
                });
            }
        }
        self.pairs.push(obs);
        Ok(())
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Full truth table of `system`: one pair per configuration, in index
    /// order. Requires `n <= 20`.
    pub fn truth_table(system: &ThresholdSystem) -> Result<Self> {
        let n = system.n();
        if n > 20 {
            return Err(Error::UnsupportedInstance(format!(
                "truth table over {n} vertices exceeds 2^20 rows"
            )));
        }
        let pairs = crate::configuration::all_configurations(n)
            .map(|c| {
                let s = system.successor_unchecked(&c);
                Observation::new(c, s)
            })
            .collect();
        Ok(TrainingSet { n, pairs })
    }
}

impl<'a> IntoIterator for &'a TrainingSet {
    type Item = &'a Observation;
    type IntoIter = std::slice::Iter<'a, Observation>;

    fn into_iter(self) -> Self::IntoIter {
        self.pairs.iter()
    }
}

/// Distribution over predecessor configurations.
#[derive(Clone, Debug, PartialEq)]
pub enum ConfigDistribution {
    /// Uniform over `{0,1}^n`.
    Uniform { n: usize },
    /// Vertex `v` is 1 independently with probability `probs[v]`.
    Bernoulli { probs: Vec<f64> },
    /// Finite support; `support[i]` has probability `weights[i] / Σ weights`.
    Empirical {
        support: Vec<Configuration>,
        weights: Vec<u64>,
    },
}

impl ConfigDistribution {
    pub fn uniform(n: usize) -> Self {
        ConfigDistribution::Uniform { n }
    }

    pub fn bernoulli(probs: Vec<f64>) -> Result<Self> {
        let d = ConfigDistribution::Bernoulli { probs };
        d.validate()?;
        Ok(d)
    }

    pub fn empirical(support: Vec<Configuration>, weights: Vec<u64>) -> Result<Self> {
        let d = ConfigDistribution::Empirical { support, weights };
        d.validate()?;
        Ok(d)
    }

    /// Uniform over the listed configurations; duplicates merge into one
    /// support point whose weight is their multiplicity. First-appearance
    /// order is kept.
    pub fn uniform_over<'a>(configs: impl IntoIterator<Item = &'a Configuration>) -> Result<Self> {
        let mut index: HashMap<&Configuration, usize> = HashMap::new();
        let mut support = Vec::new();
        let mut weights: Vec<u64> = Vec::new();
        for c in configs {
            match index.get(c) {
                Some(&i) => weights[i] += 1,
                None => {
                    index.insert(c, support.len());
                    support.push(c.clone());
                    weights.push(1);
                }
            }
        }
        Self::empirical(support, weights)
    }

    pub fn n(&self) -> usize {
        match self {
            ConfigDistribution::Uniform { n } => *n,
            ConfigDistribution::Bernoulli { probs } => probs.len(),
            ConfigDistribution::Empirical { support, .. } => support.first().map(|c| c.len()).unwrap_or(0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ConfigDistribution::Uniform { .. } => Ok(()),
            ConfigDistribution::Bernoulli { probs } => match probs.iter().position(|p| !(0.0..=1.0).contains(p)) {
                Some(v) => Err(Error::invalid(format!(
                    "probability {} at vertex {v} is outside [0, 1]",
                    probs[v]
                ))),
                None => Ok(()),
            },
            ConfigDistribution::Empirical { support, weights } => {
                if support.is_empty() {
                    return Err(Error::invalid("empirical distribution has empty support"));
                }
                if support.len() != weights.len() {
                    return Err(Error::invalid(format!(
                        "{} support points but {} weights",
                        support.len(),
                        weights.len()
                    )));
                }
                let n = support[0].len();
                if let Some(c) = support.iter().find(|c| c.len() != n) {
                    return Err(Error::LengthMismatch {
                        expected: n,
                        actual: c.len(),
                    });
                }
                if weights.iter().sum::<u64>() == 0 {
                    return Err(Error::invalid("empirical weights sum to zero"));
                }
                Ok(())
            }
        }
    }

    /// Draws one configuration.
    pub fn sample(&self, rng: &mut SeededRng) -> Configuration {
        match self {
            ConfigDistribution::Uniform { n } => {
                let mut c = Configuration::zeros(*n);
                for w in c.words_mut() {
                    *w = rng.next_u64();
                }
                c.mask_tail();
                c
            }
            ConfigDistribution::Bernoulli { probs } => {
                let mut c = Configuration::zeros(probs.len());
                for (v, &p) in probs.iter().enumerate() {
                    if rng.gen::<f64>() < p {
                        c.set(v, true);
                    }
                }
                c
            }
            ConfigDistribution::Empirical { support, weights } => {
                let total: u64 = weights.iter().sum();
                let mut x = rng.gen_range(0..total);
                for (c, &w) in support.iter().zip(weights) {
                    if x < w {
                        return c.clone();
                    }
                    x -= w;
                }
                unreachable!("weights sum to total")
            }
        }
    }
}

/// Draws `q` predecessors i.i.d. from `dist` and pairs each with its
/// successor under `system`. Identical seeds give identical sets.
pub fn sample_training_set(
    system: &ThresholdSystem,
    dist: &ConfigDistribution,
    q: usize,
    seed: u64,
) -> Result<TrainingSet> {
    if q == 0 {
        return Err(Error::invalid("q must be at least 1"));
    }
    dist.validate()?;
    if dist.n() != system.n() {
        return Err(Error::LengthMismatch {
            expected: system.n(),
            actual: dist.n(),
        });
    }
    let mut rng = seeded_rng(seed);
    let pairs = (0..q)
        .map(|_| {
            let c = dist.sample(&mut rng);
            let s = system.successor_unchecked(&c);
            Observation::new(c, s)
        })
        .collect();
    Ok(TrainingSet { n: system.n(), pairs })
}

/// Splits `obs` into `(O_0v, O_1v)` by the successor state of `v`, keeping
/// order.
pub fn partition_by_target(obs: &TrainingSet, v: usize) -> Result<(TrainingSet, TrainingSet)> {
    obs.check_vertex(v)?;
    let (ones, zeros): (Vec<_>, Vec<_>) = obs.pairs.iter().cloned().partition(|p| p.successor.get(v));
    Ok((
        TrainingSet { n: obs.n, pairs: zeros },
        TrainingSet { n: obs.n, pairs: ones },
    ))
}

/// True iff `system` reproduces the successor of every pair.
pub fn is_consistent(system: &ThresholdSystem, obs: &TrainingSet) -> Result<bool> {
    if system.n() != obs.n {
        return Err(Error::LengthMismatch {
            expected: system.n(),
            actual: obs.n,
        });
    }
    Ok(obs
        .pairs
        .iter()
        .all(|p| system.successor_unchecked(&p.predecessor) == p.successor))
}

/// Fraction of pairs whose successor `system` gets wrong.
pub fn error_on_observations(system: &ThresholdSystem, obs: &TrainingSet) -> Result<f64> {
    if system.n() != obs.n {
        return Err(Error::LengthMismatch {
            expected: system.n(),
            actual: obs.n,
        });
    }
    if obs.is_empty() {
        return Ok(0.0);
    }
    let wrong = obs
        .pairs
        .iter()
        .filter(|p| system.successor_unchecked(&p.predecessor) != p.successor)
        .count();
    Ok(wrong as f64 / obs.len() as f64)
}

/// True iff no predecessor appears with two different successors.
pub fn observations_deterministic(obs: &TrainingSet) -> bool {
    let mut seen: HashMap<&Configuration, &Configuration> = HashMap::with_capacity(obs.len());
    for p in &obs.pairs {
        if let Some(prev) = seen.insert(&p.predecessor, &p.successor) {
            if prev != &p.successor {
                return false;
            }
        }
    }
    true
}

fn check_set(obs: &TrainingSet, v: usize, set: &[usize]) -> Result<()> {
    obs.check_vertex(v)?;
    set.iter().try_for_each(|&u| obs.check_vertex(u))
}

/// `ℓ(v, Y)`: the largest score over `Y` among pairs where `v` ends at 0, or
/// `-1` when there are none.
pub fn l_value(obs: &TrainingSet, v: usize, set: &[usize]) -> Result<i64> {
    check_set(obs, v, set)?;
    Ok(score_bounds(obs, v, set).0)
}

/// `h(v, Y)`: the smallest score over `Y` among pairs where `v` ends at 1, or
/// `n + 1` when there are none.
pub fn h_value(obs: &TrainingSet, v: usize, set: &[usize]) -> Result<i64> {
    check_set(obs, v, set)?;
    Ok(score_bounds(obs, v, set).1)
}

/// `(ℓ(v, Y), h(v, Y))` in one pass, without range checks.
pub(crate) fn score_bounds(obs: &TrainingSet, v: usize, set: &[usize]) -> (i64, i64) {
    let mut low = -1i64;
    let mut high = obs.n as i64 + 1;
    for p in &obs.pairs {
        let s = p.predecessor.score_unchecked(set) as i64;
        if p.successor.get(v) {
            high = high.min(s);
        } else {
            low = low.max(s);
        }
    }
    (low, high)
}
