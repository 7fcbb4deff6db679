//! Sample-complexity bounds and the Natarajan shattering construction.
//!
//! Every logarithm is natural. A base-2 reading rescales each bound by a
//! constant that the caller-supplied `c` and `c₁` absorb.

use rayon::prelude::*;

use crate::configuration::Configuration;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphKind};
use crate::system::ThresholdSystem;
use crate::Parallelism;

/// Largest `n` accepted by [`verify_shattering`] (2^16 subsets).
pub const SHATTER_LIMIT: usize = 8;

/// Inputs of the bound formulas. `c` and `c1` default to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundQuery {
    pub n: usize,
    pub eps: f64,
    pub delta: f64,
    /// Average degree of the observed graph.
    pub d_avg: f64,
    /// Missing-edge budget.
    pub k: u64,
    /// Edge budget.
    pub m: u64,
    pub c: f64,
    pub c1: f64,
}

impl BoundQuery {
    pub fn new(n: usize, eps: f64, delta: f64) -> Self {
        BoundQuery {
            n,
            eps,
            delta,
            d_avg: 0.0,
            k: 0,
            m: 0,
            c: 1.0,
            c1: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::invalid("n must be at least 1"));
        }
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return Err(Error::invalid(format!("eps must lie in (0, 1), got {}", self.eps)));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::invalid(format!("delta must lie in (0, 1), got {}", self.delta)));
        }
        if !(self.d_avg >= 0.0 && self.d_avg.is_finite()) {
            return Err(Error::invalid("d_avg must be a finite non-negative number"));
        }
        if !(self.c > 0.0 && self.c.is_finite()) || !(self.c1 > 0.0 && self.c1.is_finite()) {
            return Err(Error::invalid("constants c and c1 must be positive"));
        }
        Ok(())
    }

    fn n2(&self) -> f64 {
        (self.n * self.n) as f64
    }

    fn log_inv_delta(&self) -> f64 {
        (1.0 / self.delta).ln()
    }
}

/// `x · ln(n² / x)`, continuous at `x = 0`.
fn budget_term(x: u64, n2: f64) -> f64 {
    if x == 0 {
        0.0
    } else {
        x as f64 * (n2 / x as f64).ln()
    }
}

/// `(1/ε)(n² + n ln n + ln(1/δ))`, exactly as printed.
pub fn sample_complexity_upper(q: &BoundQuery) -> Result<f64> {
    q.validate()?;
    let n = q.n as f64;
    Ok((q.n2() + n * n.ln() + q.log_inv_delta()) / q.eps)
}

/// `(1/ε)(ln|H| + ln(1/δ))` with `ln|H| = C(n,2) ln 2 + n ln n`: the sharper
/// count behind the printed bound.
pub fn sample_complexity_upper_tight(q: &BoundQuery) -> Result<f64> {
    q.validate()?;
    let n = q.n as f64;
    let pairs = n * (n - 1.0) / 2.0;
    Ok((pairs * std::f64::consts::LN_2 + n * n.ln() + q.log_inv_delta()) / q.eps)
}

/// `(1/ε)(n ln(d_avg + 3) + c k ln(n²/k) + ln(1/δ))`; the `k` term is 0 at
/// `k = 0`.
pub fn sample_complexity_partial(q: &BoundQuery) -> Result<f64> {
    q.validate()?;
    if q.k as f64 > q.n2() {
        return Err(Error::invalid(format!("k = {} exceeds n^2 = {}", q.k, q.n2())));
    }
    let n = q.n as f64;
    Ok((n * (q.d_avg + 3.0).ln() + q.c * budget_term(q.k, q.n2()) + q.log_inv_delta()) / q.eps)
}

/// `(1/ε)(c m ln(n²/m) + ln(1/δ))`; the `m` term is 0 at `m = 0`.
pub fn sample_complexity_m_edges(q: &BoundQuery) -> Result<f64> {
    q.validate()?;
    if q.m as f64 > q.n2() {
        return Err(Error::invalid(format!("m = {} exceeds n^2 = {}", q.m, q.n2())));
    }
    Ok((q.c * budget_term(q.m, q.n2()) + q.log_inv_delta()) / q.eps)
}

/// `c₁ (1/ε)(n²/4 + ln(1/δ))`.
pub fn ndim_sample_lower_bound(q: &BoundQuery) -> Result<f64> {
    q.validate()?;
    Ok(q.c1 * (q.n2() / 4.0 + q.log_inv_delta()) / q.eps)
}

/// `⌊n²/4⌋`, the size of the shattered set.
pub fn ndim_lower_bound(n: usize) -> Result<u64> {
    if n < 2 {
        return Err(Error::invalid("the shattering construction needs n >= 2"));
    }
    Ok((n * n / 4) as u64)
}

/// Configurations with one 1 in `Y` and one in `Z`, and the two witness
/// maps on them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShatterInstance {
    pub n: usize,
    pub y: Vec<usize>,
    pub z: Vec<usize>,
    /// Ordered by `(y, z)`.
    pub r: Vec<Configuration>,
    /// `g1(C)`: `C` with the `Z` half zeroed.
    pub g1: Vec<Configuration>,
    /// `g2(C)`: all zeros.
    pub g2: Vec<Configuration>,
}

impl ShatterInstance {
    /// The `(y, z)` pair of the `i`-th configuration.
    pub fn pair(&self, i: usize) -> (usize, usize) {
        (self.y[i / self.z.len()], self.z[i % self.z.len()])
    }
}

/// Builds `Y = {0..⌊n/2⌋-1}`, `Z` = the rest, `R` and the witness maps.
pub fn build_shatter_instance(n: usize) -> Result<ShatterInstance> {
    ndim_lower_bound(n)?;
    let y: Vec<usize> = (0..n / 2).collect();
    let z: Vec<usize> = (n / 2..n).collect();
    let mut r = Vec::new();
    let mut g1 = Vec::new();
    for &a in &y {
        for &b in &z {
            r.push(Configuration::from_active(n, &[a, b])?);
            g1.push(Configuration::from_active(n, &[a])?);
        }
    }
    let g2 = vec![Configuration::zeros(n); r.len()];
    Ok(ShatterInstance { n, y, z, r, g1, g2 })
}

/// The bipartite system realizing `g1` on `r_prime` and `g2` on the rest of
/// `R`: an edge `(y, z)` per chosen configuration, `τ_y = 2`, `τ_z = 3`
/// (clamped to the canonical range, which leaves the dynamics unchanged).
pub fn shatter_witness(instance: &ShatterInstance, r_prime: &[Configuration]) -> Result<ThresholdSystem> {
    let mut edges = Vec::with_capacity(r_prime.len());
    for c in r_prime {
        let i = instance
            .r
            .iter()
            .position(|x| x == c)
            .ok_or_else(|| Error::invalid(format!("configuration {c} is not in R")))?;
        edges.push(instance.pair(i));
    }
    witness_from_pairs(instance, edges)
}

fn witness_from_pairs(instance: &ShatterInstance, edges: Vec<(usize, usize)>) -> Result<ThresholdSystem> {
    let mut edges = edges;
    edges.sort_unstable();
    edges.dedup();
    let g = Graph::new(instance.n, GraphKind::Undirected, edges)?;
    let taus = (0..instance.n)
        .map(|v| if v < instance.y.len() { 2 } else { 3 })
        .collect();
    ThresholdSystem::with_clamped_thresholds(g, taus)
}

/// Checks both shattering requirements: `g1(C) ≠ g2(C)` on all of `R`, and
/// for every subset `R′ ⊆ R` the witness maps `R′` by `g1` and the rest by
/// `g2`, by simulation.
pub fn verify_shattering(n: usize, parallelism: Parallelism) -> Result<bool> {
    if n > SHATTER_LIMIT {
        return Err(Error::UnsupportedInstance(format!(
            "shattering check is limited to n <= {SHATTER_LIMIT} (got {n})"
        )));
    }
    let instance = build_shatter_instance(n)?;
    if instance.g1.iter().zip(&instance.g2).any(|(a, b)| a == b) {
        return Ok(false);
    }
    let size = instance.r.len();
    let check = |mask: u64| -> bool {
        let edges = (0..size)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| instance.pair(i))
            .collect();
        let Ok(system) = witness_from_pairs(&instance, edges) else {
            return false;
        };
        (0..size).all(|i| {
            let expected = if mask >> i & 1 == 1 {
                &instance.g1[i]
            } else {
                &instance.g2[i]
            };
            system.successor_unchecked(&instance.r[i]) == *expected
        })
    };
    let subsets = 1u64 << size;
    Ok(match parallelism {
        Parallelism::Serial => (0..subsets).all(check),
        Parallelism::Parallel => (0..subsets).into_par_iter().all(check),
    })
}
