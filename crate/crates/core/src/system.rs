//! Threshold systems and their one-step synchronous dynamics.

use std::fmt;

use crate::configuration::Configuration;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A single invariant violation found by [`validate_system`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    EmptySystem,
    SelfLoop { vertex: usize },
    DuplicateEdge { u: usize, v: usize },
    EndpointOutOfRange { u: usize, v: usize, n: usize },
    ThresholdCountMismatch { expected: usize, actual: usize },
    ThresholdBelowZero { vertex: usize, threshold: i64 },
    ThresholdAboveCanonical { vertex: usize, threshold: i64, max: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptySystem => write!(f, "system has no vertices"),
            Violation::SelfLoop { vertex } => write!(f, "self-loop at vertex {vertex}"),
            Violation::DuplicateEdge { u, v } => write!(f, "duplicate edge ({u}, {v})"),
            Violation::EndpointOutOfRange { u, v, n } => {
                write!(f, "edge ({u}, {v}) has an endpoint outside 0..{n}")
            }
            Violation::ThresholdCountMismatch { expected, actual } => {
                write!(f, "expected {expected} thresholds, found {actual}")
            }
            Violation::ThresholdBelowZero { vertex, threshold } => {
                write!(f, "threshold below 0 at vertex {vertex} ({threshold})")
            }
            Violation::ThresholdAboveCanonical { vertex, threshold, max } => write!(
                f,
                "threshold above canonical maximum at vertex {vertex} ({threshold} > {max})"
            ),
        }
    }
}

/// A graph plus one integer threshold per vertex.
///
/// Vertex `v` moves to state 1 iff the number of 1-vertices in its closed
/// neighborhood reaches `τ_v`. Canonical thresholds lie in
/// `[0, |N⁺(v)| + 1]`; the upper end never fires.
#[derive(Clone, PartialEq, Eq)]
pub struct ThresholdSystem {
    graph: Graph,
    thresholds: Vec<i64>,
}

impl ThresholdSystem {
    /// Checked constructor; fails with every violation found.
    pub fn new(graph: Graph, thresholds: Vec<i64>) -> Result<Self> {
        let s = Self::new_unchecked(graph, thresholds);
        match validate_system(&s) {
            Ok(()) => Ok(s),
            Err(v) => Err(Error::InvalidSystem(v)),
        }
    }

    pub fn new_unchecked(graph: Graph, thresholds: Vec<i64>) -> Self {
        ThresholdSystem { graph, thresholds }
    }

    /// Builds a system after clamping every threshold into the canonical
    /// range. Clamping never changes the dynamics.
    pub fn with_clamped_thresholds(graph: Graph, thresholds: Vec<i64>) -> Result<Self> {
        if thresholds.len() != graph.n() {
            return Err(Error::LengthMismatch {
                expected: graph.n(),
                actual: thresholds.len(),
            });
        }
        let clamped = thresholds
            .iter()
            .enumerate()
            .map(|(v, &t)| t.clamp(0, canonical_max(&graph, v)))
            .collect();
        Self::new(graph, clamped)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn thresholds(&self) -> &[i64] {
        &self.thresholds
    }

    pub fn threshold(&self, v: usize) -> i64 {
        self.thresholds[v]
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Largest canonical threshold of `v`, i.e. `|N⁺(v)| + 1`.
    pub fn canonical_max(&self, v: usize) -> i64 {
        canonical_max(&self.graph, v)
    }

    /// Next state of a single vertex.
    #[inline]
    pub fn fires(&self, config: &Configuration, v: usize) -> bool {
        let score = config.score_unchecked(self.graph.closed_neighborhood(v)) as i64;
        score >= self.thresholds[v]
    }

    /// The unique successor of `config`.
    pub fn successor(&self, config: &Configuration) -> Result<Configuration> {
        if config.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                actual: config.len(),
            });
        }
        Ok(self.successor_unchecked(config))
    }

    pub(crate) fn successor_unchecked(&self, config: &Configuration) -> Configuration {
        let mut next = Configuration::zeros(self.n());
        for v in 0..self.n() {
            if self.fires(config, v) {
                next.set(v, true);
            }
        }
        next
    }

    /// `steps + 1` configurations starting with `config`.
    pub fn trajectory(&self, config: &Configuration, steps: usize) -> Result<Vec<Configuration>> {
        let mut out = Vec::with_capacity(steps + 1);
        let mut current = config.clone();
        self.successor(&current)?;
        for _ in 0..steps {
            let next = self.successor_unchecked(&current);
            out.push(std::mem::replace(&mut current, next));
        }
        out.push(current);
        Ok(out)
    }
}

impl fmt::Debug for ThresholdSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ThresholdSystem")
            .field("graph", &self.graph)
            .field("thresholds", &self.thresholds)
            .finish()
    }
}

pub(crate) fn canonical_max(graph: &Graph, v: usize) -> i64 {
    graph.closed_neighborhood(v).len() as i64 + 1
}

/// `score(config, vertex_set)`: how many of the listed vertices are in state 1.
pub fn score(config: &Configuration, vertex_set: &[usize]) -> Result<usize> {
    config.score(vertex_set)
}

/// Reports every invariant violation of `system`; `Ok(())` iff none.
pub fn validate_system(system: &ThresholdSystem) -> std::result::Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    let n = system.graph.n();
    if n == 0 {
        out.push(Violation::EmptySystem);
    }
    out.extend(system.graph.violations());
    if system.thresholds.len() != n {
        out.push(Violation::ThresholdCountMismatch {
            expected: n,
            actual: system.thresholds.len(),
        });
    } else {
        for (v, &t) in system.thresholds.iter().enumerate() {
            let max = canonical_max(&system.graph, v);
            if t < 0 {
                out.push(Violation::ThresholdBelowZero {
                    vertex: v,
                    threshold: t,
                });
            } else if t > max {
                out.push(Violation::ThresholdAboveCanonical {
                    vertex: v,
                    threshold: t,
                    max,
                });
            }
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphKind;

    fn path3(taus: [i64; 3]) -> ThresholdSystem {
        let g = Graph::new(3, GraphKind::Undirected, [(0, 1), (1, 2)]).unwrap();
        ThresholdSystem::new(g, taus.to_vec()).unwrap()
    }

    fn c(s: &str) -> Configuration {
        s.parse().unwrap()
    }

    #[test]
    fn successor_examples() {
        assert_eq!(path3([0, 0, 0]).successor(&c("010")).unwrap(), c("111"));
        assert_eq!(path3([3, 4, 3]).successor(&c("111")).unwrap(), c("000"));
        assert_eq!(path3([1, 2, 3]).successor(&c("100")).unwrap(), c("100"));
    }

    #[test]
    fn successor_rejects_wrong_length() {
        assert!(matches!(
            path3([1, 1, 1]).successor(&c("10")),
            Err(Error::LengthMismatch { expected: 3, actual: 2 })
        ));
    }

    #[test]
    fn trajectory_examples() {
        let s = path3([1, 2, 3]);
        assert_eq!(s.trajectory(&c("101"), 0).unwrap(), vec![c("101")]);
        assert_eq!(s.trajectory(&c("110"), 2).unwrap(), vec![c("110"), c("110"), c("110")]);

        let g = Graph::new(2, GraphKind::Undirected, [(0, 1)]).unwrap();
        let s = ThresholdSystem::new(g, vec![0, 0]).unwrap();
        assert_eq!(s.trajectory(&c("00"), 2).unwrap(), vec![c("00"), c("11"), c("11")]);
    }

    #[test]
    fn validation_examples() {
        let g = Graph::new(2, GraphKind::Undirected, [(0, 1)]).unwrap();
        assert!(validate_system(&ThresholdSystem::new_unchecked(g.clone(), vec![2, 2])).is_ok());

        let bad = ThresholdSystem::new_unchecked(g, vec![-1, 1]);
        let v = validate_system(&bad).unwrap_err();
        assert!(v[0].to_string().contains("threshold below 0"));

        let g = Graph::new_unchecked(4, GraphKind::Undirected, [(3, 3)]);
        let v = validate_system(&ThresholdSystem::new_unchecked(g, vec![0; 4])).unwrap_err();
        assert!(v[0].to_string().contains("self-loop"));

        let g = Graph::empty(0, GraphKind::Undirected);
        let v = validate_system(&ThresholdSystem::new_unchecked(g, vec![])).unwrap_err();
        assert_eq!(v, vec![Violation::EmptySystem]);
    }

    #[test]
    fn isolated_vertex_self_inclusion() {
        let g = Graph::empty(1, GraphKind::Undirected);
        for (tau, on, off) in [(0, true, true), (1, true, false), (2, false, false)] {
            let s = ThresholdSystem::new(g.clone(), vec![tau]).unwrap();
            assert_eq!(s.successor(&c("1")).unwrap().get(0), on);
            assert_eq!(s.successor(&c("0")).unwrap().get(0), off);
        }
    }

    #[test]
    fn directed_includes_own_state() {
        let g = Graph::new(2, GraphKind::Directed, [(1, 0)]).unwrap();
        let s = ThresholdSystem::new(g, vec![2, 1]).unwrap();
        assert_eq!(s.successor(&c("11")).unwrap(), c("11"));
        assert_eq!(s.successor(&c("01")).unwrap(), c("01"));
        assert_eq!(s.successor(&c("10")).unwrap(), c("00"));
    }
}
