//! Undirected and directed graphs over positional vertex ids `0..n`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::system::Violation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphKind {
    Undirected,
    Directed,
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphKind::Undirected => "undirected",
            GraphKind::Directed => "directed",
        })
    }
}

impl std::str::FromStr for GraphKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "undirected" => Ok(GraphKind::Undirected),
            "directed" => Ok(GraphKind::Directed),
            other => Err(Error::invalid(format!("unknown graph kind '{other}'"))),
        }
    }
}

/// A graph with canonically ordered edges.
///
/// Undirected edges are stored as `(min, max)`. A directed edge `(u, v)` means
/// `u` is an in-neighbor of `v`. Closed neighborhoods (the vertex itself plus
/// its neighbors, or plus its in-neighbors when directed) are precomputed.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    kind: GraphKind,
    edges: Vec<(usize, usize)>,
    closed: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates and out-of-range
    /// endpoints.
    pub fn new(n: usize, kind: GraphKind, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let g = Self::new_unchecked(n, kind, edges);
        let violations = g.violations();
        if violations.is_empty() {
            Ok(g)
        } else {
            Err(Error::InvalidSystem(violations))
        }
    }

    /// Builds a graph without validation. Invalid edges are kept in the edge
    /// list so [`Graph::violations`] can report them, but never enter a
    /// neighborhood.
    pub fn new_unchecked(n: usize, kind: GraphKind, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut edges: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(u, v)| match kind {
                GraphKind::Undirected => (u.min(v), u.max(v)),
                GraphKind::Directed => (u, v),
            })
            .collect();
        edges.sort_unstable();

        let mut sets: Vec<BTreeSet<usize>> = (0..n).map(|v| BTreeSet::from([v])).collect();
        for &(u, v) in &edges {
            if u == v || u >= n || v >= n {
                continue;
            }
            sets[v].insert(u);
            if kind == GraphKind::Undirected {
                sets[u].insert(v);
            }
        }
        let closed = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        Graph { n, kind, edges, closed }
    }

    pub fn empty(n: usize, kind: GraphKind) -> Self {
        Self::new_unchecked(n, kind, std::iter::empty())
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::new_unchecked(n, GraphKind::Undirected, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn is_directed(&self) -> bool {
        self.kind == GraphKind::Directed
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `N⁺(v)`: `v` together with its neighbors (in-neighbors when directed),
    /// ascending.
    pub fn closed_neighborhood(&self, v: usize) -> &[usize] {
        &self.closed[v]
    }

    /// Open degree (in-degree when directed).
    pub fn degree(&self, v: usize) -> usize {
        self.closed[v].len() - 1
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let key = match self.kind {
            GraphKind::Undirected => (u.min(v), u.max(v)),
            GraphKind::Directed => (u, v),
        };
        self.edges.binary_search(&key).is_ok()
    }

    pub fn average_degree(&self) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        let per_edge = match self.kind {
            GraphKind::Undirected => 2.0,
            GraphKind::Directed => 1.0,
        };
        per_edge * self.edges.len() as f64 / self.n as f64
    }

    /// A copy with extra edges added; existing edges are not duplicated.
    pub fn with_edges(&self, extra: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        let mut all: BTreeSet<(usize, usize)> = self.edges.iter().copied().collect();
        for (u, v) in extra {
            all.insert(match self.kind {
                GraphKind::Undirected => (u.min(v), u.max(v)),
                GraphKind::Directed => (u, v),
            });
        }
        Graph::new(self.n, self.kind, all)
    }

    /// Structural violations: self-loops, duplicates, bad endpoints.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if u >= self.n || v >= self.n {
                out.push(Violation::EndpointOutOfRange { u, v, n: self.n });
            } else if u == v {
                out.push(Violation::SelfLoop { vertex: u });
            } else if i > 0 && self.edges[i - 1] == (u, v) {
                out.push(Violation::DuplicateEdge { u, v });
            }
        }
        out
    }

    /// True when the undirected graph is connected and has exactly `n - 1`
    /// edges.
    pub fn is_tree(&self) -> bool {
        if self.kind != GraphKind::Undirected || self.n == 0 || self.edges.len() != self.n - 1 {
            return false;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &w in &self.closed[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// True when every vertex has exactly one neighbor.
    pub fn is_perfect_matching(&self) -> bool {
        self.kind == GraphKind::Undirected && (0..self.n).all(|v| self.degree(v) == 1)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("kind", &self.kind)
            .field("edges", &self.edges)
            .finish()
    }
}
