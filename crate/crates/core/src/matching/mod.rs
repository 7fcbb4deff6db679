//! Exact maximum-cardinality and maximum-weight matching in general graphs.
//!
//! Results are canonical: among all optimal matchings the one whose sorted
//! edge list is lexicographically smallest is returned.

mod blossom;

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphKind};

/// Undirected graph with positive integer edge weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<(usize, usize, u64)>,
}

impl WeightedGraph {
    /// Builds a weighted graph; rejects self-loops, duplicates, bad endpoints
    /// and zero weights. Edges are stored as `(min, max, w)`, sorted.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, u64)>) -> Result<Self> {
        let mut out: Vec<(usize, usize, u64)> = Vec::new();
        for (u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {u}")));
            }
            if w == 0 {
                return Err(Error::invalid(format!("edge ({u}, {v}) has weight 0")));
            }
            out.push((u.min(v), u.max(v), w));
        }
        out.sort_unstable();
        if let Some(pair) = out.windows(2).find(|p| (p[0].0, p[0].1) == (p[1].0, p[1].1)) {
            return Err(Error::invalid(format!("duplicate edge ({}, {})", pair[0].0, pair[0].1)));
        }
        Ok(WeightedGraph { n, edges: out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, u64)] {
        &self.edges
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<u64> {
        let key = (u.min(v), u.max(v));
        self.edges
            .binary_search_by(|e| (e.0, e.1).cmp(&key))
            .ok()
            .map(|i| self.edges[i].2)
    }

    /// Debug dump: the system header and edge lines plus `w <u> <v> <weight>`.
    pub fn to_text(&self) -> String {
        let mut s = format!("syds {} undirected\n", self.n);
        for &(u, v, _) in &self.edges {
            s.push_str(&format!("e {u} {v}\n"));
        }
        for &(u, v, w) in &self.edges {
            s.push_str(&format!("w {u} {v} {w}\n"));
        }
        s
    }
}

/// A set of vertex-disjoint edges, stored sorted as `(min, max)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matching {
    edges: Vec<(usize, usize)>,
    weight: u64,
}

impl Matching {
    /// Builds a matching, rejecting edges that share an endpoint.
    pub fn new(edges: impl IntoIterator<Item = (usize, usize)>, weight: u64) -> Result<Self> {
        let mut e: Vec<(usize, usize)> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        e.sort_unstable();
        let mut seen = BTreeSet::new();
        for &(u, v) in &e {
            if u == v || !seen.insert(u) || !seen.insert(v) {
                return Err(Error::invalid(format!("edge ({u}, {v}) shares an endpoint")));
            }
        }
        Ok(Matching { edges: e, weight })
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn cardinality(&self) -> usize {
        self.edges.len()
    }

    /// Total weight; equals the cardinality for unweighted matchings.
    pub fn weight(&self) -> u64 {
        self.weight
    }

    /// Covered vertices, ascending.
    pub fn covered(&self) -> Vec<usize> {
        let mut c: Vec<usize> = self.edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        c.sort_unstable();
        c
    }

    pub fn mate(&self, v: usize) -> Option<usize> {
        self.edges.iter().find_map(|&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// True iff the matching covers all `n` vertices.
pub fn is_perfect(matching: &Matching, n: usize) -> bool {
    2 * matching.cardinality() == n
}

/// Maximum-cardinality matching; ties go to the lexicographically first
/// sorted edge list.
pub fn max_cardinality_matching(graph: &Graph) -> Matching {
    debug_assert_eq!(graph.kind(), GraphKind::Undirected);
    let edges: Vec<(usize, usize, i64)> = graph.edges().iter().map(|&(u, v)| (u, v, 1)).collect();
    let chosen = lex_first_optimum(graph.n(), &edges);
    let weight = chosen.len() as u64;
    Matching { edges: chosen, weight }
}

/// Maximum-weight matching. Among maximum-weight matchings it has the fewest
/// edges, and among those the lexicographically first sorted edge list.
pub fn max_weight_matching(graph: &WeightedGraph) -> Matching {
    // w(n+1) - 1 keeps the weight order strict while making every extra edge
    // cost one unit, so fewer edges wins any weight tie.
    let scale = graph.n as i64 + 1;
    let edges: Vec<(usize, usize, i64)> = graph
        .edges
        .iter()
        .map(|&(u, v, w)| (u, v, w as i64 * scale - 1))
        .collect();
    let chosen = lex_first_optimum(graph.n, &edges);
    let weight = chosen.iter().map(|&(u, v)| graph.weight(u, v).unwrap()).sum();
    Matching { edges: chosen, weight }
}

fn mates_value(edges: &[(usize, usize, i64)], mates: &[Option<usize>]) -> i64 {
    edges
        .iter()
        .filter(|&&(u, v, _)| mates[u] == Some(v))
        .map(|e| e.2)
        .sum()
}

/// Optimum of the sub-instance without the `removed` vertices, plus the mates
/// realizing it.
fn solve_without(n: usize, edges: &[(usize, usize, i64)], removed: &[bool]) -> (i64, Vec<Option<usize>>) {
    let sub: Vec<(usize, usize, i64)> = edges
        .iter()
        .copied()
        .filter(|&(u, v, _)| !removed[u] && !removed[v])
        .collect();
    let mates = blossom::max_weight_mates(n, &sub);
    (mates_value(&sub, &mates), mates)
}

/// Greedy canonicalization: walks vertices in ascending order and matches each
/// to its smallest partner that still admits an optimal completion.
fn lex_first_optimum(n: usize, edges: &[(usize, usize, i64)]) -> Vec<(usize, usize)> {
    let mut removed = vec![false; n];
    let (mut target, mut witness) = solve_without(n, edges, &removed);
    let mut adjacency: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    for &(u, v, w) in edges {
        adjacency[u].push((v, w));
        adjacency[v].push((u, w));
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }
    let mut chosen = Vec::new();
    for u in 0..n {
        if removed[u] {
            continue;
        }
        removed[u] = true;
        for &(v, w) in &adjacency[u] {
            if removed[v] {
                continue;
            }
            if witness[u] == Some(v) {
                // The current witness already completes this choice.
                removed[v] = true;
                target -= w;
                chosen.push((u, v));
                break;
            }
            if witness[u].is_some_and(|m| m < v) {
                break;
            }
            removed[v] = true;
            let (value, mates) = solve_without(n, edges, &removed);
            if value + w == target {
                target -= w;
                witness = mates;
                chosen.push((u, v));
                break;
            }
            removed[v] = false;
        }
    }
    chosen
}
