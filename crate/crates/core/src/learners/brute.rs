//! Exhaustive consistency oracle.
//!
//! Enumerates every graph of a class in a fixed canonical order and, per
//! vertex, sweeps every canonical threshold by simulation. It shares no
//! shortcut with the learners, which makes it a usable reference for them.

use itertools::Itertools;
use rayon::prelude::*;

use super::{precheck, LearnOutcome, Refusal};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphKind};
use crate::observations::{is_consistent, TrainingSet};
use crate::system::ThresholdSystem;
use crate::Parallelism;

pub const DEFAULT_ENUMERATION_LIMIT: usize = 8;

/// Hypothesis classes the oracle can enumerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HypothesisClass {
    /// Any undirected graph, any thresholds.
    UndirectedThreshold,
    /// Graphs that are perfect matchings, any thresholds.
    MatchingThreshold,
    /// Directed graphs with in-degree at most `delta`, any thresholds.
    DirectedBounded { delta: usize },
    /// `base` plus at most `k` further edges, at most `cap` of them at any
    /// vertex when `cap` is set; any thresholds.
    SupergraphOf { base: Graph, k: usize, cap: Option<usize> },
    /// Trees with every threshold equal to 2.
    TreeThreshold2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteForceOptions {
    /// Largest vertex count accepted.
    pub limit: usize,
    pub parallelism: Parallelism,
}

impl Default for BruteForceOptions {
    fn default() -> Self {
        BruteForceOptions {
            limit: DEFAULT_ENUMERATION_LIMIT,
            parallelism: Parallelism::Serial,
        }
    }
}

/// Smallest canonical threshold under which `v` reproduces every observed
/// state given closed neighborhood `nbhd`, found by trying each in turn.
fn sweep_threshold(obs: &TrainingSet, v: usize, nbhd: &[usize]) -> Option<i64> {
    let scores: Vec<(usize, bool)> = obs
        .iter()
        .map(|p| {
            let s = nbhd.iter().filter(|&&u| p.predecessor.get(u)).count();
            (s, p.successor.get(v))
        })
        .collect();
    (0..=nbhd.len() as i64 + 1).find(|&tau| scores.iter().all(|&(s, out)| (s as i64 >= tau) == out))
}

fn closed(v: usize, neighbors: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut set: Vec<usize> = neighbors.into_iter().collect();
    set.push(v);
    set.sort_unstable();
    set
}

/// Fits thresholds to a fixed undirected graph by sweeping.
fn fit_graph(obs: &TrainingSet, g: &Graph) -> Option<Vec<i64>> {
    (0..g.n())
        .map(|v| sweep_threshold(obs, v, g.closed_neighborhood(v)))
        .collect()
}

fn first_in_order<T, F>(items: Vec<T>, parallelism: Parallelism, f: F) -> Option<ThresholdSystem>
where
    T: Send + Sync,
    F: Fn(&T) -> Option<ThresholdSystem> + Send + Sync,
{
    match parallelism {
        Parallelism::Serial => items.iter().find_map(f),
        Parallelism::Parallel => items.par_iter().find_map_first(f),
    }
}

/// Searches `class` for a system consistent with `obs`. Returns the first one
/// in canonical enumeration order, or a refusal iff none exists.
pub fn brute_force_consistent(
    n: usize,
    obs: &TrainingSet,
    class: &HypothesisClass,
    options: &BruteForceOptions,
) -> Result<LearnOutcome> {
    if n > options.limit {
        return Err(Error::UnsupportedInstance(format!(
            "exhaustive search is limited to n <= {} (got {n})",
            options.limit
        )));
    }
    if n == 0 {
        return Err(Error::invalid("exhaustive search needs at least one vertex"));
    }
    if let Some(r) = precheck(n, obs)? {
        return Ok(LearnOutcome::Refused(r));
    }
    let found = match class {
        HypothesisClass::UndirectedThreshold => search_undirected(n, obs, options.parallelism),
        HypothesisClass::MatchingThreshold => search_matchings(n, obs, options.parallelism),
        HypothesisClass::DirectedBounded { delta } => search_directed(n, obs, *delta),
        HypothesisClass::SupergraphOf { base, k, cap } => {
            if base.n() != n || base.kind() != GraphKind::Undirected {
                return Err(Error::invalid("base graph must be undirected on the same vertex set"));
            }
            search_supergraphs(obs, base, *k, *cap, options.parallelism)?
        }
        HypothesisClass::TreeThreshold2 => search_trees(n, obs, options.parallelism),
    };
    match found {
        Some(system) => {
            if !is_consistent(&system, obs)? {
                return Err(Error::Internal(
                    "exhaustive search returned an inconsistent system".into(),
                ));
            }
            Ok(LearnOutcome::Learned(system))
        }
        None => Ok(LearnOutcome::Refused(Refusal::NoConsistentSystem)),
    }
}

/// Depth-first search over edge subsets. Pairs are decided in order
/// (0,1), (0,2), ..., absent before present; a vertex is checked as soon as
/// all of its pairs are decided.
struct UndirectedSearch<'a> {
    n: usize,
    obs: &'a TrainingSet,
    pairs: Vec<(usize, usize)>,
    /// `ready[i]`: vertices whose last pair has index `i`.
    ready: Vec<Vec<usize>>,
}

impl UndirectedSearch<'_> {
    fn neighbors(&self, v: usize, present: &[bool]) -> Vec<usize> {
        closed(
            v,
            self.pairs
                .iter()
                .zip(present)
                .filter(|&(&(a, b), &on)| on && (a == v || b == v))
                .map(|(&(a, b), _)| if a == v { b } else { a }),
        )
    }

    fn check_ready(&self, i: usize, present: &[bool], taus: &mut [i64]) -> bool {
        for &v in &self.ready[i] {
            match sweep_threshold(self.obs, v, &self.neighbors(v, present)) {
                Some(t) => taus[v] = t,
                None => return false,
            }
        }
        true
    }

    fn dfs(&self, i: usize, present: &mut Vec<bool>, taus: &mut Vec<i64>) -> Option<ThresholdSystem> {
        if i == self.pairs.len() {
            let edges = self.pairs.iter().zip(present.iter()).filter(|p| *p.1).map(|p| *p.0);
            let g = Graph::new(self.n, GraphKind::Undirected, edges).ok()?;
            return ThresholdSystem::new(g, taus.clone()).ok();
        }
        for on in [false, true] {
            present.push(on);
            if self.check_ready(i, present, taus) {
                if let Some(s) = self.dfs(i + 1, present, taus) {
                    return Some(s);
                }
            }
            present.pop();
        }
        None
    }

    fn system_for_prefix(&self, bits: &[bool]) -> Option<ThresholdSystem> {
        let mut present = Vec::with_capacity(self.pairs.len());
        let mut taus = vec![0i64; self.n];
        for (i, &on) in bits.iter().enumerate() {
            present.push(on);
            if !self.check_ready(i, &present, &mut taus) {
                return None;
            }
        }
        self.dfs(bits.len(), &mut present, &mut taus)
    }
}

fn search_undirected(n: usize, obs: &TrainingSet, parallelism: Parallelism) -> Option<ThresholdSystem> {
    if n == 1 {
        let t = sweep_threshold(obs, 0, &[0])?;
        return ThresholdSystem::new(Graph::empty(1, GraphKind::Undirected), vec![t]).ok();
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut ready = vec![Vec::new(); pairs.len()];
    for v in 0..n {
        let last = pairs.iter().rposition(|&(a, b)| a == v || b == v).unwrap();
        ready[last].push(v);
    }
    let search = UndirectedSearch { n, obs, pairs, ready };
    // Split the first few pair decisions into independent prefixes; their
    // natural order is the depth-first order, so the first hit is canonical.
    let depth = search.pairs.len().min(8);
    let prefixes: Vec<Vec<bool>> = (0..1usize << depth)
        .map(|idx| (0..depth).map(|j| idx >> (depth - 1 - j) & 1 == 1).collect())
        .collect();
    first_in_order(prefixes, parallelism, |bits| search.system_for_prefix(bits))
}

fn perfect_matchings(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(free: &mut Vec<usize>, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if free.is_empty() {
            out.push(cur.clone());
            return;
        }
        let u = free.remove(0);
        for i in 0..free.len() {
            let v = free.remove(i);
            cur.push((u, v));
            rec(free, cur, out);
            cur.pop();
            free.insert(i, v);
        }
        free.insert(0, u);
    }
    let mut out = Vec::new();
    if n.is_multiple_of(2) {
        rec(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    }
    out
}

fn search_matchings(n: usize, obs: &TrainingSet, parallelism: Parallelism) -> Option<ThresholdSystem> {
    first_in_order(perfect_matchings(n), parallelism, |m| {
        let g = Graph::new(n, GraphKind::Undirected, m.iter().copied()).ok()?;
        let taus = fit_graph(obs, &g)?;
        ThresholdSystem::new(g, taus).ok()
    })
}

/// In-neighborhoods of a directed graph are chosen independently, so each
/// vertex is searched on its own.
fn search_directed(n: usize, obs: &TrainingSet, delta: usize) -> Option<ThresholdSystem> {
    let mut edges = Vec::new();
    let mut taus = Vec::with_capacity(n);
    for v in 0..n {
        let others: Vec<usize> = (0..n).filter(|&u| u != v).collect();
        let (y, t) = (0..=delta.min(others.len()))
            .flat_map(|size| others.iter().copied().combinations(size))
            .find_map(|y| sweep_threshold(obs, v, &closed(v, y.iter().copied())).map(|t| (y, t)))?;
        edges.extend(y.into_iter().map(|u| (u, v)));
        taus.push(t);
    }
    let g = Graph::new(n, GraphKind::Directed, edges).ok()?;
    ThresholdSystem::new(g, taus).ok()
}

fn search_supergraphs(
    obs: &TrainingSet,
    base: &Graph,
    k: usize,
    cap: Option<usize>,
    parallelism: Parallelism,
) -> Result<Option<ThresholdSystem>> {
    let n = base.n();
    let candidates: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !base.has_edge(u, v))
        .collect();
    for size in 0..=k.min(candidates.len()) {
        let sets: Vec<Vec<(usize, usize)>> = candidates
            .iter()
            .copied()
            .combinations(size)
            .filter(|set| {
                cap.is_none_or(|c| (0..n).all(|v| set.iter().filter(|&&(a, b)| a == v || b == v).count() <= c))
            })
            .collect();
        let found = first_in_order(sets, parallelism, |extra| {
            let g = base.with_edges(extra.iter().copied()).ok()?;
            let taus = fit_graph(obs, &g)?;
            ThresholdSystem::new(g, taus).ok()
        });
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Tree encoded by a Prüfer sequence.
fn prufer_tree(n: usize, code: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &c in code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &c in code {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, c));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

fn search_trees(n: usize, obs: &TrainingSet, parallelism: Parallelism) -> Option<ThresholdSystem> {
    let check = |edges: Vec<(usize, usize)>| -> Option<ThresholdSystem> {
        let g = Graph::new(n, GraphKind::Undirected, edges).ok()?;
        let s = ThresholdSystem::new(g, vec![2; n]).ok()?;
        is_consistent(&s, obs).ok()?.then_some(s)
    };
    if n == 1 {
        return check(Vec::new());
    }
    if n == 2 {
        return check(vec![(0, 1)]);
    }
    let len = n - 2;
    let count = n.pow(len as u32);
    let codes: Vec<usize> = (0..count).collect();
    first_in_order(codes, parallelism, |&idx| {
        let mut code = vec![0usize; len];
        let mut x = idx;
        for slot in code.iter_mut().rev() {
            *slot = x % n;
            x /= n;
        }
        check(prufer_tree(n, &code))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learners::learn_matching;

    fn obs(pairs: &[(&str, &str)]) -> TrainingSet {
        TrainingSet::from_bitstrings(pairs).unwrap()
    }

    fn run(n: usize, o: &TrainingSet, class: HypothesisClass) -> LearnOutcome {
        brute_force_consistent(n, o, &class, &BruteForceOptions::default()).unwrap()
    }

    #[test]
    fn matching_class_agrees_with_learner() {
        let o = obs(&[("00", "00"), ("11", "11")]);
        assert_eq!(
            run(2, &o, HypothesisClass::MatchingThreshold).is_learned(),
            learn_matching(2, &o).unwrap().is_learned()
        );
        let o = obs(&[("11", "00"), ("10", "11")]);
        assert!(!run(2, &o, HypothesisClass::MatchingThreshold).is_learned());
    }

    #[test]
    fn contradictory_is_refused() {
        let o = obs(&[("000", "000"), ("000", "100")]);
        assert_eq!(
            run(3, &o, HypothesisClass::UndirectedThreshold).refusal(),
            Some(&Refusal::Contradictory)
        );
    }

    #[test]
    fn directed_truth_table_is_realizable() {
        let g = Graph::new(4, GraphKind::Directed, [(1, 0), (2, 0), (3, 1), (0, 3)]).unwrap();
        let truth = ThresholdSystem::new(g, vec![2, 1, 1, 2]).unwrap();
        let o = TrainingSet::truth_table(&truth).unwrap();
        assert!(run(4, &o, HypothesisClass::DirectedBounded { delta: 3 }).is_learned());
    }

    #[test]
    fn counts_of_enumerated_structures() {
        assert_eq!(perfect_matchings(6).len(), 15);
        assert_eq!(perfect_matchings(8).len(), 105);
        let mut trees = std::collections::BTreeSet::new();
        for idx in 0..125 {
            let code = [idx / 25, idx / 5 % 5, idx % 5];
            let mut e: Vec<(usize, usize)> = prufer_tree(5, &code)
                .into_iter()
                .map(|(a, b)| (a.min(b), a.max(b)))
                .collect();
            e.sort_unstable();
            assert!(Graph::new(5, GraphKind::Undirected, e.clone()).unwrap().is_tree());
            trees.insert(e);
        }
        assert_eq!(trees.len(), 125);
    }

    #[test]
    fn undirected_search_finds_the_truth_and_is_mode_independent() {
        let g = Graph::new(5, GraphKind::Undirected, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let truth = ThresholdSystem::new(g, vec![1, 2, 2, 2, 1]).unwrap();
        let o =
            crate::observations::sample_training_set(&truth, &crate::ConfigDistribution::uniform(5), 10, 1).unwrap();
        let serial = run(5, &o, HypothesisClass::UndirectedThreshold);
        let parallel = brute_force_consistent(
            5,
            &o,
            &HypothesisClass::UndirectedThreshold,
            &BruteForceOptions {
                parallelism: Parallelism::Parallel,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(serial.is_learned());
        assert_eq!(serial, parallel);
    }

    #[test]
    fn limit_is_enforced() {
        let o = TrainingSet::empty(9);
        assert!(matches!(
            brute_force_consistent(
                9,
                &o,
                &HypothesisClass::UndirectedThreshold,
                &BruteForceOptions::default()
            ),
            Err(Error::UnsupportedInstance(_))
        ));
    }
}
