//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so every criterion reports even when an
//! earlier one fails. The process exits nonzero if any criterion fails.

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use rand::Rng;

use syds_core::evaluation::{run_pac_experiment, PacExperimentConfig, PacReport, SampleSize};
use syds_core::generate::{random_directed_system, random_matching_system, random_undirected_system};
use syds_core::hardness::{
    assignment_from_system, find_satisfying_assignment, reduce_3sat, reduce_3sat_undirected, satisfying_assignments,
    witness_from_assignment, CnfFormula, ReductionVariant,
};
use syds_core::learners::{
    analyze_partial, brute_force_consistent, learn_directed_bounded, learn_matching, learn_partial, BruteForceOptions,
    HypothesisClass, LearnOutcome, Learner, PartialInstance,
};
use syds_core::matching::WeightedGraph;
use syds_core::observations::{is_consistent, sample_training_set};
use syds_core::rng::{seeded_rng, SeededRng};
use syds_core::theory::{
    build_shatter_instance, ndim_lower_bound, ndim_sample_lower_bound, sample_complexity_m_edges,
    sample_complexity_partial, sample_complexity_upper, sample_complexity_upper_tight, verify_shattering, BoundQuery,
};
use syds_core::{ConfigDistribution, Graph, Parallelism, ThresholdSystem, TrainingSet};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

/// Flips one successor bit of a random pair.
fn corrupt(obs: &TrainingSet, rng: &mut SeededRng) -> TrainingSet {
    let mut pairs = obs.pairs().to_vec();
    let i = rng.gen_range(0..pairs.len());
    let v = rng.gen_range(0..obs.n());
    pairs[i].successor.flip(v);
    TrainingSet::new(obs.n(), pairs).unwrap()
}

fn brute(n: usize, obs: &TrainingSet, class: HypothesisClass) -> LearnOutcome {
    brute_force_consistent(n, obs, &class, &BruteForceOptions::default()).unwrap()
}

fn criterion_1() -> Verdict {
    let mut rng = seeded_rng(0xC1);
    let (mut cases, mut agree, mut yes, mut certified) = (0, 0, 0, 0);
    let mut first_bad = None;
    for i in 0..600u64 {
        let n = [4, 6, 8][(i % 3) as usize];
        let truth = random_matching_system(n, 1000 + i).unwrap();
        let q = rng.gen_range(1..=12);
        let mut obs = sample_training_set(&truth, &ConfigDistribution::uniform(n), q, 2000 + i).unwrap();
        if rng.gen_bool(0.5) {
            obs = corrupt(&obs, &mut rng);
        }
        let fast = learn_matching(n, &obs).unwrap();
        let slow = brute(n, &obs, HypothesisClass::MatchingThreshold);
        cases += 1;
        if fast.is_learned() == slow.is_learned() {
            agree += 1;
        } else if first_bad.is_none() {
            first_bad = Some(i);
        }
        if let Some(h) = fast.system() {
            yes += 1;
            if is_consistent(h, &obs).unwrap() && h.graph().is_perfect_matching() {
                certified += 1;
            }
        }
    }
    verdict(
        agree == cases && certified == yes && cases >= 500,
        format!("{agree}/{cases} decisions agree ({yes} yes, {} no); {certified}/{yes} hypotheses consistent; first disagreement {first_bad:?}", cases - yes),
    )
}

fn criterion_2() -> Verdict {
    let mut rng = seeded_rng(0xC2);
    let (mut cases, mut agree, mut yes, mut certified) = (0, 0, 0, 0);
    for i in 0..360u64 {
        let n = [4, 5, 6][(i % 3) as usize];
        let delta = ((i / 3) % 3) as usize;
        let truth = random_directed_system(n, rng.gen_range(0..=2), 3000 + i).unwrap();
        let q = rng.gen_range(1..=12);
        let mut obs = sample_training_set(&truth, &ConfigDistribution::uniform(n), q, 4000 + i).unwrap();
        if rng.gen_bool(0.3) {
            obs = corrupt(&obs, &mut rng);
        }
        let fast = learn_directed_bounded(n, &obs, delta).unwrap();
        let slow = brute(n, &obs, HypothesisClass::DirectedBounded { delta });
        cases += 1;
        agree += usize::from(fast.is_learned() == slow.is_learned());
        if let Some(h) = fast.system() {
            yes += 1;
            let bounded = (0..n).all(|v| h.graph().degree(v) <= delta);
            certified += usize::from(is_consistent(h, &obs).unwrap() && bounded && h.graph().is_directed());
        }
    }
    verdict(
        agree == cases && certified == yes && cases >= 300,
        format!(
            "{agree}/{cases} decisions agree ({yes} yes, {} no); {certified}/{yes} hypotheses consistent",
            cases - yes
        ),
    )
}

/// Every matching of `g`, as edge lists.
fn all_matchings(g: &WeightedGraph) -> Vec<Vec<(usize, usize, u64)>> {
    fn go(
        edges: &[(usize, usize, u64)],
        i: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<(usize, usize, u64)>,
        out: &mut Vec<Vec<(usize, usize, u64)>>,
    ) {
        if i == edges.len() {
            out.push(cur.clone());
            return;
        }
        go(edges, i + 1, used, cur, out);
        let (u, v, w) = edges[i];
        if !used[u] && !used[v] {
            used[u] = true;
            used[v] = true;
            cur.push((u, v, w));
            go(edges, i + 1, used, cur, out);
            cur.pop();
            used[u] = false;
            used[v] = false;
        }
    }
    let mut out = Vec::new();
    go(g.edges(), 0, &mut vec![false; g.n()], &mut Vec::new(), &mut out);
    out
}

/// Checks `μ(M′) = ⌊W(M′)/t⌋` for every matching `M′` of the repair graph;
/// returns the number of matchings checked, or `None` on a violation.
fn mu_identity(instance: &PartialInstance, obs: &TrainingSet) -> Option<usize> {
    let a = analyze_partial(instance, obs).unwrap();
    let Some(gm) = a.gm else { return Some(0) };
    let matchings = all_matchings(&gm);
    for m in &matchings {
        let mu = m
            .iter()
            .flat_map(|&(u, v, _)| [u, v])
            .filter(|x| a.v_prime.contains(x))
            .count() as u64;
        let w: u64 = m.iter().map(|e| e.2).sum();
        if mu != w / a.t {
            return None;
        }
    }
    Some(matchings.len())
}

/// A random undirected graph plus a random matching on its non-edges.
fn graph_with_missing(n: usize, rng: &mut SeededRng) -> (Graph, Vec<(usize, usize)>) {
    let g_obs = random_undirected_system(n, rng.gen_range(0.1..0.5), rng.gen())
        .unwrap()
        .graph()
        .clone();
    let mut free: Vec<usize> = (0..n).collect();
    let mut missing = Vec::new();
    let target = rng.gen_range(0..=n / 2);
    for _ in 0..50 {
        if missing.len() == target || free.len() < 2 {
            break;
        }
        let a = free[rng.gen_range(0..free.len())];
        let b = free[rng.gen_range(0..free.len())];
        if a != b && !g_obs.has_edge(a, b) {
            missing.push((a.min(b), a.max(b)));
            free.retain(|&x| x != a && x != b);
        }
    }
    (g_obs, missing)
}

fn criterion_3() -> Verdict {
    let mut rng = seeded_rng(0xC3);
    let (mut repaired, mut cases, mut missing_total) = (0, 0, 0);
    let (mut mu_graphs, mut mu_matchings, mut mu_bad) = (0, 0, 0);
    let check_mu = |inst: &PartialInstance, obs: &TrainingSet, graphs: &mut usize, ms: &mut usize, bad: &mut usize| {
        match mu_identity(inst, obs) {
            Some(0) => {}
            Some(k) => {
                *graphs += 1;
                *ms += k;
            }
            None => *bad += 1,
        }
    };
    while cases < 240 {
        let n = rng.gen_range(3..=8);
        let (g_obs, missing) = graph_with_missing(n, &mut rng);
        let truth_graph = g_obs.with_edges(missing.iter().copied()).unwrap();
        let taus = (0..n)
            .map(|v| rng.gen_range(0..=truth_graph.closed_neighborhood(v).len() as i64 + 1))
            .collect();
        let truth = ThresholdSystem::new(truth_graph, taus).unwrap();
        let obs = TrainingSet::truth_table(&truth).unwrap();
        let k = rng.gen_range(missing.len()..=n / 2);
        let inst = PartialInstance::new(g_obs, k, 1).unwrap();
        cases += 1;
        missing_total += missing.len();
        if let LearnOutcome::Learned(h) = learn_partial(&inst, &obs).unwrap() {
            repaired += usize::from(is_consistent(&h, &obs).unwrap());
        }
        check_mu(&inst, &obs, &mut mu_graphs, &mut mu_matchings, &mut mu_bad);
        // A sampled subset of the truth table gives sparser constraints and
        // richer repair graphs.
        let part = sample_training_set(
            &truth,
            &ConfigDistribution::uniform(n),
            rng.gen_range(1..=12),
            rng.gen(),
        )
        .unwrap();
        check_mu(&inst, &part, &mut mu_graphs, &mut mu_matchings, &mut mu_bad);
    }

    // Vertex `v` loses two true edges to vertices in its firing set.
    let (mut constructed, mut refused) = (0, 0);
    let mut attempts = 0;
    while constructed < 200 && attempts < 20_000 {
        attempts += 1;
        let n = rng.gen_range(3..=8);
        let base = random_undirected_system(n, rng.gen_range(0.0..0.4), rng.gen())
            .unwrap()
            .graph()
            .clone();
        let v = rng.gen_range(0..n);
        let others: Vec<usize> = (0..n).filter(|&u| u != v && !base.has_edge(u, v)).collect();
        if others.len() < 2 {
            continue;
        }
        let a = others[rng.gen_range(0..others.len())];
        let b = others[rng.gen_range(0..others.len())];
        if a == b {
            continue;
        }
        let truth_graph = base.with_edges([(v.min(a), v.max(a)), (v.min(b), v.max(b))]).unwrap();
        let taus = (0..n)
            .map(|u| rng.gen_range(0..=truth_graph.closed_neighborhood(u).len() as i64 + 1))
            .collect();
        let truth = ThresholdSystem::new(truth_graph, taus).unwrap();
        let obs = TrainingSet::truth_table(&truth).unwrap();
        let inst = PartialInstance::new(base, n / 2, 1).unwrap();
        if analyze_partial(&inst, &obs).unwrap().v_double_prime.is_empty() {
            continue;
        }
        constructed += 1;
        refused += usize::from(!learn_partial(&inst, &obs).unwrap().is_learned());
    }
    verdict(
        repaired == cases && constructed >= 200 && refused == constructed && mu_bad == 0 && mu_graphs > 0,
        format!(
            "{repaired}/{cases} repaired ({missing_total} missing edges total); {refused}/{constructed} V'' instances refused; mu identity on {mu_matchings} matchings of {mu_graphs} repair graphs, {mu_bad} violations"
        ),
    )
}

fn criterion_4() -> Verdict {
    let (eps, delta, trials) = (0.1, 0.1, 200);
    let config = PacExperimentConfig {
        truth: random_matching_system(8, 0xC4).unwrap(),
        dist: ConfigDistribution::uniform(8),
        eps,
        delta,
        trials,
        q: SampleSize::FromBound,
        learner: Learner::Matching,
        seed: 0xC4,
        mc_samples: 0,
    };
    let r = run_pac_experiment(&config, Parallelism::Parallel).unwrap();
    let bound = sample_complexity_upper(&BoundQuery::new(8, eps, delta)).unwrap().ceil() as usize;
    let tol = PacReport::tolerance(delta, trials);
    verdict(
        r.exceed_fraction <= tol && r.q == bound && r.exact,
        format!(
            "q={} trials={} exceed_fraction={} tolerance={tol:.4} mean_error={:.5} refusals={}",
            r.q, r.trials, r.exceed_fraction, r.mean_error, r.refusals
        ),
    )
}

fn criterion_5() -> Verdict {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 2..=8 {
        let start = Instant::now();
        let inst = build_shatter_instance(n).unwrap();
        let size_ok = inst.r.len() as u64 == ndim_lower_bound(n).unwrap() && inst.r.len() == (n / 2) * n.div_ceil(2);
        let shattered = verify_shattering(n, Parallelism::Parallel).unwrap();
        ok &= size_ok && shattered;
        parts.push(format!(
            "n={n}:|R|={},shattered={shattered},{:.2}s",
            inst.r.len(),
            start.elapsed().as_secs_f64()
        ));
    }
    verdict(ok, parts.join(" "))
}

/// Non-tautological clauses of width at most 3 over `vars` variables.
fn all_clauses(vars: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << vars) {
        let chosen: Vec<i64> = (0..vars).filter(|i| mask >> i & 1 == 1).map(|i| i as i64 + 1).collect();
        if chosen.len() > 3 {
            continue;
        }
        for signs in 0u32..(1 << chosen.len()) {
            out.push(
                chosen
                    .iter()
                    .enumerate()
                    .map(|(j, &x)| if signs >> j & 1 == 1 { -x } else { x })
                    .collect(),
            );
        }
    }
    out
}

fn size_ok(f: &CnfFormula) -> bool {
    let (n, m) = (f.num_vars(), f.clauses().len());
    let u = reduce_3sat(f, ReductionVariant::Undirected).unwrap();
    let t = reduce_3sat(f, ReductionVariant::Tree).unwrap();
    u.vertex_count() == 2 * n + 2
        && u.obs.len() == n + m + 2
        && t.vertex_count() == 4 * n + 3
        && t.obs.len() == 4 * n + m + 3
}

fn criterion_6() -> Verdict {
    // Exhaustive: every non-empty set of clauses over 1 or 2 variables.
    let (mut formulas, mut agree, mut sat_count, mut sizes_bad, mut recovered) = (0, 0, 0, 0, 0);
    for vars in 1..=2 {
        let clauses = all_clauses(vars);
        for mask in 1u64..(1 << clauses.len()) {
            let cs: Vec<Vec<i64>> = (0..clauses.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| clauses[i].clone())
                .collect();
            let f = CnfFormula::new(vars, cs).unwrap();
            let sat = find_satisfying_assignment(&f).unwrap().is_some();
            let red = reduce_3sat_undirected(&f).unwrap();
            let out = brute(red.vertex_count(), &red.obs, HypothesisClass::UndirectedThreshold);
            formulas += 1;
            sat_count += usize::from(sat);
            agree += usize::from(sat == out.is_learned());
            sizes_bad += usize::from(!size_ok(&f));
            if let Some(s) = out.system() {
                let alpha = assignment_from_system(&f, s, ReductionVariant::Undirected).unwrap();
                recovered += usize::from(f.evaluate(&alpha).unwrap());
            }
        }
    }

    // Forward direction for every formula with at most 4 variables and 6
    // clauses. S(α) does not depend on the clauses and the transition set
    // of a formula is the union of the per-clause sets, so checking every
    // (clause, satisfying α) pair covers every formula; random whole
    // formulas confirm the decomposition directly.
    let mut forward_bad = 0;
    let mut forward_checked = 0;
    for vars in 1..=4 {
        let clauses = all_clauses(vars);
        for bits in 0u32..(1 << vars) {
            let alpha: Vec<bool> = (0..vars).map(|i| bits >> i & 1 == 1).collect();
            for c in &clauses {
                let f = CnfFormula::new(vars, vec![c.clone()]).unwrap();
                if !f.evaluate(&alpha).unwrap() {
                    continue;
                }
                let w = witness_from_assignment(&f, &alpha, ReductionVariant::Undirected).unwrap();
                let red = reduce_3sat_undirected(&f).unwrap();
                forward_checked += 1;
                forward_bad += usize::from(!is_consistent(&w, &red.obs).unwrap());
            }
        }
    }
    let mut rng = seeded_rng(0xC6);
    let (mut random_sat, mut union_bad) = (0, 0);
    for _ in 0..3000 {
        let vars = rng.gen_range(1..=4);
        let clauses = all_clauses(vars);
        let m = rng.gen_range(1..=6);
        let cs: Vec<Vec<i64>> = (0..m)
            .map(|_| clauses[rng.gen_range(0..clauses.len())].clone())
            .collect();
        let f = CnfFormula::new(vars, cs.clone()).unwrap();
        sizes_bad += usize::from(!size_ok(&f));
        let red = reduce_3sat_undirected(&f).unwrap();
        let union_ok = cs.iter().all(|c| {
            let single = reduce_3sat_undirected(&CnfFormula::new(vars, vec![c.clone()]).unwrap()).unwrap();
            single.obs.iter().all(|p| red.obs.pairs().contains(p))
        });
        union_bad += usize::from(!union_ok);
        for alpha in satisfying_assignments(&f).unwrap() {
            random_sat += 1;
            let w = witness_from_assignment(&f, &alpha, ReductionVariant::Undirected).unwrap();
            forward_bad += usize::from(!is_consistent(&w, &red.obs).unwrap());
        }
    }
    let pass = agree == formulas && formulas == 3 + 255 && forward_bad == 0 && sizes_bad == 0 && union_bad == 0;
    verdict(
        pass,
        format!(
            "{agree}/{formulas} exhaustive formulas agree ({sat_count} satisfiable, {recovered} assignments recovered from learned systems); forward witness: {forward_checked} clause/assignment pairs + {random_sat} whole-formula assignments, {forward_bad} failures; {union_bad} union failures; {sizes_bad} size violations"
        ),
    )
}

fn tree_variant_note() -> String {
    let mut parts = Vec::new();
    for cs in [vec![vec![1]], vec![vec![-1]], vec![vec![1], vec![-1]]] {
        let f = CnfFormula::new(1, cs.clone()).unwrap();
        let sat = find_satisfying_assignment(&f).unwrap().is_some();
        let red = reduce_3sat(&f, ReductionVariant::Tree).unwrap();
        let tree = brute(red.vertex_count(), &red.obs, HypothesisClass::TreeThreshold2).is_learned();
        parts.push(format!("{cs:?}:sat={sat},tree-consistent={tree}"));
    }
    parts.join(" ")
}

fn criterion_7() -> Verdict {
    let q = |n, eps, delta| BoundQuery::new(n, eps, delta);
    let eq1 = sample_complexity_upper(&q(10, 0.1, 0.1)).unwrap();
    let eq1_ok = (eq1 - 1253.28).abs() <= 0.01;

    let mut identities_ok = true;
    for n in 1..=30 {
        for (eps, delta) in [(0.1, 0.1), (0.3, 0.05), (0.77, 0.5)] {
            for d_avg in [0.0, 1.5, 4.0] {
                let base = BoundQuery {
                    d_avg,
                    ..q(n, eps, delta)
                };
                let k0 = sample_complexity_partial(&base).unwrap();
                identities_ok &= k0 == (n as f64 * (d_avg + 3.0).ln() + (1.0 / delta).ln()) / eps;
            }
            let full = BoundQuery {
                m: (n * n) as u64,
                ..q(n, eps, delta)
            };
            identities_ok &= sample_complexity_m_edges(&full).unwrap() == (1.0 / delta).ln() / eps;
        }
    }

    // Randomized grid over the valid domain.
    let mut rng = seeded_rng(0xC7);
    type Bound = fn(&BoundQuery) -> syds_core::Result<f64>;
    let funcs: [(&str, Bound); 5] = [
        ("eq1", sample_complexity_upper),
        ("eq1_tight", sample_complexity_upper_tight),
        ("partial", sample_complexity_partial),
        ("m_edges", sample_complexity_m_edges),
        ("ndim_lower", ndim_sample_lower_bound),
    ];
    let mut violations: Vec<(String, usize, String)> = Vec::new();
    let mut record = |name: String, example: String| match violations.iter_mut().find(|v| v.0 == name) {
        Some(v) => v.1 += 1,
        None => violations.push((name, 1, example)),
    };
    let mut sandwich_bad = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=40usize);
        let n2 = (n * n) as u64;
        let p = BoundQuery {
            d_avg: rng.gen_range(0.0..n as f64),
            k: rng.gen_range(0..n2),
            m: rng.gen_range(0..n2),
            ..q(n, rng.gen_range(0.01..0.98), rng.gen_range(0.01..0.98))
        };
        let steps: [(&str, BoundQuery, bool); 6] = [
            (
                "eps",
                BoundQuery {
                    eps: p.eps + 0.01,
                    ..p.clone()
                },
                true,
            ),
            (
                "delta",
                BoundQuery {
                    delta: p.delta + 0.01,
                    ..p.clone()
                },
                true,
            ),
            ("n", BoundQuery { n: n + 1, ..p.clone() }, false),
            (
                "k",
                BoundQuery {
                    k: p.k + 1,
                    ..p.clone()
                },
                false,
            ),
            (
                "m",
                BoundQuery {
                    m: p.m + 1,
                    ..p.clone()
                },
                false,
            ),
            (
                "d_avg",
                BoundQuery {
                    d_avg: p.d_avg + 0.5,
                    ..p.clone()
                },
                false,
            ),
        ];
        for (fname, f) in funcs {
            let a = f(&p).unwrap();
            for (var, stepped, decreasing) in &steps {
                let b = f(stepped).unwrap();
                let ok = if *decreasing { b < a } else { b >= a };
                if !ok {
                    record(
                        format!("{fname}/{var}"),
                        format!(
                            "n={n} eps={:.3} delta={:.3} k={} m={} d_avg={:.2}: {a:.4} -> {b:.4}",
                            p.eps, p.delta, p.k, p.m, p.d_avg
                        ),
                    );
                }
            }
        }
        if n >= 2 {
            let lo = ndim_sample_lower_bound(&p).unwrap();
            sandwich_bad += usize::from(lo > sample_complexity_upper(&p).unwrap());
        }
    }
    let mono_ok = violations.is_empty();
    let mut detail = format!(
        "eq1={eq1:.4} ({}); degenerate identities {}; sandwich violations {sandwich_bad}; monotonicity over 1000 points: ",
        if eq1_ok { "ok" } else { "off" },
        if identities_ok { "exact" } else { "FAILED" },
    );
    if mono_ok {
        detail.push_str("all hold");
    } else {
        let list: Vec<String> = violations
            .iter()
            .map(|(name, count, ex)| format!("{name} violated at {count} points (e.g. {ex})"))
            .collect();
        detail.push_str(&list.join("; "));
    }
    verdict(eq1_ok && identities_ok && sandwich_bad == 0 && mono_ok, detail)
}

struct Run {
    code: Option<i32>,
    stdout: Vec<u8>,
    files: Vec<Vec<u8>>,
}

fn syds(args: &[&str], outputs: &[&Path]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_syds")).args(args).output().unwrap();
    Run {
        code: out.status.code(),
        stdout: out.stdout,
        files: outputs.iter().map(|p| std::fs::read(p).unwrap_or_default()).collect(),
    }
}

fn criterion_8() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let p = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let (sys, obs, hyp, dsys, dobs, usys, uobs, gobs, cnf, red, wit, table) = (
        p("sys.txt"),
        p("obs.txt"),
        p("hyp.txt"),
        p("dsys.txt"),
        p("dobs.txt"),
        p("usys.txt"),
        p("uobs.txt"),
        p("gobs.txt"),
        p("f.cnf"),
        p("red.txt"),
        p("wit.txt"),
        p("table.txt"),
    );
    std::fs::write(&cnf, "p cnf 3 3\n1 -2 3 0\n-1 2 0\n2 3 0\n").unwrap();
    // The partial learner's observed graph: the generated matching with its
    // last edge removed.
    syds(
        &[
            "gen-system",
            "--class",
            "matching",
            "--n",
            "6",
            "--seed",
            "7",
            "--out",
            &sys,
        ],
        &[],
    );
    let sys_text = std::fs::read_to_string(&sys).unwrap();
    let mut kept: Vec<&str> = sys_text.lines().filter(|l| !l.starts_with('t')).collect();
    kept.pop();
    std::fs::write(&gobs, kept.join("\n") + "\n").unwrap();

    // Commands in dependency order; the flag marks those with a parallel mode.
    let commands: Vec<(Vec<&str>, Vec<&str>, bool)> = vec![
        (
            vec![
                "gen-system",
                "--class",
                "matching",
                "--n",
                "6",
                "--seed",
                "7",
                "--out",
                &sys,
            ],
            vec![&sys],
            false,
        ),
        (
            vec![
                "gen-system",
                "--class",
                "directed",
                "--n",
                "5",
                "--delta",
                "2",
                "--seed",
                "7",
                "--out",
                &dsys,
            ],
            vec![&dsys],
            false,
        ),
        (
            vec![
                "gen-system",
                "--class",
                "undirected",
                "--n",
                "6",
                "--p",
                "0.3",
                "--seed",
                "7",
                "--out",
                &usys,
            ],
            vec![&usys],
            false,
        ),
        (
            vec!["step", "--system", &sys, "--config", "101100", "--steps", "4"],
            vec![],
            false,
        ),
        (
            vec!["sample", "--system", &sys, "--q", "30", "--seed", "9", "--out", &obs],
            vec![&obs],
            false,
        ),
        (
            vec![
                "sample",
                "--system",
                &dsys,
                "--q",
                "25",
                "--dist",
                "bernoulli",
                "--p",
                "0.3",
                "--seed",
                "9",
                "--out",
                &dobs,
            ],
            vec![&dobs],
            false,
        ),
        (
            vec!["sample", "--system", &usys, "--q", "12", "--seed", "9", "--out", &uobs],
            vec![&uobs],
            false,
        ),
        (
            vec!["learn", "--class", "matching", "--obs", &obs, "--out", &hyp],
            vec![&hyp],
            true,
        ),
        (
            vec!["learn", "--class", "directed", "--delta", "2", "--obs", &dobs],
            vec![],
            true,
        ),
        (
            vec!["learn", "--class", "known", "--graph", &sys, "--obs", &obs],
            vec![],
            true,
        ),
        (
            vec![
                "learn", "--class", "partial", "--gobs", &gobs, "--k", "1", "--obs", &obs,
            ],
            vec![],
            true,
        ),
        (
            vec![
                "learn",
                "--class",
                "brute",
                "--brute-class",
                "undirected",
                "--obs",
                &uobs,
            ],
            vec![],
            true,
        ),
        (
            vec!["learn", "--class", "brute", "--brute-class", "matching", "--obs", &obs],
            vec![],
            true,
        ),
        (vec!["check", "--system", &hyp, "--obs", &obs], vec![], false),
        (
            vec![
                "reduce-3sat",
                "--cnf",
                &cnf,
                "--variant",
                "undirected",
                "--out",
                &red,
                "--witness-out",
                &wit,
            ],
            vec![&red, &wit],
            false,
        ),
        (
            vec!["reduce-3sat", "--cnf", &cnf, "--variant", "tree", "--out", &red],
            vec![&red],
            false,
        ),
        (
            vec![
                "bounds", "--n", "10", "--eps", "0.1", "--delta", "0.1", "--k", "3", "--m", "5", "--d-avg", "2",
            ],
            vec![],
            false,
        ),
        (vec!["shatter", "--n", "5", "--verify"], vec![], true),
        (vec!["eval-error", "--hypothesis", &hyp, "--truth", &sys], vec![], false),
        (
            vec![
                "eval-error",
                "--hypothesis",
                &hyp,
                "--truth",
                &sys,
                "--mc-samples",
                "5000",
                "--seed",
                "3",
            ],
            vec![],
            false,
        ),
        (
            vec![
                "pac-experiment",
                "--truth",
                &sys,
                "--class",
                "matching",
                "--eps",
                "0.1",
                "--pac-delta",
                "0.1",
                "--trials",
                "40",
                "--seed",
                "11",
                "--out",
                &table,
            ],
            vec![&table],
            true,
        ),
        (
            vec![
                "pac-experiment",
                "--truth",
                &dsys,
                "--class",
                "directed",
                "--delta",
                "2",
                "--eps",
                "0.2",
                "--pac-delta",
                "0.1",
                "--trials",
                "20",
                "--q",
                "60",
                "--seed",
                "11",
            ],
            vec![],
            true,
        ),
    ];
    let mut bad = Vec::new();
    let mut compared = 0;
    for (args, outs, has_parallel) in &commands {
        let outs: Vec<&Path> = outs.iter().map(Path::new).collect();
        let first = syds(args, &outs);
        let second = syds(args, &outs);
        compared += 1;
        if first.code != Some(0) {
            bad.push(format!("{} exited {:?}", args[0], first.code));
        }
        if first.stdout != second.stdout || first.files != second.files || first.code != second.code {
            bad.push(format!("{} differs across runs", args.join(" ")));
        }
        if *has_parallel {
            let mut par = args.clone();
            par.push("--parallel");
            let third = syds(&par, &outs);
            compared += 1;
            if first.stdout != third.stdout || first.files != third.files || first.code != third.code {
                bad.push(format!("{} differs serial vs parallel", args.join(" ")));
            }
        }
    }
    verdict(
        bad.is_empty(),
        format!(
            "{} commands, {compared} comparisons; {}",
            commands.len(),
            if bad.is_empty() {
                "all byte-identical".to_string()
            } else {
                bad.join("; ")
            }
        ),
    )
}

fn main() {
    type Criterion = fn() -> Verdict;
    let criteria: [(&str, Criterion); 8] = [
        ("1 matching learner = brute force (>=500 cases)", criterion_1),
        ("2 directed learner = brute force (>=300 cases)", criterion_2),
        ("3 partial learner repair, V'' refusal, mu identity", criterion_3),
        ("4 PAC exceed fraction <= delta + 3 sd (n=8, T=200)", criterion_4),
        ("5 shattering verified, |R| = floor(n^2/4)", criterion_5),
        ("6 3SAT reduction vs brute force, forward witness, sizes", criterion_6),
        ("7 bound arithmetic, identities, monotonicity", criterion_7),
        ("8 CLI determinism across runs and thread modes", criterion_8),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let v = run();
        failed += usize::from(!v.pass);
        println!(
            "criterion {name}: {} [{:.1}s] {}",
            if v.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            v.detail
        );
    }
    println!(
        "note: tree reduction, 1-variable formulas (informational): {}",
        tree_variant_note()
    );
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
