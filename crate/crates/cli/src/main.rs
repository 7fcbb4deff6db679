//! `syds`: command-line front end for threshold dynamical systems.
//!
//! Exit codes: 0 on success, 2 when a decision question is answered "no"
//! (a refusal to learn, an inconsistent check, a failed shattering), 1 on
//! any error. Every run echoes its resolved configuration as `# key=value`
//! lines on stdout; the thread mode and wall time go to stderr so stdout is
//! byte-identical between serial and parallel runs.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use syds_core::evaluation::{
    run_pac_experiment, true_error_exact, true_error_mc, PacExperimentConfig, PacReport, SampleSize,
};
use syds_core::generate::{random_directed_system, random_matching_system, random_undirected_system};
use syds_core::hardness::{find_satisfying_assignment, parse_dimacs, reduce_3sat, ReductionVariant, TRUTH_TABLE_LIMIT};
use syds_core::learners::{BruteForceOptions, HypothesisClass, LearnOutcome, Learner, PartialInstance};
use syds_core::observations::{error_on_observations, is_consistent, sample_training_set};
use syds_core::text::{observations_to_text, parse_graph, parse_observations, parse_system, system_to_text};
use syds_core::theory::{
    build_shatter_instance, ndim_lower_bound, ndim_sample_lower_bound, sample_complexity_m_edges,
    sample_complexity_partial, sample_complexity_upper, sample_complexity_upper_tight, verify_shattering, BoundQuery,
};
use syds_core::{ConfigDistribution, Configuration, Parallelism, ThresholdSystem};

#[derive(Parser, Debug)]
#[command(
    name = "syds",
    version,
    about = "Threshold synchronous dynamical systems: simulate, learn, reduce, bound"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a random threshold system.
    GenSystem(GenSystemArgs),
    /// Run the synchronous dynamics from a configuration.
    Step(StepArgs),
    /// Sample an observation set from a system.
    Sample(SampleArgs),
    /// Learn a consistent system from observations.
    Learn(LearnArgs),
    /// Check whether a system reproduces every observation.
    Check(CheckArgs),
    /// Build the transition set of the 3SAT reduction.
    #[command(name = "reduce-3sat")]
    Reduce3sat(ReduceArgs),
    /// Evaluate the sample-complexity bounds.
    Bounds(BoundsArgs),
    /// Build and optionally verify the shattering construction.
    Shatter(ShatterArgs),
    /// True error of a hypothesis against a ground truth.
    EvalError(EvalErrorArgs),
    /// Repeated learn-and-measure trials.
    PacExperiment(PacArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum GenClass {
    Matching,
    Directed,
    Undirected,
}

#[derive(Args, Debug)]
struct GenSystemArgs {
    #[arg(long, value_enum)]
    class: GenClass,
    #[arg(long)]
    n: usize,
    /// In-degree bound for the directed class.
    #[arg(long)]
    delta: Option<usize>,
    /// Edge probability for the undirected class.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct StepArgs {
    #[arg(long)]
    system: PathBuf,
    /// Initial configuration as a bit string, vertex 0 leftmost.
    #[arg(long)]
    config: String,
    #[arg(long, default_value_t = 1)]
    steps: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum DistKind {
    Uniform,
    Bernoulli,
}

#[derive(Args, Debug)]
struct DistArgs {
    #[arg(long, value_enum, default_value = "uniform")]
    dist: DistKind,
    /// Per-vertex probability of state 1 for the Bernoulli distribution.
    #[arg(long)]
    p: Option<f64>,
}

impl DistArgs {
    fn build(&self, n: usize) -> Result<ConfigDistribution> {
        match (self.dist, self.p) {
            (DistKind::Uniform, None) => Ok(ConfigDistribution::uniform(n)),
            (DistKind::Uniform, Some(_)) => bail!("--p applies only to --dist bernoulli"),
            (DistKind::Bernoulli, Some(p)) => Ok(ConfigDistribution::bernoulli(vec![p; n])?),
            (DistKind::Bernoulli, None) => bail!("--dist bernoulli requires --p"),
        }
    }

    fn echo(&self, out: &mut String) {
        echo(out, "dist", format!("{:?}", self.dist).to_lowercase());
        if let Some(p) = self.p {
            echo(out, "p", p);
        }
    }
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[arg(long)]
    system: PathBuf,
    #[arg(long)]
    q: usize,
    #[command(flatten)]
    dist: DistArgs,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum LearnClass {
    Matching,
    Directed,
    Partial,
    Known,
    Brute,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum BruteClass {
    Undirected,
    Matching,
    Directed,
    Supergraph,
    Tree,
}

#[derive(Args, Debug)]
struct LearnerArgs {
    #[arg(long, value_enum)]
    class: LearnClass,
    /// In-degree bound (directed learner, brute directed class).
    #[arg(long)]
    delta: Option<usize>,
    /// Observed graph (partial learner, brute supergraph class).
    #[arg(long)]
    gobs: Option<PathBuf>,
    /// Missing-edge budget (partial learner, brute supergraph class).
    #[arg(long)]
    k: Option<usize>,
    /// Per-vertex cap on missing edges.
    #[arg(long)]
    cap: Option<usize>,
    /// Known graph (known learner).
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Hypothesis class searched by the brute-force learner.
    #[arg(long, value_enum)]
    brute_class: Option<BruteClass>,
    /// Vertex limit of the brute-force learner.
    #[arg(long)]
    brute_limit: Option<usize>,
}

impl LearnerArgs {
    fn build(&self) -> Result<Learner> {
        let need_delta = || self.delta.context("--delta is required for this class");
        let gobs = || -> Result<_> {
            let path = self.gobs.as_ref().context("--gobs is required for this class")?;
            parse_graph(&read(path)?).with_context(|| format!("parsing {}", path.display()))
        };
        let need_k = || self.k.context("--k is required for this class");
        let unused = |name: &str, set: bool| -> Result<()> {
            if set {
                bail!("--{name} does not apply to --class {:?}", self.class);
            }
            Ok(())
        };
        if self.class != LearnClass::Brute {
            unused("brute-class", self.brute_class.is_some())?;
            unused("brute-limit", self.brute_limit.is_some())?;
        }
        Ok(match self.class {
            LearnClass::Matching => Learner::Matching,
            LearnClass::Directed => Learner::DirectedBounded { delta: need_delta()? },
            LearnClass::Known => {
                let path = self.graph.as_ref().context("--graph is required for --class known")?;
                Learner::KnownGraph(parse_graph(&read(path)?).with_context(|| format!("parsing {}", path.display()))?)
            }
            LearnClass::Partial => Learner::Partial(PartialInstance::new(gobs()?, need_k()?, self.cap.unwrap_or(1))?),
            LearnClass::Brute => {
                let class = match self
                    .brute_class
                    .context("--brute-class is required for --class brute")?
                {
                    BruteClass::Undirected => HypothesisClass::UndirectedThreshold,
                    BruteClass::Matching => HypothesisClass::MatchingThreshold,
                    BruteClass::Directed => HypothesisClass::DirectedBounded { delta: need_delta()? },
                    BruteClass::Supergraph => HypothesisClass::SupergraphOf {
                        base: gobs()?,
                        k: need_k()?,
                        cap: self.cap,
                    },
                    BruteClass::Tree => HypothesisClass::TreeThreshold2,
                };
                let mut options = BruteForceOptions::default();
                if let Some(limit) = self.brute_limit {
                    options.limit = limit;
                }
                Learner::BruteForce(class, options)
            }
        })
    }

    fn echo(&self, out: &mut String) {
        echo(out, "class", format!("{:?}", self.class).to_lowercase());
        if let Some(c) = self.brute_class {
            echo(out, "brute_class", format!("{c:?}").to_lowercase());
        }
        if let Some(l) = self.brute_limit {
            echo(out, "brute_limit", l);
        }
        if let Some(d) = self.delta {
            echo(out, "delta", d);
        }
        if let Some(g) = &self.gobs {
            echo(out, "gobs", g.display());
        }
        if let Some(k) = self.k {
            echo(out, "k", k);
        }
        if let Some(c) = self.cap {
            echo(out, "cap", c);
        }
        if let Some(g) = &self.graph {
            echo(out, "graph", g.display());
        }
    }
}

#[derive(Args, Debug)]
struct LearnArgs {
    #[command(flatten)]
    learner: LearnerArgs,
    #[arg(long)]
    obs: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Fan work out to threads where the learner supports it.
    #[arg(long)]
    parallel: bool,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long)]
    system: PathBuf,
    #[arg(long)]
    obs: PathBuf,
}

#[derive(Args, Debug)]
struct ReduceArgs {
    /// DIMACS CNF input.
    #[arg(long)]
    cnf: PathBuf,
    #[arg(long, default_value = "undirected")]
    variant: String,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the witness system of a satisfying assignment, if any.
    #[arg(long)]
    witness_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    eps: f64,
    #[arg(long)]
    delta: f64,
    /// Average degree of the observed graph.
    #[arg(long, default_value_t = 0.0)]
    d_avg: f64,
    /// Missing-edge budget.
    #[arg(long, default_value_t = 0)]
    k: u64,
    /// Edge budget.
    #[arg(long, default_value_t = 0)]
    m: u64,
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    #[arg(long, default_value_t = 1.0)]
    c1: f64,
}

#[derive(Args, Debug)]
struct ShatterArgs {
    #[arg(long)]
    n: usize,
    /// Verify every subset by simulation.
    #[arg(long)]
    verify: bool,
    #[arg(long)]
    parallel: bool,
}

#[derive(Args, Debug)]
struct EvalErrorArgs {
    #[arg(long)]
    hypothesis: PathBuf,
    #[arg(long)]
    truth: PathBuf,
    #[command(flatten)]
    dist: DistArgs,
    /// Estimate by sampling instead of exact enumeration.
    #[arg(long)]
    mc_samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct PacArgs {
    #[arg(long)]
    truth: PathBuf,
    #[command(flatten)]
    learner: LearnerArgs,
    #[command(flatten)]
    dist: DistArgs,
    #[arg(long)]
    eps: f64,
    /// Confidence parameter; `--delta` is the learner's in-degree bound here.
    #[arg(long)]
    pac_delta: f64,
    #[arg(long)]
    trials: usize,
    /// Training-set size; defaults to the ceiling of the upper bound.
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    seed: u64,
    /// Samples per Monte Carlo error estimate when exact error is infeasible.
    #[arg(long, default_value_t = 100_000)]
    mc_samples: usize,
    #[arg(long)]
    parallel: bool,
    /// Per-trial error table.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// What a subcommand produced.
struct Outcome {
    stdout: String,
    /// False for an honest "no".
    yes: bool,
}

fn echo(out: &mut String, key: &str, value: impl std::fmt::Display) {
    let _ = writeln!(out, "# {key}={value}");
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_system(path: &Path) -> Result<ThresholdSystem> {
    parse_system(&read(path)?).with_context(|| format!("parsing system file {}", path.display()))
}

/// Writes `content` to `path`, or appends it to stdout when no path is given.
fn emit(out: &mut String, path: Option<&PathBuf>, content: &str) -> Result<()> {
    match path {
        Some(p) => {
            fs::write(p, content).with_context(|| format!("cannot write {}", p.display()))?;
            echo(out, "wrote", p.display());
        }
        None => out.push_str(content),
    }
    Ok(())
}

fn parallelism(flag: bool) -> Parallelism {
    if flag {
        Parallelism::Parallel
    } else {
        Parallelism::Serial
    }
}

fn gen_system(a: &GenSystemArgs) -> Result<Outcome> {
    let mut out = String::new();
    echo(&mut out, "command", "gen-system");
    echo(&mut out, "class", format!("{:?}", a.class).to_lowercase());
    echo(&mut out, "n", a.n);
    echo(&mut out, "seed", a.seed);
    let system = match a.class {
        GenClass::Matching => random_matching_system(a.n, a.seed)?,
        GenClass::Directed => {
            let delta = a.delta.context("--delta is required for --class directed")?;
            echo(&mut out, "delta", delta);
            random_directed_system(a.n, delta, a.seed)?
        }
        GenClass::Undirected => {
            let p = a.p.context("--p is required for --class undirected")?;
            echo(&mut out, "p", p);
            random_undirected_system(a.n, p, a.seed)?
        }
    };
    emit(&mut out, a.out.as_ref(), &system_to_text(&system))?;
    Ok(Outcome { stdout: out, yes: true })
}

fn step(a: &StepArgs) -> Result<Outcome> {
    let mut out = String::new();
    echo(&mut out, "command", "step");
    echo(&mut out, "system", a.system.display());
    echo(&mut out, "config", &a.config);
    echo(&mut out, "steps", a.steps);
    let system = read_system(&a.system)?;
    let start = Configuration::parse_with_len(&a.config, system.n()).context("parsing --config")?;
    for (t, c) in system.trajectory(&start, a.steps)?.iter().enumerate() {
        let _ = writeln!(out, "{t} {c}");
    }
    Ok(Outcome { stdout: out, yes: true })
}

fn sample(a: &SampleArgs) -> Result<Outcome> {
    let mut out = String::new();
    echo(&mut out, "command", "sample");
    echo(&mut out, "system", a.system.display());
    echo(&mut out, "q", a.q);
    a.dist.echo(&mut out);
    echo(&mut out, "seed", a.seed);
    let system = read_system(&a.system)?;
    let obs = sample_training_set(&system, &a.dist.build(system.n())?, a.q, a.seed)?;
    emit(&mut out, a.out.as_ref(), &observations_to_text(&obs))?;
    Ok(Outcome { stdout: out, yes: true })
}

fn learn(a: &LearnArgs) -> Result<Outcome> {
    let mut out = String::new();
    echo(&mut out, "command", "learn");
    a.learner.echo(&mut out);
    echo(&mut out, "obs", a.obs.display());
    let learner = a.learner.build()?;
    let obs =
        parse_observations(&read(&a.obs)?).with_context(|| format!("parsing observations {}", a.obs.display()))?;
    match learner.learn_with(&obs, parallelism(a.parallel))? {
        LearnOutcome::Learned(system) => {
            echo(&mut out, "result", "learned");
            emit(&mut out, a.out.as_ref(), &system_to_text(&system))?;
            Ok(Outcome { stdout: out, yes: true })
        }
        LearnOutcome::Refused(r) => {
            echo(&mut out, "result", "refused");
            let _ = writeln!(out, "refused: {}: {r}", r.code());
            Ok(Outcome {
                stdout: out,
                yes: false,
            })
        }
    }
}

fn check(a: &CheckArgs) -> Result<Outcome> {
    let mut out = String::new();
    echo(&mut out, "command", "check");
    echo(&mut out, "system", a.system.display());
    echo(&mut out, "obs", a.obs.display());
    let system = read_system(&a.system)?;
    let obs =
        parse_observations(&read(&a.obs)?).with_context(|| format!("parsing observations {}", a.obs.display()))?;
    let ok = is_consistent(&system, &obs)?;
    let _ = writeln!(out, "consistent={}", if ok { "yes" } else { "no" });
    let _ = writeln!(out, "error_on_obs={}", error_on_observations(&system, &obs)?);
    Ok(Outcome { stdout: out, yes: ok })
}

fn reduce(a: &ReduceArgs) -> Result<Outcome> {
    let mut out = String::new();
    echo(&mut out, "command", "reduce-3sat");
    echo(&mut out, "cnf", a.cnf.display());
    let variant: ReductionVariant = a.variant.parse()?;
    echo(&mut out, "variant", variant);
    let formula = parse_dimacs(&read(&a.cnf)?).with_context(|| format!("parsing {}", a.cnf.display()))?;
    let reduction = reduce_3sat(&formula, variant)?;
    let _ = writeln!(out, "vars={}", formula.num_vars());
    let _ = writeln!(out, "clauses={}", formula.clauses().len());
    let _ = writeln!(out, "vertices={}", reduction.vertex_count());
    let _ = writeln!(out, "pairs={}", reduction.obs.len());
    if formula.num_vars() <= TRUTH_TABLE_LIMIT {
        let alpha = find_satisfying_assignment(&formula)?;
        let _ = writeln!(out, "satisfiable={}", alpha.is_some());
        if let (Some(path), Some(alpha)) = (a.witness_out.as_ref(), alpha) {
            let w = syds_core::hardness::witness_from_assignment(&formula, &alpha, variant)?;
            fs::write(path, system_to_text(&w)).with_context(|| format!("cannot write {}", path.display()))?;
            echo(&mut out, "wrote_witness", path.display());
        }
    } else if a.witness_out.is_some() {
        bail!("--witness-out needs a truth-table search, limited to {TRUTH_TABLE_LIMIT} variables");
    }
    emit(&mut out, a.out.as_ref(), &reduction.to_text())?;
    Ok(Outcome { stdout: out, yes: true })
}

fn bounds(a: &BoundsArgs) -> Result<Outcome> {
    let mut out = String::new();
    echo(&mut out, "command", "bounds");
    echo(&mut out, "n", a.n);
    echo(&mut out, "eps", a.eps);
    echo(&mut out, "delta", a.delta);
    echo(&mut out, "d_avg", a.d_avg);
    echo(&mut out, "k", a.k);
    echo(&mut out, "m", a.m);
    echo(&mut out, "c", a.c);
    echo(&mut out, "c1", a.c1);
    let q = BoundQuery {
        d_avg: a.d_avg,
        k: a.k,
        m: a.m,
        c: a.c,
        c1: a.c1,
        ..BoundQuery::new(a.n, a.eps, a.delta)
    };
    let _ = writeln!(out, "eq1={}", sample_complexity_upper(&q)?);
    let _ = writeln!(out, "eq1_tight={}", sample_complexity_upper_tight(&q)?);
    let _ = writeln!(out, "partial={}", sample_complexity_partial(&q)?);
    let _ = writeln!(out, "m_edges={}", sample_complexity_m_edges(&q)?);
    let _ = writeln!(out, "ndim_sample_lower={}", ndim_sample_lower_bound(&q)?);
    if a.n >= 2 {
        let _ = writeln!(out, "ndim_lower={}", ndim_lower_bound(a.n)?);
    }
    Ok(Outcome { stdout: out, yes: true })
}

fn shatter(a: &ShatterArgs) -> Result<Outcome> {
    let mut out = String::new();
    echo(&mut out, "command", "shatter");
    echo(&mut out, "n", a.n);
    echo(&mut out, "verify", a.verify);
    let inst = build_shatter_instance(a.n)?;
    let _ = writeln!(out, "r_size={}", inst.r.len());
    let _ = writeln!(out, "ndim_lower={}", ndim_lower_bound(a.n)?);
    let _ = writeln!(out, "y_size={}", inst.y.len());
    let _ = writeln!(out, "z_size={}", inst.z.len());
    let mut yes = true;
    if a.verify {
        yes = verify_shattering(a.n, parallelism(a.parallel))?;
        let _ = writeln!(out, "shattered={yes}");
    }
    Ok(Outcome { stdout: out, yes })
}

fn eval_error(a: &EvalErrorArgs) -> Result<Outcome> {
    let mut out = String::new();
    echo(&mut out, "command", "eval-error");
    echo(&mut out, "hypothesis", a.hypothesis.display());
    echo(&mut out, "truth", a.truth.display());
    a.dist.echo(&mut out);
    let h = read_system(&a.hypothesis)?;
    let truth = read_system(&a.truth)?;
    let dist = a.dist.build(truth.n())?;
    match a.mc_samples {
        None => {
            if a.seed.is_some() {
                bail!("--seed applies only with --mc-samples");
            }
            echo(&mut out, "method", "exact");
            let _ = writeln!(out, "error={}", true_error_exact(&h, &truth, &dist)?);
        }
        Some(samples) => {
            let seed = a.seed.context("--mc-samples is stochastic and requires --seed")?;
            echo(&mut out, "method", "mc");
            echo(&mut out, "mc_samples", samples);
            echo(&mut out, "seed", seed);
            let e = true_error_mc(&h, &truth, &dist, samples, seed)?;
            let _ = writeln!(out, "error={}", e.estimate);
            let _ = writeln!(out, "stderr={}", e.stderr);
        }
    }
    Ok(Outcome { stdout: out, yes: true })
}

fn pac_experiment(a: &PacArgs) -> Result<Outcome> {
    let mut out = String::new();
    echo(&mut out, "command", "pac-experiment");
    echo(&mut out, "truth", a.truth.display());
    a.learner.echo(&mut out);
    a.dist.echo(&mut out);
    echo(&mut out, "eps", a.eps);
    echo(&mut out, "pac_delta", a.pac_delta);
    echo(&mut out, "trials", a.trials);
    echo(&mut out, "q", a.q.map_or("bound".to_string(), |q| q.to_string()));
    echo(&mut out, "seed", a.seed);
    echo(&mut out, "mc_samples", a.mc_samples);
    let truth = read_system(&a.truth)?;
    let config = PacExperimentConfig {
        dist: a.dist.build(truth.n())?,
        truth,
        eps: a.eps,
        delta: a.pac_delta,
        trials: a.trials,
        q: a.q.map_or(SampleSize::FromBound, SampleSize::Explicit),
        learner: a.learner.build()?,
        seed: a.seed,
        mc_samples: a.mc_samples,
    };
    let report = run_pac_experiment(&config, parallelism(a.parallel))?;
    let tolerance = PacReport::tolerance(a.pac_delta, a.trials);
    let _ = writeln!(out, "q={}", report.q);
    let _ = writeln!(out, "exact_error={}", report.exact);
    let _ = writeln!(out, "refusals={}", report.refusals);
    let _ = writeln!(out, "mean_error={}", report.mean_error);
    let _ = writeln!(out, "exceed_fraction={}", report.exceed_fraction);
    let _ = writeln!(out, "tolerance={tolerance}");
    let _ = writeln!(out, "within_tolerance={}", report.exceed_fraction <= tolerance);
    if let Some(path) = &a.out {
        let mut table = String::from("trial error\n");
        for (t, e) in report.errors.iter().enumerate() {
            let _ = writeln!(table, "{t} {e}");
        }
        emit(&mut out, Some(path), &table)?;
    }
    Ok(Outcome { stdout: out, yes: true })
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::GenSystem(a) => gen_system(a),
        Command::Step(a) => step(a),
        Command::Sample(a) => sample(a),
        Command::Learn(a) => learn(a),
        Command::Check(a) => check(a),
        Command::Reduce3sat(a) => reduce(a),
        Command::Bounds(a) => bounds(a),
        Command::Shatter(a) => shatter(a),
        Command::EvalError(a) => eval_error(a),
        Command::PacExperiment(a) => pac_experiment(a),
    }
}

fn is_parallel(cli: &Cli) -> bool {
    match &cli.command {
        Command::Learn(a) => a.parallel,
        Command::Shatter(a) => a.parallel,
        Command::PacExperiment(a) => a.parallel,
        _ => false,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let start = Instant::now();
    let result = run(&cli);
    eprintln!(
        "# parallel={} wall_time={:.3}s",
        is_parallel(&cli),
        start.elapsed().as_secs_f64()
    );
    match result {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            if outcome.yes {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
