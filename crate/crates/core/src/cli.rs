//! Command-line surface. Machine output is JSON on stdout; traces go to
//! stderr under `--verbose`.
//!
//! Exit codes: 0 success or verified, 1 legitimate negative (no packing,
//! not certified, failing suite), 2 usage, domain or format error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::colorings::EdgeColoring;
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::oracle::{self, OracleConfig, SearchBudget};
use crate::{bounds, constructions, rainbow, suites};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Environment variable giving the default worker count.
pub const THREADS_ENV: &str = "RAINBOW_FORGE_THREADS";

#[derive(Debug, Parser)]
#[command(name = "rainbow-forge", version, about = "Anti-Ramsey numbers for vertex-disjoint triangles")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Worker threads for parallel loops (0 = one per core).
    #[arg(long, global = true, env = THREADS_ENV, default_value_t = 0)]
    pub threads: usize,
    /// Print a human-readable trace to stderr.
    #[arg(long, short, global = true)]
    pub verbose: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Clique,
    Join,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Lemma {
    /// Path plus triangle, all 1024 cross patterns.
    W1,
    /// Two-edge matching plus triangle, all 4096 cross patterns.
    L4,
    /// Equitable partitions for graphs of maximum degree below k.
    Hs,
    /// Equitable partitions for graphs with at most 3k - 3 edges.
    Sparse,
    /// The exceptional 10-vertex graph.
    Gprime,
    /// The three 8-edge matching/triangle patterns.
    Claims,
    /// Saturated-degree and subgraph identities on random colorings.
    Identities,
    /// The finder at the guarantee threshold.
    Finder,
    /// The finder against exhaustive search below threshold.
    Soundness,
    /// Color counts and rainbow-freeness of the extremal colorings.
    Constructions,
    /// Every suite above.
    All,
}

#[derive(Debug, Args)]
pub struct Instance {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub k: u64,
}

#[derive(Debug, Args, Clone)]
pub struct BudgetArgs {
    /// Wall-clock limit in seconds.
    #[arg(long, value_name = "SECONDS")]
    pub time_budget: Option<f64>,
    /// Limit on search nodes.
    #[arg(long, value_name = "NODES")]
    pub node_budget: Option<u64>,
    /// Leading edge decisions per parallel shard.
    #[arg(long, default_value_t = 7)]
    pub shard_depth: usize,
    /// Prune prefixes equivalent under permutations of the first vertices.
    #[arg(long)]
    pub vertex_symmetry: bool,
    /// Write the best witness coloring here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form bounds for ar(n, kC3).
    Bounds(Instance),
    /// Write an extremal coloring.
    Construct {
        #[command(flatten)]
        instance: Instance,
        #[arg(long, value_enum)]
        which: Which,
        /// Output file; the coloring goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search a coloring file for a rainbow kC3.
    FindRainbow {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Run a property suite.
    Check {
        #[arg(long, value_enum)]
        lemma: Lemma,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Samples per randomized sub-suite (suite-specific default).
        #[arg(long)]
        samples: Option<u64>,
    },
    /// Exact ar(n, kC3) by exhaustive search.
    Exact {
        #[command(flatten)]
        instance: Instance,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Compare the conjectured value with the oracle and the proven bounds.
    Conjecture {
        #[command(flatten)]
        instance: Instance,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

/// Knobs shared by every command.
#[derive(Clone, Debug, Default)]
pub struct RunConfig {
    pub seed: u64,
    pub time_budget: Option<Duration>,
    pub node_budget: Option<u64>,
    pub threads: usize,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    fn oracle(&self, b: &BudgetArgs) -> OracleConfig {
        OracleConfig {
            budget: SearchBudget { node_limit: self.node_budget, time_limit: self.time_budget },
            exec: Execution::Parallel,
            shard_depth: b.shard_depth,
            vertex_symmetry: b.vertex_symmetry,
        }
    }

    fn with_budget(mut self, b: &BudgetArgs) -> Result<Self> {
        self.time_budget = match b.time_budget {
            Some(s) if !(s >= 0.0 && s.is_finite()) => return Err(Error::Domain(format!("time budget must be >= 0 (got {s})"))),
            Some(s) => Some(Duration::from_secs_f64(s)),
            None => None,
        };
        self.node_budget = b.node_budget;
        self.out = b.out.clone();
        Ok(self)
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let threads = cli.global.threads;
    let verbose = cli.global.verbose;
    let result = exec::with_threads(threads, || {
        let mut o = Vec::new();
        let mut e = Vec::new();
        let r = dispatch(cli.command, RunConfig { threads, ..RunConfig::default() }, verbose, &mut o, &mut e);
        (r, o, e)
    });
    let (r, o, e) = result;
    let _ = out.write_all(&o);
    let _ = err.write_all(&e);
    match r {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    writeln!(out, "{text}")?;
    Ok(())
}

fn dispatch(cmd: Command, cfg: RunConfig, verbose: bool, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Bounds(Instance { n, k }) => {
            emit(out, &bounds::report(n, k)?)?;
            Ok(EXIT_OK)
        }
        Command::Construct { instance, which, out: path } => cmd_construct(instance, which, path.as_deref(), out),
        Command::FindRainbow { input, k } => cmd_find_rainbow(&input, k, verbose, out, err),
        Command::Check { lemma, seed, samples } => cmd_check(lemma, RunConfig { seed, ..cfg }, samples, verbose, out, err),
        Command::Exact { instance, budget } => {
            let cfg = cfg.with_budget(&budget)?;
            let (n, k) = small_instance(&instance)?;
            let start = Instant::now();
            let report = oracle::exact_anti_ramsey(n, k, &cfg.oracle(&budget))?;
            if verbose {
                for s in &report.steps {
                    writeln!(err, "c = {:>3}: {} ({} nodes)", s.colors, s.verdict, s.nodes)?;
                }
            }
            save_witness(cfg.out.as_deref(), report.witness.as_ref())?;
            let verdict = json!({
                "n": n,
                "k": k,
                "mode": "exact",
                "value": report.value,
                "interval": [report.lower, report.upper],
                "lower_source": report.lower_source,
                "nodes": report.nodes,
                "elapsed_ms": start.elapsed().as_millis() as u64,
                "certified": report.certified,
                "steps": report.steps,
            });
            emit(out, &verdict)?;
            Ok(if report.certified { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Conjecture { instance, budget } => {
            let cfg = cfg.with_budget(&budget)?;
            let (n, k) = small_instance(&instance)?;
            let start = Instant::now();
            let report = oracle::test_conjecture(n, k, &cfg.oracle(&budget))?;
            let mut verdict = serde_json::to_value(&report).expect("reports serialize");
            verdict["mode"] = json!("conjecture");
            verdict["elapsed_ms"] = json!(start.elapsed().as_millis() as u64);
            verdict["certified"] = json!(report.lower == report.upper);
            emit(out, &verdict)?;
            Ok(match report.verdict {
                oracle::ConjectureVerdict::Consistent => EXIT_OK,
                _ => EXIT_NEGATIVE,
            })
        }
    }
}

fn small_instance(i: &Instance) -> Result<(usize, usize)> {
    let cap = oracle::MAX_ORACLE_VERTICES as u64;
    if i.n > cap {
        return Err(Error::Domain(format!("the oracle handles n <= {cap} (got {})", i.n)));
    }
    Ok((i.n as usize, usize::try_from(i.k).unwrap_or(usize::MAX)))
}

fn save_witness(path: Option<&Path>, witness: Option<&EdgeColoring>) -> Result<()> {
    if let (Some(path), Some(w)) = (path, witness) {
        std::fs::write(path, w.to_json() + "\n")?;
    }
    Ok(())
}

fn cmd_construct(i: Instance, which: Which, path: Option<&Path>, out: &mut dyn Write) -> Result<i32> {
    let n = usize::try_from(i.n).map_err(|_| Error::Domain("n too large".into()))?;
    let k = usize::try_from(i.k).map_err(|_| Error::Domain("k too large".into()))?;
    let col = match which {
        Which::Clique => constructions::clique_plus_pendant_coloring(n, k)?,
        Which::Join => constructions::bipartite_join_coloring(n, k)?,
    };
    match path {
        Some(p) => {
            std::fs::write(p, col.to_json() + "\n")?;
            let name = match which {
                Which::Clique => "clique",
                Which::Join => "join",
            };
            emit(out, &json!({ "n": n, "k": k, "which": name, "colors": col.color_count(), "out": p.display().to_string() }))?;
        }
        None => writeln!(out, "{}", col.to_json())?,
    }
    Ok(EXIT_OK)
}

fn cmd_find_rainbow(input: &Path, k: usize, verbose: bool, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let text = std::fs::read_to_string(input)?;
    let col = EdgeColoring::from_json(&text)?;
    let trace = rainbow::find_rainbow_kc3(&col, k)?;
    if verbose {
        write!(err, "{}", trace.render())?;
    }
    writeln!(out, "{}", trace.to_json())?;
    Ok(if trace.result.is_some() { EXIT_OK } else { EXIT_NEGATIVE })
}

const FINDER_DEFAULT_SAMPLES: u64 = 200;

fn cmd_check(
    lemma: Lemma,
    cfg: RunConfig,
    samples: Option<u64>,
    verbose: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let exec = Execution::Parallel;
    let seed = cfg.seed;
    let s = |default: u64| samples.unwrap_or(default);
    let run_one = |lemma: Lemma| -> suites::SuiteReport {
        match lemma {
            Lemma::W1 => suites::path_triangle_sweep(exec),
            Lemma::L4 => suites::matching_triangle_sweep(exec),
            Lemma::Hs => suites::hs_suite(seed, s(10_000), exec),
            Lemma::Sparse => suites::sparse_suite(seed, s(100_000), exec),
            Lemma::Gprime => suites::gprime_suite(),
            Lemma::Claims => suites::claim_fixture_suite(),
            Lemma::Identities => suites::identity_suite(seed, s(1_000), exec),
            Lemma::Finder => suites::finder_suite(seed, s(FINDER_DEFAULT_SAMPLES), exec),
            Lemma::Soundness => suites::finder_soundness(seed, s(1_000), exec),
            Lemma::Constructions => suites::construction_suite(&CONSTRUCTION_INSTANCES, exec),
            Lemma::All => unreachable!("expanded by the caller"),
        }
    };
    let reports: Vec<suites::SuiteReport> = match lemma {
        Lemma::All => ALL_LEMMAS.iter().map(|&l| run_one(l)).collect(),
        l => vec![run_one(l)],
    };
    if verbose {
        for r in &reports {
            writeln!(err, "{}: {} cases, {} failures", r.suite, r.cases, r.failures)?;
            for (key, v) in &r.tally {
                writeln!(err, "  {key}: {v}")?;
            }
        }
    }
    let passed = reports.iter().all(|r| r.passed());
    if let [single] = reports.as_slice() {
        emit(out, &json!({ "seed": seed, "passed": passed, "report": single }))?;
    } else {
        emit(out, &json!({ "seed": seed, "passed": passed, "reports": reports }))?;
    }
    Ok(if passed { EXIT_OK } else { EXIT_NEGATIVE })
}

const CONSTRUCTION_INSTANCES: [(usize, usize); 6] = [(6, 2), (7, 2), (8, 2), (9, 3), (10, 3), (12, 4)];

const ALL_LEMMAS: [Lemma; 10] = [
    Lemma::W1,
    Lemma::L4,
    Lemma::Hs,
    Lemma::Sparse,
    Lemma::Gprime,
    Lemma::Claims,
    Lemma::Identities,
    Lemma::Finder,
    Lemma::Soundness,
    Lemma::Constructions,
];
