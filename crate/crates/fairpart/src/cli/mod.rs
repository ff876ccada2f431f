//! Command-line surface: `gen`, `run`, `audit`, `experiment`, `bounds`.
//!
//! Exit codes: 0 success, 1 usage error, 2 violated precondition or explicit
//! refusal, 3 internal invariant violation.

mod experiment;

use std::fs;
use std::io::BufReader;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::audit::{run_audit, AttackerMode, CoreQuery};
use crate::error::{Error, Result};
use crate::graph::{generate, load_edge_list, write_edge_list, Graph, GraphModel};
use crate::guarantees::{guarantee_bundle, min_eps, Regime};
use crate::lll::{moser_tardos, LllError};
use crate::mincut2::{exact_min_balanced_cut, local_min_cut, two_core_partition};
use crate::partition::{parse_partition, serialize_partition, Partition, PartitionDoc};
use crate::sample::{default_rejection_budget, rejection_sample_desirable, sample_uniform};

pub use experiment::{run_experiment, ExperimentConfig};

#[derive(Parser, Debug)]
#[command(name = "fairpart", version, about = "Fair balanced graph partitioning")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a graph instance and write it as an edge list.
    Gen(GenArgs),
    /// Run a partitioning algorithm and write the partition file.
    Run(RunArgs),
    /// Audit a partition: envy report plus blocking-coalition search.
    Audit(AuditArgs),
    /// Run a config-driven sweep, appending one CSV row per (instance, seed).
    Experiment(ExperimentArgs),
    /// Print the closed-form guarantee bundle for given parameters.
    Bounds(BoundsArgs),
}

#[derive(Args, Debug)]
struct GenArgs {
    /// One of: complete, cycle, path, grid, regular, gnp, cliques.
    #[arg(long)]
    model: String,
    #[arg(long)]
    n: Option<usize>,
    /// Degree (regular).
    #[arg(long)]
    d: Option<usize>,
    /// Edge probability (gnp).
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    /// Number of cliques (cliques).
    #[arg(long)]
    count: Option<usize>,
    /// Clique size (cliques).
    #[arg(long)]
    size: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Algo {
    Random,
    Reject,
    Lll,
    #[value(name = "mincut2-local")]
    Mincut2Local,
    #[value(name = "mincut2-exact")]
    Mincut2Exact,
    Core2,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long, value_enum)]
    algo: Algo,
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Balance slack for lll; core slack for core2.
    #[arg(long, default_value_t = 0.0)]
    eps: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Attempt/round budget; defaults are algorithm-specific.
    #[arg(long)]
    budget: Option<u64>,
    /// Partition output path.
    #[arg(long)]
    out: PathBuf,
    /// Resample-trace output path (lll only).
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum RegimeArg {
    Balanced,
    Eps,
    /// Infer from the partition file: eps > 0 means the eps regime.
    Auto,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum AttackerArg {
    Exact,
    Greedy,
    /// Exact when the enumeration fits the guard rails, greedy otherwise.
    Auto,
}

#[derive(Args, Debug)]
struct AuditArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    partition: PathBuf,
    #[arg(long, value_enum, default_value_t = RegimeArg::Auto)]
    regime: RegimeArg,
    /// Multiplicative core factor; defaults to the regime's bundle value.
    #[arg(long)]
    alpha: Option<f64>,
    /// Additive core slack; defaults to the regime's bundle value.
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long, value_enum, default_value_t = AttackerArg::Auto)]
    attacker: AttackerArg,
    #[arg(long, default_value_t = 64)]
    restarts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Report path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ExperimentArgs {
    #[arg(long)]
    config: PathBuf,
    /// CSV output path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long, value_enum)]
    regime: BoundsRegime,
    #[arg(long)]
    delta: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0.0)]
    eps: f64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum BoundsRegime {
    Balanced,
    Eps,
}

/// Parses `argv` and executes one subcommand, returning the process exit
/// code.
pub fn run_command<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Run(args) => cmd_run(args),
        Command::Audit(args) => cmd_audit(args),
        Command::Experiment(args) => experiment::cmd_experiment(&args.config, &args.out),
        Command::Bounds(args) => cmd_bounds(args),
    };
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn need(name: &str, value: Option<usize>) -> Result<usize> {
    value.ok_or_else(|| Error::InvalidParams(format!("model requires --{name}")))
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn parse_model(
    model: &str,
    n: Option<usize>,
    d: Option<usize>,
    p: Option<f64>,
    rows: Option<usize>,
    cols: Option<usize>,
    count: Option<usize>,
    size: Option<usize>,
) -> Result<GraphModel> {
    match model {
        "complete" => Ok(GraphModel::Complete { n: need("n", n)? }),
        "cycle" => Ok(GraphModel::Cycle { n: need("n", n)? }),
        "path" => Ok(GraphModel::Path { n: need("n", n)? }),
        "grid" => Ok(GraphModel::Grid { rows: need("rows", rows)?, cols: need("cols", cols)? }),
        "regular" => Ok(GraphModel::Regular { n: need("n", n)?, d: need("d", d)? }),
        "gnp" => {
            let p = p.ok_or_else(|| Error::InvalidParams("model requires --p".into()))?;
            Ok(GraphModel::Gnp { n: need("n", n)?, p })
        }
        "cliques" => {
            Ok(GraphModel::Cliques { count: need("count", count)?, size: need("size", size)? })
        }
        other => Err(Error::InvalidParams(format!("unknown model {other:?}"))),
    }
}

fn cmd_gen(args: GenArgs) -> Result<()> {
    let model = parse_model(
        &args.model,
        args.n,
        args.d,
        args.p,
        args.rows,
        args.cols,
        args.count,
        args.size,
    )?;
    let graph = generate(&model, args.seed)?;
    let mut file = fs::File::create(&args.out)?;
    write_edge_list(&graph, &mut file)?;
    println!(
        "wrote {} (n={}, edges={}, max_degree={}, seed={})",
        args.out.display(),
        graph.n(),
        graph.edge_count(),
        graph.max_degree(),
        args.seed
    );
    Ok(())
}

fn load_graph(path: &PathBuf) -> Result<Graph> {
    let file = fs::File::open(path)?;
    let loaded = load_edge_list(BufReader::new(file))?;
    if loaded.duplicate_edges > 0 {
        eprintln!("warning: collapsed {} duplicate edges", loaded.duplicate_edges);
    }
    let remapped = loaded.original_ids.iter().enumerate().any(|(i, &raw)| raw != i as u64);
    if remapped {
        eprintln!(
            "note: node ids remapped to 0..{} in first-appearance order; reports use internal ids",
            loaded.graph.n()
        );
    }
    Ok(loaded.graph)
}

fn write_partition_file(path: &PathBuf, partition: &Partition, eps: f64) -> Result<()> {
    let doc = PartitionDoc { partition: partition.clone(), eps };
    fs::write(path, serialize_partition(&doc))?;
    Ok(())
}

fn cmd_run(args: RunArgs) -> Result<()> {
    let g = load_graph(&args.graph)?;
    match args.algo {
        Algo::Random => {
            let x = sample_uniform(g.n(), args.k, args.seed)?;
            write_partition_file(&args.out, &x, 0.0)?;
            println!("random: n={}, k={}, seed={}", g.n(), args.k, args.seed);
        }
        Algo::Reject => {
            let budget = args.budget.unwrap_or_else(|| default_rejection_budget(g.n(), args.k));
            let (x, stats) = rejection_sample_desirable(&g, args.k, budget, args.seed)?;
            println!(
                "reject: seed={}, attempts={}, balanced_hits={}, condition_ii_failures={}",
                args.seed, stats.attempts, stats.balanced_hits, stats.condition_ii_failures
            );
            let Some(x) = x else {
                return Err(Error::Refused {
                    what: "rejection sampling",
                    why: format!("budget {budget} exhausted without a desirable partition"),
                });
            };
            write_partition_file(&args.out, &x, 0.0)?;
        }
        Algo::Lll => {
            let run =
                moser_tardos(&g, args.k, args.eps, args.seed, args.budget).map_err(map_lll_err)?;
            write_partition_file(&args.out, &run.partition, args.eps)?;
            if let Some(trace_path) = &args.trace {
                fs::write(trace_path, run.trace.to_text())?;
            }
            println!(
                "lll: seed={}, eps={}, rounds={}",
                args.seed,
                args.eps,
                run.trace.total_rounds()
            );
        }
        Algo::Mincut2Local => {
            require_k2(args.k)?;
            let (x, report) = local_min_cut(&g, args.seed, None)?;
            write_partition_file(&args.out, &x, 0.0)?;
            println!("{}", serde_json::to_string(&report).expect("report serializes"));
        }
        Algo::Mincut2Exact => {
            require_k2(args.k)?;
            let (x, report) = exact_min_balanced_cut(&g)?;
            write_partition_file(&args.out, &x, 0.0)?;
            println!("{}", serde_json::to_string(&report).expect("report serializes"));
        }
        Algo::Core2 => {
            require_k2(args.k)?;
            let result = two_core_partition(&g, args.eps, args.seed)?;
            write_partition_file(&args.out, &result.partition, 0.0)?;
            println!(
                "core2: seed={}, path={}, alpha={:.6}, cut={}",
                args.seed,
                serde_json::to_string(&result.path).expect("path serializes"),
                result.alpha,
                result.cut.cut_value
            );
        }
    }
    Ok(())
}

fn require_k2(k: usize) -> Result<()> {
    if k != 2 {
        return Err(Error::RequiresBipartition { what: "this algorithm", k });
    }
    Ok(())
}

pub(crate) fn map_lll_err(e: LllError) -> Error {
    match e {
        LllError::EpsInfeasible { eps, min_eps } => Error::EpsBelowMin { eps, min_eps },
        LllError::EpsOutOfDomain { eps } => {
            Error::Domain(format!("eps must lie in (0,1], got {eps}"))
        }
        LllError::InvalidParams(msg) => Error::InvalidParams(msg),
        LllError::BudgetExhausted { budget, trace } => Error::Refused {
            what: "resampling",
            why: format!("round budget {budget} exhausted after {} rounds", trace.total_rounds()),
        },
        LllError::Internal(msg) => Error::Internal(msg),
    }
}

fn cmd_audit(args: AuditArgs) -> Result<()> {
    let g = load_graph(&args.graph)?;
    let doc = parse_partition(&fs::read_to_string(&args.partition)?)?;
    let x = doc.partition;
    if x.n() != g.n() {
        return Err(Error::InvalidParams(format!(
            "partition over {} nodes does not match graph with {} nodes",
            x.n(),
            g.n()
        )));
    }
    let regime = match args.regime {
        RegimeArg::Balanced => Regime::Balanced,
        RegimeArg::Eps => Regime::Eps,
        RegimeArg::Auto => {
            if doc.eps > 0.0 {
                Regime::Eps
            } else {
                Regime::Balanced
            }
        }
    };
    if regime == Regime::Eps && (doc.eps <= 0.0 || doc.eps > 1.0) {
        return Err(Error::Domain(format!(
            "eps-regime audit requires a partition built with eps in (0,1], file has {}",
            doc.eps
        )));
    }
    let bundle_eps = if regime == Regime::Eps { doc.eps } else { 0.0 };
    let bundle = guarantee_bundle(regime, g.max_degree(), x.k(), g.n(), bundle_eps)?;
    let alpha = args.alpha.unwrap_or(bundle.core_alpha);
    let beta = args.beta.unwrap_or(bundle.core_beta);
    let q = match regime {
        Regime::Balanced => CoreQuery::balanced(g.n(), x.k(), alpha, beta)?,
        Regime::Eps => CoreQuery::eps_balanced(g.n(), x.k(), doc.eps, alpha, beta)?,
    };
    let attacker = match args.attacker {
        AttackerArg::Exact => AttackerMode::Exact,
        AttackerArg::Greedy => AttackerMode::Greedy,
        AttackerArg::Auto => {
            if crate::audit::exact_search_feasible(g.n(), &q) {
                AttackerMode::Exact
            } else {
                AttackerMode::Greedy
            }
        }
    };
    let report = run_audit(&g, &x, &q, attacker, args.restarts, args.seed)?;
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    match &args.out {
        Some(path) => fs::write(path, json)?,
        None => println!("{json}"),
    }
    Ok(())
}

fn cmd_bounds(args: BoundsArgs) -> Result<()> {
    let regime = match args.regime {
        BoundsRegime::Balanced => Regime::Balanced,
        BoundsRegime::Eps => Regime::Eps,
    };
    let bundle = guarantee_bundle(regime, args.delta, args.k, args.n, args.eps)?;
    println!("regime = {}", bundle.regime);
    println!("n = {}", args.n);
    println!("k = {}", args.k);
    println!("delta = {}", args.delta);
    if regime == Regime::Eps {
        println!("eps = {}", args.eps);
    }
    println!("min_eps = {}", min_eps(args.n, args.k));
    println!("ef_radius = {}", bundle.ef_radius);
    println!("core_alpha = {}", bundle.core_alpha);
    println!("core_beta = {}", bundle.core_beta);
    println!("degree_threshold = {}", bundle.degree_threshold);
    Ok(())
}
