use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use vcla_core::baselines::DEFAULT_EXACT_LIMIT;
use vcla_core::bench::{
    collect_instances, run_algorithm, run_benchmark, write_csv, write_csv_file, write_trace_file,
    Algorithm, BenchConfig,
};
use vcla_core::dimacs::{read_dimacs_file, ParsedGraph};
use vcla_core::{is_vertex_cover, ReinforcementScheme, RunConfig, SchemeKind};

/// Directory for default bench output files when --out/--trace are absent.
const OUT_DIR_VAR: &str = "VCLA_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "vcla",
    version,
    about = "Minimum vertex cover with learning automata"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one DIMACS instance and print the cover.
    Solve {
        file: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Run every instance in the given files/directories over several seeds.
    Bench {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Runs per instance (seeds seed..seed+K).
        #[arg(long, default_value_t = 10)]
        seeds: usize,
        /// Summary rows CSV; stdout if neither this nor $VCLA_OUT_DIR is set.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-iteration entropy trace CSV (learning algorithms only).
        #[arg(long)]
        trace: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Dla,
    Binary,
    Greedy,
    TwoApprox,
    Exact,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Self {
        match a {
            AlgorithmArg::Dla => Algorithm::Dla,
            AlgorithmArg::Binary => Algorithm::Binary,
            AlgorithmArg::Greedy => Algorithm::Greedy,
            AlgorithmArg::TwoApprox => Algorithm::TwoApprox,
            AlgorithmArg::Exact => Algorithm::Exact,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    /// reward-inaction (b = 0)
    Lri,
    /// reward-penalty (b = a)
    Lrp,
    /// reward-epsilon-penalty (0 < b < a)
    Lrep,
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long, value_enum, default_value = "dla")]
    algorithm: AlgorithmArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "lri")]
    scheme: SchemeArg,
    /// Reward rate a.
    #[arg(long, default_value_t = 0.3)]
    learning_rate: f64,
    /// Penalty rate b. Defaults to 0 for lri and to a for lrp; required for lrep.
    #[arg(long)]
    penalty_rate: Option<f64>,
    #[arg(long, default_value_t = 1000)]
    max_iterations: usize,
    #[arg(long, default_value_t = 0.05)]
    entropy_threshold: f64,
    /// Abandon candidates that reach this size (default: vertex count).
    #[arg(long)]
    cover_threshold: Option<usize>,
    /// Largest non-isolated vertex count the exact solver accepts.
    #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
    exact_limit: usize,
}

impl SolverArgs {
    fn run_config(&self) -> Result<RunConfig> {
        let a = self.learning_rate;
        let (kind, b) = match self.scheme {
            SchemeArg::Lri => (SchemeKind::RewardInaction, self.penalty_rate.unwrap_or(0.0)),
            SchemeArg::Lrp => (SchemeKind::RewardPenalty, self.penalty_rate.unwrap_or(a)),
            SchemeArg::Lrep => match self.penalty_rate {
                Some(b) => (SchemeKind::RewardEpsilonPenalty, b),
                None => bail!("--scheme lrep needs --penalty-rate"),
            },
        };
        Ok(RunConfig {
            scheme: ReinforcementScheme::new(kind, a, b)?,
            max_iterations: self.max_iterations,
            entropy_threshold: self.entropy_threshold,
            cover_threshold: self.cover_threshold,
            seed: self.seed,
            ..RunConfig::default()
        })
    }
}

fn load(path: &Path) -> Result<ParsedGraph> {
    let parsed = read_dimacs_file(path)?;
    for w in &parsed.warnings {
        log::warn!("{}: {w}", path.display());
    }
    Ok(parsed)
}

fn solve(file: &Path, args: &SolverArgs) -> Result<()> {
    let g = load(file)?.graph;
    let config = args.run_config()?;
    config.validate(&g)?;
    let algorithm = Algorithm::from(args.algorithm);
    let out = run_algorithm(&g, algorithm, &config, args.exact_limit)?;
    if !is_vertex_cover(&g, &out.cover) {
        bail!("{algorithm} returned a set that is not a vertex cover");
    }

    let mut stdout = std::io::stdout().lock();
    writeln!(
        stdout,
        "instance: {}",
        vcla_core::bench::instance_name(file)
    )?;
    writeln!(
        stdout,
        "vertices: {}  edges: {}",
        g.vertex_count(),
        g.edge_count()
    )?;
    writeln!(stdout, "algorithm: {algorithm}")?;
    writeln!(stdout, "cover size: {}", out.cover.len())?;
    if let Some(reason) = out.stop_reason {
        writeln!(stdout, "Lp: {}", out.lp)?;
        writeln!(stdout, "iterations: {}", out.records.len())?;
        writeln!(stdout, "stop: {reason:?}")?;
        if let Some(last) = out.records.last() {
            writeln!(stdout, "mean entropy: {:.6}", last.mean_entropy)?;
        }
    }
    // 1-based, like the input file
    let ids: Vec<String> = out.cover.iter().map(|v| (v + 1).to_string()).collect();
    writeln!(stdout, "cover: {}", ids.join(" "))?;
    Ok(())
}

fn bench(
    paths: &[PathBuf],
    seeds: usize,
    out: Option<PathBuf>,
    trace: Option<PathBuf>,
    args: &SolverArgs,
) -> Result<()> {
    let run = args.run_config()?;
    if seeds == 0 {
        bail!("--seeds must be at least 1");
    }
    let files = collect_instances(paths)?;
    if files.is_empty() {
        bail!("no instance files found");
    }
    let config = BenchConfig {
        run,
        algorithm: args.algorithm.into(),
        seeds,
        exact_limit: args.exact_limit,
    };
    let result = run_benchmark(&files, &config);
    for e in &result.errors {
        log::error!("{}: {}", e.instance, e.message);
    }

    let out_dir = std::env::var_os(OUT_DIR_VAR).map(PathBuf::from);
    let out = out.or_else(|| out_dir.as_ref().map(|d| d.join("rows.csv")));
    let trace = trace.or_else(|| out_dir.as_ref().map(|d| d.join("traces.csv")));
    match &out {
        Some(path) => write_csv_file(&result.rows, path)
            .with_context(|| format!("writing {}", path.display()))?,
        None => write_csv(&result.rows, std::io::stdout().lock())?,
    }
    if let Some(path) = &trace {
        write_trace_file(&result.traces, path)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if result.rows.is_empty() {
        bail!("every instance failed");
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Solve { file, solver } => solve(&file, &solver),
        Command::Bench {
            paths,
            seeds,
            out,
            trace,
            solver,
        } => bench(&paths, seeds, out, trace, &solver),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
