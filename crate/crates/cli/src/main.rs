use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use snbo_core::{run_snbo, AnalyticalProblem, Bounds, SnboConfig};

use snbo_cli::config::{RunConfigFile, RunOverrides, SuiteConfigFile};
use snbo_cli::external::ExternalObjective;
use snbo_cli::report;
use snbo_cli::suite::run_suite;

#[derive(Parser)]
#[command(name = "snbo", about = "Surrogate-based blackbox optimization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the optimizer once on a built-in or external objective.
    Optimize(OptimizeArgs),
    /// Benchmark suite commands.
    #[command(subcommand)]
    Bench(BenchCommand),
}

#[derive(Args)]
struct OptimizeArgs {
    /// Built-in problem name (ackley, rastrigin, levy) or an external
    /// command to spawn (whitespace-separated argv).
    #[arg(long)]
    problem: String,
    #[arg(long)]
    dims: usize,
    /// Total evaluation budget.
    #[arg(long)]
    budget: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Optional JSON config with hyperparameter overrides.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Lower bound applied to every dimension (external objectives only).
    #[arg(long, allow_hyphen_values = true)]
    lower: Option<f64>,
    /// Upper bound applied to every dimension (external objectives only).
    #[arg(long, allow_hyphen_values = true)]
    upper: Option<f64>,
    /// Per-evaluation timeout for external objectives, in seconds.
    #[arg(long, default_value_t = 60.0)]
    timeout_secs: f64,
}

#[derive(Subcommand)]
enum BenchCommand {
    /// Run a benchmark suite from a JSON config.
    Run(BenchRunArgs),
    /// Recompute and print the summary from an output directory.
    Summarize(SummarizeArgs),
}

#[derive(Args)]
struct BenchRunArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Overrides n_repeats from the config.
    #[arg(long)]
    repeats: Option<usize>,
    /// Worker threads for parallel runs.
    #[arg(long, default_value_t = 1)]
    parallel: usize,
}

#[derive(Args)]
struct SummarizeArgs {
    #[arg(long = "in")]
    input: PathBuf,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Optimize(args) => optimize(args),
        Command::Bench(BenchCommand::Run(args)) => bench_run(args),
        Command::Bench(BenchCommand::Summarize(args)) => summarize(args),
    }
}

fn build_config(args: &OptimizeArgs) -> Result<SnboConfig> {
    let overrides = match &args.config {
        Some(path) => {
            // A run config may carry its own n_dims/n_max; CLI flags win.
            let file = RunConfigFile::load(path)?;
            file.overrides
        }
        None => RunOverrides::default(),
    };
    let mut config = overrides.build(args.dims, args.budget)?;
    config.seed = args.seed;
    Ok(config)
}

fn optimize(args: OptimizeArgs) -> Result<ExitCode> {
    let config = build_config(&args)?;
    let start = Instant::now();
    let result = match AnalyticalProblem::by_name(&args.problem, args.dims) {
        Some(mut problem) => {
            if args.lower.is_some() || args.upper.is_some() {
                bail!("--lower/--upper apply only to external objectives");
            }
            run_snbo(&mut problem, &config)?
        }
        None => {
            let (Some(lower), Some(upper)) = (args.lower, args.upper) else {
                bail!(
                    "{:?} is not a built-in problem; external objectives need \
                     --lower and --upper bounds",
                    args.problem
                );
            };
            let bounds = Bounds::new(vec![lower; args.dims], vec![upper; args.dims])
                .context("invalid bounds")?;
            let mut objective = ExternalObjective::spawn(
                &args.problem,
                bounds,
                Duration::from_secs_f64(args.timeout_secs),
            )?;
            run_snbo(&mut objective, &config)?
        }
    };
    let secs = start.elapsed().as_secs_f64();

    println!("best value: {:.16e}", result.best_y);
    let coords: Vec<String> = result.best_x.iter().map(|v| format!("{v:.16e}")).collect();
    println!("best point: {}", coords.join(" "));
    println!(
        "evaluations: {} restarts: {} time: {:.1}s",
        result.n_evals_used,
        result.record.restarts.len(),
        secs
    );
    Ok(ExitCode::SUCCESS)
}

fn bench_run(args: BenchRunArgs) -> Result<ExitCode> {
    let mut config = SuiteConfigFile::load(&args.config)?;
    if let Some(repeats) = args.repeats {
        config.n_repeats = repeats;
    }
    if args.parallel == 0 {
        bail!("--parallel must be at least 1");
    }
    let report = run_suite(&config, args.parallel)?;
    for diag in &report.failures {
        eprintln!("run aborted: {diag}");
    }
    if !report.runs.is_empty() {
        report::emit(&report.runs, &args.out)?;
        print_summary(&snbo_cli::suite::summarize(&report.runs));
        println!("artifacts written to {}", args.out.display());
    }
    if report.failures.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::FAILURE)
    }
}

fn summarize(args: SummarizeArgs) -> Result<ExitCode> {
    let (histories, metas) = report::load_dir(&args.input)?;
    let rows = report::summarize_parsed(&histories, &metas);
    print_summary(&rows);
    Ok(ExitCode::SUCCESS)
}

fn print_summary(rows: &[snbo_cli::suite::SummaryRow]) {
    println!("problem,n_dims,method,best,median,worst,median_time_min");
    for r in rows {
        println!(
            "{},{},{},{:.16e},{:.16e},{:.16e},{:.16e}",
            r.problem,
            r.n_dims,
            r.method.as_str(),
            r.best,
            r.median,
            r.worst,
            r.median_time_min
        );
    }
}
