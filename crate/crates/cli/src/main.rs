//! Command-line front end: replicated optimization runs, algorithm
//! comparisons under matched budgets, parameter sweeps, and the benchmark
//! registry listing. All tabular output is CSV.

mod config;
mod csv_io;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use iwso_core::benchmarks::FunctionId;
use iwso_core::harness::{
    self, AlgorithmConfig, AlgorithmId, StatsSummary, DEFAULT_TMAX_GRID,
};
use iwso_core::iwso::IwsoParams;

use config::{effective, required, FileConfig};

/// Relative output paths are resolved against this directory when it is set.
const OUT_DIR_ENV: &str = "IWSO_OUT_DIR";

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or configuration; exits 2.
    Usage(String),
    /// Failure while doing the work; exits 1.
    Runtime(String),
}

#[derive(Parser)]
#[command(
    name = "iwso",
    version,
    about = "Benchmark runner for the wedding-matchmaking optimizer and GA/PSO/DE baselines"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one algorithm on one benchmark function with replicate seeds
    Run(RunArgs),
    /// Run several algorithms on one function under an identical budget
    Compare(CompareArgs),
    /// Sweep the iteration budget or the matchmaker schedule
    Sweep(SweepArgs),
    /// Print the benchmark function registry as CSV
    List,
}

#[derive(Args)]
struct CommonArgs {
    /// TOML config file; explicit flags override its values
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Number of replicate runs
    #[arg(long = "runs", value_name = "N")]
    n_runs: Option<usize>,
    /// Base seed; replicate k uses base_seed + k
    #[arg(long = "seed", value_name = "SEED")]
    base_seed: Option<u64>,
    /// Output CSV path; relative paths resolve against $IWSO_OUT_DIR
    #[arg(long = "out", value_name = "PATH")]
    output_path: Option<PathBuf>,
    /// Worker threads for replicate runs; defaults to all cores
    #[arg(long, value_name = "N")]
    threads: Option<usize>,
}

#[derive(Args)]
struct BudgetArgs {
    /// Population size
    #[arg(long, value_name = "N")]
    pop_size: Option<usize>,
    /// Iteration budget
    #[arg(long, value_name = "T")]
    t_max: Option<usize>,
}

/// Knobs that only exist on the matchmaking optimizer.
#[derive(Args)]
struct IwsoArgs {
    /// Matchmaker factor at iteration 0 (iwso only)
    #[arg(long, value_name = "M")]
    m_max: Option<f64>,
    /// Matchmaker factor at the final iteration (iwso only)
    #[arg(long, value_name = "M")]
    m_min: Option<f64>,
    /// Elimination factor at iteration 0 (iwso only)
    #[arg(long, value_name = "A")]
    alpha_min: Option<f64>,
    /// Elimination factor at the final iteration (iwso only)
    #[arg(long, value_name = "A")]
    alpha_max: Option<f64>,
    /// Reinitialization pull toward the best candidate (iwso only)
    #[arg(long, value_name = "B")]
    beta: Option<f64>,
    /// Reinitialization noise scale (iwso only)
    #[arg(long, value_name = "G")]
    gamma: Option<f64>,
    /// Stop after this many iterations without improvement (iwso only)
    #[arg(long, value_name = "K")]
    stall_limit: Option<usize>,
    /// Stop once the best fitness is at or below this value (iwso only)
    #[arg(long, value_name = "F")]
    target_fitness: Option<f64>,
    /// Fix the attraction coefficient instead of drawing it per candidate
    /// (iwso only)
    #[arg(long, value_name = "R")]
    fixed_r1: Option<f64>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Algorithm: iwso, ga, pso, or de
    #[arg(long, value_name = "ID")]
    algorithm: Option<String>,
    /// Benchmark function, by id (f1..f23) or name (for example booth)
    #[arg(long, value_name = "ID")]
    function: Option<String>,
    #[command(flatten)]
    budget: BudgetArgs,
    #[command(flatten)]
    iwso: IwsoArgs,
    /// Also write one trace CSV per run next to the results file
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Comma-separated algorithms to compare
    #[arg(
        long = "algorithms",
        value_name = "ID,...",
        value_delimiter = ',',
        default_value = "iwso,ga,pso,de"
    )]
    algorithms: Vec<String>,
    /// Benchmark function, by id or name
    #[arg(long, value_name = "ID")]
    function: Option<String>,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepParam {
    /// Iteration budgets, default grid 125,250,375,500
    Tmax,
    /// The four stock matchmaker schedules C1..C4
    Matchmaker,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Which parameter to sweep
    #[arg(long, value_enum, default_value_t = SweepParam::Tmax)]
    param: SweepParam,
    /// Comma-separated iteration budgets (tmax sweeps only)
    #[arg(long, value_name = "T,...", value_delimiter = ',')]
    grid: Option<Vec<usize>>,
    /// Comma-separated functions; defaults to all 23
    #[arg(long = "functions", value_name = "ID,...", value_delimiter = ',')]
    functions: Option<Vec<String>>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::List => cmd_list(),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn cmd_run(args: RunArgs) -> Result<(), CliError> {
    let file = load_file_config(&args.common)?;
    build_thread_pool(args.common.threads)?;

    let algorithm = parse_algorithm(&effective(
        args.algorithm,
        file.algorithm.clone(),
        "iwso".to_string(),
    ))?;
    let function = parse_function(&required(args.function, file.function.clone(), "--function")?)?;
    let (n_runs, base_seed) = runs_and_seed(&args.common, &file)?;
    let output = resolve_out(effective(
        args.common.output_path,
        file.output_path.clone(),
        PathBuf::from("results.csv"),
    ));
    let trace = args.trace || file.trace.unwrap_or(false);
    let config = build_algorithm_config(algorithm, &args.budget, &args.iwso, &file)?;

    let results = harness::run_replicates_results(&config, function, n_runs, base_seed)
        .map_err(|e| CliError::Runtime(e.to_string()))?;

    let rows: Vec<csv_io::ResultRow> = results
        .iter()
        .enumerate()
        .map(|(k, r)| csv_io::result_row(k as u64, algorithm.as_str(), function, r))
        .collect();
    write_csv(&output, &rows)?;
    if trace {
        for (k, result) in results.iter().enumerate() {
            write_csv(&trace_path(&output, k), &csv_io::trace_rows(result))?;
        }
    }

    let per_run = results
        .iter()
        .map(|r| harness::PerRun {
            seed: r.seed,
            best_fitness: r.best_fitness,
            runtime: r.runtime,
        })
        .collect();
    let summary = harness::summarize(algorithm.as_str().to_string(), function, per_run);
    print_summary(&summary);
    println!(
        "wrote {} runs to {}{}",
        n_runs,
        output.display(),
        if trace { " with per-run traces" } else { "" }
    );
    Ok(())
}

fn cmd_compare(args: CompareArgs) -> Result<(), CliError> {
    let file = load_file_config(&args.common)?;
    build_thread_pool(args.common.threads)?;

    let mut algorithms = Vec::with_capacity(args.algorithms.len());
    for name in &args.algorithms {
        let id = parse_algorithm(name)?;
        if algorithms.contains(&id) {
            return Err(CliError::Usage(format!("duplicate algorithm {id} in --algorithms")));
        }
        algorithms.push(id);
    }
    let function = parse_function(&required(args.function, file.function.clone(), "--function")?)?;
    let (n_runs, base_seed) = runs_and_seed(&args.common, &file)?;
    let pop_size = effective(args.budget.pop_size, file.pop_size, 30);
    let t_max = effective(args.budget.t_max, file.t_max, 50);
    let output = resolve_out(effective(
        args.common.output_path,
        file.output_path.clone(),
        PathBuf::from("compare.csv"),
    ));
    for &id in &algorithms {
        validate_config(&AlgorithmConfig::for_id(id).with_budget(pop_size, t_max))?;
    }

    let summaries = harness::compare(&algorithms, function, pop_size, t_max, n_runs, base_seed)
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    let rows: Vec<csv_io::SummaryRow> = summaries.iter().map(csv_io::summary_row).collect();
    write_csv(&output, &rows)?;
    for summary in &summaries {
        print_summary(summary);
    }
    println!("wrote {} summaries to {}", summaries.len(), output.display());
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> Result<(), CliError> {
    let file = load_file_config(&args.common)?;
    build_thread_pool(args.common.threads)?;

    let functions = sweep_functions(args.functions, &file)?;
    let (n_runs, base_seed) = runs_and_seed(&args.common, &file)?;
    let output = resolve_out(effective(
        args.common.output_path,
        file.output_path.clone(),
        PathBuf::from("sweep.csv"),
    ));

    let report = match args.param {
        SweepParam::Tmax => {
            let grid = args.grid.unwrap_or_else(|| DEFAULT_TMAX_GRID.to_vec());
            harness::sensitivity_sweep_tmax(&functions, &grid, n_runs, base_seed)
                .map_err(|e| CliError::Runtime(e.to_string()))?
        }
        SweepParam::Matchmaker => {
            if args.grid.is_some() {
                return Err(CliError::Usage(
                    "--grid applies only to tmax sweeps; the matchmaker sweep uses the four stock schedules".into(),
                ));
            }
            harness::sensitivity_sweep_matchmaker(&functions, n_runs, base_seed)
                .map_err(|e| CliError::Runtime(e.to_string()))?
        }
    };

    let rows: Vec<csv_io::SummaryRow> = report
        .cells
        .iter()
        .flat_map(|row| row.iter().map(csv_io::summary_row))
        .collect();
    write_csv(&output, &rows)?;
    println!(
        "swept {} over {} settings x {} functions ({} runs each); wrote {} rows to {}",
        report.swept_parameter,
        report.grid_labels.len(),
        report.functions.len(),
        n_runs,
        rows.len(),
        output.display()
    );
    Ok(())
}

fn cmd_list() -> Result<(), CliError> {
    let rows: Vec<csv_io::RegistryRow> =
        FunctionId::ALL.iter().map(|&id| csv_io::registry_row(id)).collect();
    csv_io::write_rows_to(std::io::stdout(), &rows)
        .map_err(|e| CliError::Runtime(format!("cannot write registry: {e}")))
}

fn load_file_config(common: &CommonArgs) -> Result<FileConfig, CliError> {
    match &common.config {
        Some(path) => FileConfig::load(path),
        None => Ok(FileConfig::default()),
    }
}

fn runs_and_seed(common: &CommonArgs, file: &FileConfig) -> Result<(usize, u64), CliError> {
    let n_runs = effective(common.n_runs, file.n_runs, 30);
    if n_runs == 0 {
        return Err(CliError::Usage("--runs must be at least 1".into()));
    }
    Ok((n_runs, effective(common.base_seed, file.base_seed, 42)))
}

fn build_thread_pool(threads: Option<usize>) -> Result<(), CliError> {
    let Some(n) = threads else { return Ok(()) };
    if n == 0 {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Runtime(format!("cannot build thread pool: {e}")))
}

fn parse_algorithm(name: &str) -> Result<AlgorithmId, CliError> {
    name.parse().map_err(|e: harness::HarnessError| CliError::Usage(e.to_string()))
}

fn parse_function(name: &str) -> Result<FunctionId, CliError> {
    name.parse()
        .map_err(|e: iwso_core::benchmarks::BenchmarkError| CliError::Usage(e.to_string()))
}

fn sweep_functions(
    flag: Option<Vec<String>>,
    file: &FileConfig,
) -> Result<Vec<FunctionId>, CliError> {
    let names: Vec<String> = match (flag, &file.function) {
        (Some(names), _) => names,
        (None, Some(single)) => vec![single.clone()],
        (None, None) => return Ok(FunctionId::ALL.to_vec()),
    };
    let mut functions = Vec::with_capacity(names.len());
    for name in &names {
        let id = parse_function(name)?;
        if functions.contains(&id) {
            return Err(CliError::Usage(format!("duplicate function {id} in --functions")));
        }
        functions.push(id);
    }
    Ok(functions)
}

fn build_algorithm_config(
    algorithm: AlgorithmId,
    budget: &BudgetArgs,
    iwso: &IwsoArgs,
    file: &FileConfig,
) -> Result<AlgorithmConfig, CliError> {
    let defaults = IwsoParams::default();
    let pop_size = effective(budget.pop_size, file.pop_size, defaults.pop_size);
    let t_max = effective(budget.t_max, file.t_max, defaults.t_max);
    let config = if algorithm == AlgorithmId::Iwso {
        AlgorithmConfig::Iwso(IwsoParams {
            pop_size,
            t_max,
            m_max: effective(iwso.m_max, file.m_max, defaults.m_max),
            m_min: effective(iwso.m_min, file.m_min, defaults.m_min),
            alpha_min: effective(iwso.alpha_min, file.alpha_min, defaults.alpha_min),
            alpha_max: effective(iwso.alpha_max, file.alpha_max, defaults.alpha_max),
            beta: effective(iwso.beta, file.beta, defaults.beta),
            gamma: effective(iwso.gamma, file.gamma, defaults.gamma),
            stall_limit: iwso.stall_limit,
            target_fitness: iwso.target_fitness,
            fixed_r1: iwso.fixed_r1,
        })
    } else {
        reject_iwso_only_flags(algorithm, iwso)?;
        AlgorithmConfig::for_id(algorithm).with_budget(pop_size, t_max)
    };
    validate_config(&config)?;
    Ok(config)
}

/// Config-file matchmaker keys are shared defaults and simply unused by the
/// baselines, but an explicit iwso-only flag on a baseline run is a mistake
/// worth stopping.
fn reject_iwso_only_flags(algorithm: AlgorithmId, iwso: &IwsoArgs) -> Result<(), CliError> {
    if algorithm == AlgorithmId::Iwso {
        return Ok(());
    }
    let given: &[(&str, bool)] = &[
        ("--m-max", iwso.m_max.is_some()),
        ("--m-min", iwso.m_min.is_some()),
        ("--alpha-min", iwso.alpha_min.is_some()),
        ("--alpha-max", iwso.alpha_max.is_some()),
        ("--beta", iwso.beta.is_some()),
        ("--gamma", iwso.gamma.is_some()),
        ("--stall-limit", iwso.stall_limit.is_some()),
        ("--target-fitness", iwso.target_fitness.is_some()),
        ("--fixed-r1", iwso.fixed_r1.is_some()),
    ];
    for (flag, present) in given {
        if *present {
            return Err(CliError::Usage(format!(
                "{flag} applies only to the iwso algorithm, not {algorithm}"
            )));
        }
    }
    Ok(())
}

fn validate_config(config: &AlgorithmConfig) -> Result<(), CliError> {
    match config {
        AlgorithmConfig::Iwso(params) => {
            let warnings = params.validate().map_err(|e| CliError::Usage(e.to_string()))?;
            for warning in warnings {
                eprintln!("warning: {}", warning.message);
            }
        }
        AlgorithmConfig::Baseline(params) => {
            params.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        }
    }
    Ok(())
}

fn resolve_out(path: PathBuf) -> PathBuf {
    if path.is_relative() {
        if let Some(dir) = std::env::var_os(OUT_DIR_ENV) {
            if !dir.is_empty() {
                return PathBuf::from(dir).join(path);
            }
        }
    }
    path
}

/// `r.csv` with run id 2 becomes `r_run2_trace.csv` in the same directory.
fn trace_path(results_path: &Path, run_id: usize) -> PathBuf {
    let stem = results_path.file_stem().and_then(|s| s.to_str()).unwrap_or("results");
    results_path.with_file_name(format!("{stem}_run{run_id}_trace.csv"))
}

fn write_csv<S: serde::Serialize>(path: &Path, rows: &[S]) -> Result<(), CliError> {
    csv_io::write_rows(path, rows)
        .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))
}

fn print_summary(summary: &StatsSummary) {
    println!(
        "{} on {}: mean={} std={} best={} over {} runs",
        summary.algorithm,
        summary.function,
        summary.mean,
        summary.std,
        summary.best,
        summary.n_runs
    );
}
