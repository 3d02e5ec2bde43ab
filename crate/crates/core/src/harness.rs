//! Replicated-run experiment harness: seed fan-out, summary statistics,
//! algorithm comparisons on matched seeds, and parameter sweeps. Replicates
//! run in parallel via rayon but results are collected in run order, so
//! parallel and serial execution produce identical output.

use std::str::FromStr;
use std::time::Duration;

use rayon::prelude::*;
use thiserror::Error;

use crate::baselines::{run_baseline, BaselineError, BaselineParams};
use crate::benchmarks::{self, FunctionId};
use crate::iwso::{optimize, IwsoError, IwsoParams};
use crate::result::RunResult;

/// Mixed into the run seed to derive the noise stream for stochastic
/// objectives, so noise draws never collide with the optimizer's own stream.
const NOISE_SEED_TAG: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgorithmId {
    Iwso,
    Ga,
    Pso,
    De,
}

impl AlgorithmId {
    pub const ALL: [AlgorithmId; 4] =
        [AlgorithmId::Iwso, AlgorithmId::Ga, AlgorithmId::Pso, AlgorithmId::De];

    pub fn as_str(self) -> &'static str {
        match self {
            AlgorithmId::Iwso => "iwso",
            AlgorithmId::Ga => "ga",
            AlgorithmId::Pso => "pso",
            AlgorithmId::De => "de",
        }
    }
}

impl std::fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AlgorithmId {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "iwso" => Ok(AlgorithmId::Iwso),
            "ga" => Ok(AlgorithmId::Ga),
            "pso" => Ok(AlgorithmId::Pso),
            "de" => Ok(AlgorithmId::De),
            other => Err(HarnessError::UnknownAlgorithm(other.to_string())),
        }
    }
}

/// Fully-specified configuration for one algorithm, ready to run.
#[derive(Debug, Clone, PartialEq)]
pub enum AlgorithmConfig {
    Iwso(IwsoParams),
    Baseline(BaselineParams),
}

impl AlgorithmConfig {
    /// Default configuration for the given algorithm.
    pub fn for_id(id: AlgorithmId) -> Self {
        match id {
            AlgorithmId::Iwso => AlgorithmConfig::Iwso(IwsoParams::default()),
            AlgorithmId::Ga => AlgorithmConfig::Baseline(BaselineParams::ga()),
            AlgorithmId::Pso => AlgorithmConfig::Baseline(BaselineParams::pso()),
            AlgorithmId::De => AlgorithmConfig::Baseline(BaselineParams::de()),
        }
    }

    /// Same configuration with the population size and iteration budget
    /// replaced, so different algorithms can be compared on equal budgets.
    pub fn with_budget(mut self, pop_size: usize, t_max: usize) -> Self {
        match &mut self {
            AlgorithmConfig::Iwso(p) => {
                p.pop_size = pop_size;
                p.t_max = t_max;
            }
            AlgorithmConfig::Baseline(p) => {
                p.pop_size = pop_size;
                p.t_max = t_max;
            }
        }
        self
    }

    pub fn id(&self) -> AlgorithmId {
        match self {
            AlgorithmConfig::Iwso(_) => AlgorithmId::Iwso,
            AlgorithmConfig::Baseline(p) => match p.algorithm() {
                crate::baselines::BaselineAlgorithm::Ga => AlgorithmId::Ga,
                crate::baselines::BaselineAlgorithm::Pso => AlgorithmId::Pso,
                crate::baselines::BaselineAlgorithm::De => AlgorithmId::De,
            },
        }
    }
}

/// The pieces of one replicate that feed summary statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct PerRun {
    pub seed: u64,
    pub best_fitness: f64,
    pub runtime: Duration,
}

/// Aggregate over replicated runs of one algorithm on one function.
#[derive(Debug, Clone, PartialEq)]
pub struct StatsSummary {
    /// Label for the algorithm column; plain id for runs and comparisons,
    /// id plus bracketed setting for sweeps (for example "iwso[tmax=250]").
    pub algorithm: String,
    pub function: FunctionId,
    pub n_runs: usize,
    pub mean: f64,
    /// Sample standard deviation (n - 1 denominator); 0 for a single run.
    pub std: f64,
    pub best: f64,
    pub mean_runtime: Duration,
    pub per_run: Vec<PerRun>,
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown algorithm {0:?}; expected iwso, ga, pso, or de")]
    UnknownAlgorithm(String),
    #[error("n_runs must be at least 1")]
    NoRuns,
    #[error("a sweep needs at least one function")]
    NoFunctions,
    #[error("a sweep needs at least one grid point")]
    EmptyGrid,
    #[error("a comparison needs at least one algorithm")]
    NoAlgorithms,
    #[error(transparent)]
    Iwso(#[from] IwsoError),
    #[error(transparent)]
    Baseline(#[from] BaselineError),
}

/// One run of `config` on `function`, with the objective and box taken from
/// the benchmark registry. Stochastic objectives get a noise stream derived
/// from the run seed, so the whole run stays reproducible.
pub fn run_one(
    config: &AlgorithmConfig,
    function: FunctionId,
    seed: u64,
) -> Result<RunResult, HarnessError> {
    let space = benchmarks::space(function);
    let mut objective = benchmarks::objective(function, seed ^ NOISE_SEED_TAG);
    match config {
        AlgorithmConfig::Iwso(params) => {
            optimize(&mut objective, &space, params, seed).map_err(HarnessError::from)
        }
        AlgorithmConfig::Baseline(params) => {
            run_baseline(params, &mut objective, &space, seed).map_err(HarnessError::from)
        }
    }
}

/// `n_runs` replicates with seeds `base_seed`, `base_seed + 1`, ... in run
/// order. Runs execute in parallel; the returned order is still by seed.
pub fn run_replicates_results(
    config: &AlgorithmConfig,
    function: FunctionId,
    n_runs: usize,
    base_seed: u64,
) -> Result<Vec<RunResult>, HarnessError> {
    if n_runs == 0 {
        return Err(HarnessError::NoRuns);
    }
    (0..n_runs)
        .into_par_iter()
        .map(|i| run_one(config, function, base_seed.wrapping_add(i as u64)))
        .collect()
}

/// Replicates plus summary statistics in one call.
pub fn run_replicates(
    config: &AlgorithmConfig,
    function: FunctionId,
    n_runs: usize,
    base_seed: u64,
) -> Result<StatsSummary, HarnessError> {
    let results = run_replicates_results(config, function, n_runs, base_seed)?;
    let per_run: Vec<PerRun> = results
        .iter()
        .map(|r| PerRun { seed: r.seed, best_fitness: r.best_fitness, runtime: r.runtime })
        .collect();
    Ok(summarize(config.id().as_str().to_string(), function, per_run))
}

/// Folds per-run outcomes into mean / sample std / best / mean runtime.
pub fn summarize(algorithm: String, function: FunctionId, per_run: Vec<PerRun>) -> StatsSummary {
    assert!(!per_run.is_empty(), "summary of zero runs");
    let n = per_run.len();
    let mean = per_run.iter().map(|r| r.best_fitness).sum::<f64>() / n as f64;
    let std = if n > 1 {
        let ss = per_run.iter().map(|r| (r.best_fitness - mean).powi(2)).sum::<f64>();
        (ss / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    let best = per_run.iter().map(|r| r.best_fitness).fold(f64::INFINITY, f64::min);
    let mean_runtime = per_run.iter().map(|r| r.runtime).sum::<Duration>() / n as u32;
    StatsSummary { algorithm, function, n_runs: n, mean, std, best, mean_runtime, per_run }
}

/// Runs each algorithm on the same function with matched seeds (run j of
/// every algorithm uses `base_seed + j`) and a shared budget, one summary per
/// algorithm in input order.
pub fn compare(
    algorithms: &[AlgorithmId],
    function: FunctionId,
    pop_size: usize,
    t_max: usize,
    n_runs: usize,
    base_seed: u64,
) -> Result<Vec<StatsSummary>, HarnessError> {
    if algorithms.is_empty() {
        return Err(HarnessError::NoAlgorithms);
    }
    algorithms
        .iter()
        .map(|&id| {
            let config = AlgorithmConfig::for_id(id).with_budget(pop_size, t_max);
            run_replicates(&config, function, n_runs, base_seed)
        })
        .collect()
}

/// Iteration budgets used by the stock budget sweep.
pub const DEFAULT_TMAX_GRID: [usize; 4] = [125, 250, 375, 500];

/// One matchmaker-schedule setting in the stock schedule sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchmakerCase {
    pub label: &'static str,
    pub m_max: f64,
    pub m_min: f64,
}

/// Schedule settings from wide-and-slow to narrow-and-flat.
pub const MATCHMAKER_CASES: [MatchmakerCase; 4] = [
    MatchmakerCase { label: "C1", m_max: 1.2, m_min: 0.3 },
    MatchmakerCase { label: "C2", m_max: 1.4, m_min: 0.2 },
    MatchmakerCase { label: "C3", m_max: 1.8, m_min: 0.05 },
    MatchmakerCase { label: "C4", m_max: 2.0, m_min: 1.0 },
];

/// Grid of summaries from sweeping one parameter over a set of functions.
/// `cells[f][g]` holds functions[f] at grid point g.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub swept_parameter: String,
    /// Human-readable label per grid point, matching the summary labels.
    pub grid_labels: Vec<String>,
    pub functions: Vec<FunctionId>,
    pub cells: Vec<Vec<StatsSummary>>,
}

fn sweep_over<S>(
    swept_parameter: &str,
    functions: &[FunctionId],
    settings: &[S],
    n_runs: usize,
    base_seed: u64,
    label: impl Fn(&S) -> String,
    configure: impl Fn(&S) -> IwsoParams,
) -> Result<SweepReport, HarnessError> {
    if functions.is_empty() {
        return Err(HarnessError::NoFunctions);
    }
    if settings.is_empty() {
        return Err(HarnessError::EmptyGrid);
    }
    let grid_labels: Vec<String> = settings.iter().map(&label).collect();
    let mut cells = Vec::with_capacity(functions.len());
    for &function in functions {
        let mut row = Vec::with_capacity(settings.len());
        for (setting, label) in settings.iter().zip(&grid_labels) {
            let config = AlgorithmConfig::Iwso(configure(setting));
            let mut summary = run_replicates(&config, function, n_runs, base_seed)?;
            summary.algorithm = format!("iwso[{label}]");
            row.push(summary);
        }
        cells.push(row);
    }
    Ok(SweepReport {
        swept_parameter: swept_parameter.to_string(),
        grid_labels,
        functions: functions.to_vec(),
        cells,
    })
}

/// Sweeps the iteration budget over `grid`, defaults elsewhere.
pub fn sensitivity_sweep_tmax(
    functions: &[FunctionId],
    grid: &[usize],
    n_runs: usize,
    base_seed: u64,
) -> Result<SweepReport, HarnessError> {
    sweep_over(
        "t_max",
        functions,
        grid,
        n_runs,
        base_seed,
        |t| format!("tmax={t}"),
        |&t| IwsoParams { t_max: t, ..IwsoParams::default() },
    )
}

/// Sweeps the matchmaker schedule over [`MATCHMAKER_CASES`], defaults
/// elsewhere.
pub fn sensitivity_sweep_matchmaker(
    functions: &[FunctionId],
    n_runs: usize,
    base_seed: u64,
) -> Result<SweepReport, HarnessError> {
    sweep_over(
        "matchmaker",
        functions,
        &MATCHMAKER_CASES,
        n_runs,
        base_seed,
        |case| case.label.to_string(),
        |case| IwsoParams { m_max: case.m_max, m_min: case.m_min, ..IwsoParams::default() },
    )
}
