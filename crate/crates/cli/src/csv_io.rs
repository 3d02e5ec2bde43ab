//! CSV record types and writers. Headers come from the struct field order,
//! so the structs here are the schema. Numeric fields round-trip exactly
//! (shortest representation that parses back to the same float).

use std::io;
use std::path::Path;

use iwso_core::benchmarks::{self, FunctionId};
use iwso_core::harness::StatsSummary;
use iwso_core::RunResult;
use serde::{Deserialize, Serialize};

/// One replicate in a `run` results file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub run_id: u64,
    pub algorithm: String,
    pub function: String,
    pub seed: u64,
    pub best_fitness: f64,
    pub evaluations: u64,
    pub runtime_ms: f64,
    pub stop_reason: String,
}

/// One iteration in a per-run trace file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub iteration: u64,
    pub best_fitness: f64,
    pub mean_fitness: f64,
    pub matchmaker_m: f64,
    pub alpha: f64,
    pub e_match: f64,
    pub eliminated_count: u64,
}

/// One algorithm-on-function aggregate in a `compare` or `sweep` file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub algorithm: String,
    pub function: String,
    pub n_runs: u64,
    pub mean: f64,
    pub std: f64,
    pub best: f64,
    pub mean_runtime_ms: f64,
}

/// One function in the `list` registry dump.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegistryRow {
    pub id: String,
    pub name: String,
    pub lower: f64,
    pub upper: f64,
    pub dim: u64,
    pub modality: String,
    pub separability: String,
    /// Known optimum value; empty when no exact optimum is registered.
    pub optimum: Option<f64>,
}

pub fn result_row(run_id: u64, algorithm: &str, function: FunctionId, r: &RunResult) -> ResultRow {
    ResultRow {
        run_id,
        algorithm: algorithm.to_string(),
        function: function.to_string(),
        seed: r.seed,
        best_fitness: r.best_fitness,
        evaluations: r.evaluations,
        runtime_ms: r.runtime.as_secs_f64() * 1000.0,
        stop_reason: r.stop_reason.to_string(),
    }
}

pub fn trace_rows(r: &RunResult) -> Vec<TraceRow> {
    r.trace
        .iter()
        .map(|t| TraceRow {
            iteration: t.iteration as u64,
            best_fitness: t.best_fitness,
            mean_fitness: t.mean_fitness,
            matchmaker_m: t.matchmaker_m,
            alpha: t.alpha,
            e_match: t.e_match,
            eliminated_count: t.eliminated_count as u64,
        })
        .collect()
}

pub fn summary_row(s: &StatsSummary) -> SummaryRow {
    SummaryRow {
        algorithm: s.algorithm.clone(),
        function: s.function.to_string(),
        n_runs: s.n_runs as u64,
        mean: s.mean,
        std: s.std,
        best: s.best,
        mean_runtime_ms: s.mean_runtime.as_secs_f64() * 1000.0,
    }
}

pub fn registry_row(id: FunctionId) -> RegistryRow {
    let spec = benchmarks::function_spec(id);
    RegistryRow {
        id: id.to_string(),
        name: spec.name.to_string(),
        lower: spec.lower,
        upper: spec.upper,
        dim: spec.default_dim as u64,
        modality: spec.modality.as_str().to_string(),
        separability: spec.separability.as_str().to_string(),
        optimum: spec.known_optimum.as_ref().map(|o| o.value),
    }
}

pub fn write_rows<S: Serialize>(path: &Path, rows: &[S]) -> Result<(), csv::Error> {
    let mut writer = csv::Writer::from_path(path)?;
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn write_rows_to<W: io::Write, S: Serialize>(
    out: W,
    rows: &[S],
) -> Result<(), csv::Error> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}
