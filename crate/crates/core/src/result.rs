//! Run outputs shared by every optimizer: per-iteration trace rows and the
//! final result of a run.

use std::time::Duration;

/// Why a run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// The iteration budget was spent.
    Budget,
    /// No improvement for `stall_limit` consecutive iterations.
    Stall,
    /// The best fitness reached `target_fitness`.
    Target,
}

impl StopReason {
    pub fn as_str(self) -> &'static str {
        match self {
            StopReason::Budget => "budget",
            StopReason::Stall => "stall",
            StopReason::Target => "target",
        }
    }
}

impl std::fmt::Display for StopReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One per-iteration snapshot. Iteration 0 describes the freshly initialized
/// population with the schedules at their starting values; iterations
/// 1..=t_max describe executed steps.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    pub iteration: usize,
    pub best_fitness: f64,
    pub mean_fitness: f64,
    pub matchmaker_m: f64,
    pub alpha: f64,
    pub e_match: f64,
    pub eliminated_count: usize,
}

/// The outcome of one optimizer run. Bit-identical for identical inputs and
/// seed, except for `runtime`.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub best_point: Vec<f64>,
    pub best_fitness: f64,
    pub trace: Vec<TraceRecord>,
    pub evaluations: u64,
    pub runtime: Duration,
    pub seed: u64,
    pub stop_reason: StopReason,
}

impl RunResult {
    /// True when `trace.best_fitness` never increases, which every optimizer
    /// in this crate guarantees by elitist recording.
    pub fn best_series_is_monotone(&self) -> bool {
        self.trace
            .windows(2)
            .all(|w| w[1].best_fitness <= w[0].best_fitness)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stop_reason_labels() {
        assert_eq!(StopReason::Budget.as_str(), "budget");
        assert_eq!(StopReason::Stall.to_string(), "stall");
        assert_eq!(StopReason::Target.to_string(), "target");
    }

    #[test]
    fn monotone_check() {
        let rec = |best: f64| TraceRecord {
            iteration: 0,
            best_fitness: best,
            mean_fitness: best,
            matchmaker_m: 0.0,
            alpha: 0.0,
            e_match: 0.0,
            eliminated_count: 0,
        };
        let mut result = RunResult {
            best_point: vec![0.0],
            best_fitness: 1.0,
            trace: vec![rec(3.0), rec(2.0), rec(2.0), rec(1.0)],
            evaluations: 0,
            runtime: Duration::ZERO,
            seed: 0,
            stop_reason: StopReason::Budget,
        };
        assert!(result.best_series_is_monotone());
        result.trace.push(rec(1.5));
        assert!(!result.best_series_is_monotone());
    }
}
