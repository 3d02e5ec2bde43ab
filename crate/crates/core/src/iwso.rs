//! The wedding-matchmaking optimizer (IWSO): linear matchmaker/elimination
//! schedules, best-attracted candidate moves, proximity-triggered guided
//! reinitialization, and per-slot elitist selection inside a fixed iteration
//! budget.

use std::time::Instant;

use thiserror::Error;

use crate::objective::{ObjectiveError, WeightedObjective};
use crate::result::{RunResult, StopReason, TraceRecord};
use crate::rng::{DrawSource, RandomSource};
use crate::space::{Candidate, SearchSpace, SpaceError};

/// A best-fitness decrease larger than this counts as progress for stall
/// detection.
pub const STALL_IMPROVEMENT_EPS: f64 = 1e-12;

/// Population fitness totals below this magnitude are treated as zero when
/// forming the expected-match ratio, instead of dividing.
const FITNESS_SUM_GUARD: f64 = 1e-300;

/// Control parameters. `Default` gives the standard configuration:
/// 30 candidates, 50 iterations, matchmaker 1.2 -> 0.05, elimination factor
/// 0.5 -> 1.5, reinitialization pull 0.3 and noise scale 0.5.
#[derive(Debug, Clone, PartialEq)]
pub struct IwsoParams {
    pub pop_size: usize,
    pub t_max: usize,
    pub m_max: f64,
    pub m_min: f64,
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub beta: f64,
    pub gamma: f64,
    /// Stop after this many consecutive iterations without improvement.
    /// Disabled when `None`.
    pub stall_limit: Option<usize>,
    /// Stop as soon as the best fitness is at or below this value.
    pub target_fitness: Option<f64>,
    /// When set, candidate moves use this constant attraction coefficient
    /// instead of a fresh uniform draw per candidate.
    pub fixed_r1: Option<f64>,
}

impl Default for IwsoParams {
    fn default() -> Self {
        Self {
            pop_size: 30,
            t_max: 50,
            m_max: 1.2,
            m_min: 0.05,
            alpha_min: 0.5,
            alpha_max: 1.5,
            beta: 0.3,
            gamma: 0.5,
            stall_limit: None,
            target_fitness: None,
            fixed_r1: None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParamError {
    #[error("pop_size must be at least 2, got {0}")]
    PopSize(usize),
    #[error("t_max must be at least 1")]
    TMax,
    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },
    #[error("matchmaker schedule needs m_max >= m_min > 0, got m_max={m_max}, m_min={m_min}")]
    Matchmaker { m_max: f64, m_min: f64 },
    #[error(
        "elimination schedule needs alpha_max >= alpha_min > 0, got alpha_max={alpha_max}, alpha_min={alpha_min}"
    )]
    Elimination { alpha_min: f64, alpha_max: f64 },
    #[error("stall_limit must be positive when set")]
    StallLimit,
    #[error("fixed_r1 must be within [0, 1] when set, got {0}")]
    FixedR1(f64),
}

/// A non-fatal observation about a parameter outside its recommended range.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamWarning {
    pub field: &'static str,
    pub message: String,
}

impl IwsoParams {
    /// Checks the hard invariants and returns soft-range warnings.
    /// `beta` outside [0.1, 0.5] and `gamma` outside [0.2, 0.8] are only
    /// warned about, never rejected.
    pub fn validate(&self) -> Result<Vec<ParamWarning>, ParamError> {
        if self.pop_size < 2 {
            return Err(ParamError::PopSize(self.pop_size));
        }
        if self.t_max < 1 {
            return Err(ParamError::TMax);
        }
        for (name, value) in [
            ("m_max", self.m_max),
            ("m_min", self.m_min),
            ("alpha_min", self.alpha_min),
            ("alpha_max", self.alpha_max),
            ("beta", self.beta),
            ("gamma", self.gamma),
        ] {
            if !value.is_finite() {
                return Err(ParamError::NonFinite { name, value });
            }
        }
        if let Some(target) = self.target_fitness {
            if target.is_nan() {
                return Err(ParamError::NonFinite { name: "target_fitness", value: target });
            }
        }
        if !(self.m_max >= self.m_min && self.m_min > 0.0) {
            return Err(ParamError::Matchmaker { m_max: self.m_max, m_min: self.m_min });
        }
        if !(self.alpha_max >= self.alpha_min && self.alpha_min > 0.0) {
            return Err(ParamError::Elimination {
                alpha_min: self.alpha_min,
                alpha_max: self.alpha_max,
            });
        }
        if self.stall_limit == Some(0) {
            return Err(ParamError::StallLimit);
        }
        if let Some(r1) = self.fixed_r1 {
            if !(0.0..=1.0).contains(&r1) {
                return Err(ParamError::FixedR1(r1));
            }
        }

        let mut warnings = Vec::new();
        if !(0.1..=0.5).contains(&self.beta) {
            warnings.push(ParamWarning {
                field: "beta",
                message: format!("beta = {} is outside the recommended range [0.1, 0.5]", self.beta),
            });
        }
        if !(0.2..=0.8).contains(&self.gamma) {
            warnings.push(ParamWarning {
                field: "gamma",
                message: format!("gamma = {} is outside the recommended range [0.2, 0.8]", self.gamma),
            });
        }
        Ok(warnings)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScheduleError {
    #[error("iteration {t} is outside the schedule domain 0..={t_max}")]
    IterationOutOfRange { t: usize, t_max: usize },
}

/// Matchmaker factor at iteration `t`: linear decay from `m_max` at t=0 to
/// `m_min` at t=t_max.
pub fn matchmaker_factor(t: usize, params: &IwsoParams) -> Result<f64, ScheduleError> {
    if t > params.t_max {
        return Err(ScheduleError::IterationOutOfRange { t, t_max: params.t_max });
    }
    let frac = t as f64 / params.t_max as f64;
    Ok(params.m_max - frac * (params.m_max - params.m_min))
}

/// Elimination factor at iteration `t`: linear growth from `alpha_min` at t=0
/// to `alpha_max` at t=t_max.
pub fn elimination_factor(t: usize, params: &IwsoParams) -> Result<f64, ScheduleError> {
    if t > params.t_max {
        return Err(ScheduleError::IterationOutOfRange { t, t_max: params.t_max });
    }
    let frac = t as f64 / params.t_max as f64;
    Ok(params.alpha_min + frac * (params.alpha_max - params.alpha_min))
}

/// Ratio of the best fitness to the population fitness total, computed
/// literally on signed values. A vanishing total yields 0.0. The result can be
/// negative; elimination then cannot fire because distances are non-negative.
pub fn expected_match(fitnesses: &[f64], best_fitness: f64) -> f64 {
    debug_assert!(!fitnesses.is_empty());
    debug_assert!(
        fitnesses.iter().all(|&f| best_fitness <= f),
        "best_fitness must be the population minimum"
    );
    expected_match_from_sum(fitnesses.iter().sum(), best_fitness)
}

fn expected_match_from_sum(sum: f64, best_fitness: f64) -> f64 {
    if sum.abs() < FITNESS_SUM_GUARD {
        0.0
    } else {
        best_fitness / sum
    }
}

/// Moves one candidate toward the incumbent best with matchmaker-scaled
/// uniform noise, then clamps to the box. Per call this consumes one uniform
/// draw for the attraction coefficient (skipped when `fixed_r1` is given)
/// followed by one symmetric-uniform draw per dimension. Returns the new
/// position; the caller re-evaluates fitness.
pub fn update_candidate(
    position: &[f64],
    best_position: &[f64],
    m: f64,
    fixed_r1: Option<f64>,
    rng: &mut impl DrawSource,
    space: &SearchSpace,
) -> Result<Vec<f64>, SpaceError> {
    let d = space.dim();
    if position.len() != d || best_position.len() != d {
        return Err(SpaceError::DimensionMismatch {
            expected: d,
            got: if position.len() != d { position.len() } else { best_position.len() },
        });
    }
    let mut out = vec![0.0; d];
    update_into(&mut out, position, best_position, m, fixed_r1, rng, space);
    Ok(out)
}

/// The allocation-free core of [`update_candidate`]; `out`, `position`, and
/// `best_position` must share the space's dimension.
fn update_into(
    out: &mut [f64],
    position: &[f64],
    best_position: &[f64],
    m: f64,
    fixed_r1: Option<f64>,
    rng: &mut impl DrawSource,
    space: &SearchSpace,
) {
    let r1 = match fixed_r1 {
        Some(r1) => r1,
        None => rng.uniform01(),
    };
    for (j, slot) in out.iter_mut().enumerate() {
        let eps = rng.uniform_sym();
        *slot = position[j] + r1 * (best_position[j] - position[j]) + m * eps;
    }
    space.clamp_in_place(out);
}

/// Replaces a candidate with a fresh bounded sample pulled toward the best
/// and away from the population mean, plus normal exploration noise. Draws one
/// uniform per dimension first, then one normal per dimension. Returns the new
/// position; the caller re-evaluates fitness.
pub fn reinitialize_candidate(
    best_position: &[f64],
    mean_position: &[f64],
    params: &IwsoParams,
    rng: &mut impl DrawSource,
    space: &SearchSpace,
) -> Result<Vec<f64>, SpaceError> {
    let d = space.dim();
    if best_position.len() != d || mean_position.len() != d {
        return Err(SpaceError::DimensionMismatch {
            expected: d,
            got: if best_position.len() != d { best_position.len() } else { mean_position.len() },
        });
    }
    let mut out = Vec::with_capacity(d);
    for j in 0..d {
        out.push(space.lower()[j] + rng.uniform01() * space.width(j));
    }
    for (j, x) in out.iter_mut().enumerate() {
        *x += params.beta * (best_position[j] - mean_position[j]) + params.gamma * rng.normal();
    }
    space.clamp_in_place(&mut out);
    Ok(out)
}

#[derive(Debug, Error, Clone, PartialEq)]
#[error("candidate fitness is NaN")]
pub struct NanFitness;

/// Minimization selection: the challenger wins only by strict improvement;
/// ties keep the incumbent.
pub fn elitist_select<'a>(
    incumbent: &'a Candidate,
    challenger: &'a Candidate,
) -> Result<&'a Candidate, NanFitness> {
    if incumbent.fitness.is_nan() || challenger.fitness.is_nan() {
        return Err(NanFitness);
    }
    Ok(if challenger.fitness < incumbent.fitness { challenger } else { incumbent })
}

#[derive(Debug, Error)]
pub enum IwsoError {
    #[error("iteration budget t_max={0} is already exhausted")]
    BudgetExhausted(usize),
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error(transparent)]
    Objective(#[from] ObjectiveError),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// Everything the loop carries between iterations. `t` counts completed
/// steps; `trace` holds one row for iteration 0 plus one per step.
#[derive(Debug, Clone)]
pub struct OptimizerState {
    pub population: Vec<Candidate>,
    pub t: usize,
    pub global_best: Candidate,
    pub evaluations: u64,
    pub last_m: f64,
    pub last_alpha: f64,
    pub last_e_match: f64,
    pub eliminated_this_step: usize,
    pub trace: Vec<TraceRecord>,
}

/// Samples and evaluates the initial population, picks the incumbent best,
/// and records the iteration-0 trace row.
pub fn init_state(
    objective: &mut WeightedObjective,
    space: &SearchSpace,
    params: &IwsoParams,
    rng: &mut impl DrawSource,
) -> Result<OptimizerState, IwsoError> {
    let n = params.pop_size;
    let mut population = Vec::with_capacity(n);
    for _ in 0..n {
        let position = space.sample_uniform(rng);
        let fitness = objective.evaluate(&position)?;
        population.push(Candidate { position, fitness });
    }
    let best_idx = argmin_fitness(&population);
    let global_best = population[best_idx].clone();

    let fitnesses: Vec<f64> = population.iter().map(|c| c.fitness).collect();
    let e_match = expected_match(&fitnesses, global_best.fitness);
    let mean_fitness = fitnesses.iter().sum::<f64>() / n as f64;
    let m0 = matchmaker_factor(0, params).expect("0 is always in the schedule domain");
    let alpha0 = elimination_factor(0, params).expect("0 is always in the schedule domain");

    Ok(OptimizerState {
        t: 0,
        evaluations: n as u64,
        last_m: m0,
        last_alpha: alpha0,
        last_e_match: e_match,
        eliminated_this_step: 0,
        trace: vec![TraceRecord {
            iteration: 0,
            best_fitness: global_best.fitness,
            mean_fitness,
            matchmaker_m: m0,
            alpha: alpha0,
            e_match,
            eliminated_count: 0,
        }],
        population,
        global_best,
    })
}

/// One full iteration, in this order: schedules at the new 1-based index,
/// candidate moves toward the incumbent best, expected match from the
/// pre-move fitnesses, guided reinitialization of candidates closer to the
/// best than alpha * E_match, one evaluation per candidate, per-slot elitist
/// selection, global-best update, trace row. An evaluation failure aborts
/// with the state untouched.
pub fn step(
    state: &mut OptimizerState,
    objective: &mut WeightedObjective,
    space: &SearchSpace,
    params: &IwsoParams,
    rng: &mut impl DrawSource,
) -> Result<(), IwsoError> {
    if state.t >= params.t_max {
        return Err(IwsoError::BudgetExhausted(params.t_max));
    }
    let n = state.population.len();
    let d = space.dim();
    let t_new = state.t + 1;
    let m = matchmaker_factor(t_new, params).expect("t_new <= t_max by the check above");
    let alpha = elimination_factor(t_new, params).expect("t_new <= t_max by the check above");

    let fitness_sum: f64 = state.population.iter().map(|c| c.fitness).sum();
    let e_match = expected_match_from_sum(fitness_sum, state.global_best.fitness);
    let threshold = alpha * e_match;

    // One flat n x d scratch matrix; a Vec per candidate would make the
    // allocator, not the arithmetic, the per-iteration cost.
    let mut new_positions = vec![0.0; n * d];
    for (candidate, row) in state.population.iter().zip(new_positions.chunks_exact_mut(d)) {
        update_into(
            row,
            &candidate.position,
            &state.global_best.position,
            m,
            params.fixed_r1,
            rng,
            space,
        );
    }

    // Candidates that crowd the incumbent best get resampled. The population
    // mean is the mean of the positions as they are *right now*, so a
    // reinitialized candidate shifts the mean seen by later ones; a running
    // column sum keeps that linear in dimension.
    let mut eliminated = 0usize;
    let mut position_sum = vec![0.0; d];
    for row in new_positions.chunks_exact(d) {
        for (j, &x) in row.iter().enumerate() {
            position_sum[j] += x;
        }
    }
    let inv_n = 1.0 / n as f64;
    let mut mean_position = vec![0.0; d];
    for row in new_positions.chunks_exact_mut(d) {
        if euclidean_distance(row, &state.global_best.position) < threshold {
            eliminated += 1;
            for j in 0..d {
                mean_position[j] = position_sum[j] * inv_n;
            }
            let fresh = reinitialize_candidate(
                &state.global_best.position,
                &mean_position,
                params,
                rng,
                space,
            )?;
            for j in 0..d {
                position_sum[j] += fresh[j] - row[j];
            }
            row.copy_from_slice(&fresh);
        }
    }

    let mut new_fitnesses = Vec::with_capacity(n);
    for row in new_positions.chunks_exact(d) {
        new_fitnesses.push(objective.evaluate(row)?);
    }

    // Nothing below can fail; commit. Positions are copied into the existing
    // candidate buffers.
    for (i, candidate) in state.population.iter_mut().enumerate() {
        if new_fitnesses[i] < candidate.fitness {
            candidate.position.copy_from_slice(&new_positions[i * d..(i + 1) * d]);
            candidate.fitness = new_fitnesses[i];
        }
    }
    let best_idx = argmin_fitness(&state.population);
    if state.population[best_idx].fitness < state.global_best.fitness {
        state.global_best = state.population[best_idx].clone();
    }

    let mean_fitness =
        state.population.iter().map(|c| c.fitness).sum::<f64>() / n as f64;
    state.t = t_new;
    state.evaluations += n as u64;
    state.last_m = m;
    state.last_alpha = alpha;
    state.last_e_match = e_match;
    state.eliminated_this_step = eliminated;
    state.trace.push(TraceRecord {
        iteration: t_new,
        best_fitness: state.global_best.fitness,
        mean_fitness,
        matchmaker_m: m,
        alpha,
        e_match,
        eliminated_count: eliminated,
    });
    Ok(())
}

/// A full run: initialization, then steps until the budget is spent or a
/// stopping rule fires. Stopping rules are checked before each step, so a
/// target already met by the initial population stops the run with a
/// one-row trace.
pub fn optimize(
    objective: &mut WeightedObjective,
    space: &SearchSpace,
    params: &IwsoParams,
    seed: u64,
) -> Result<RunResult, IwsoError> {
    params.validate()?;
    let start = Instant::now();
    let mut rng = RandomSource::new(seed);
    let mut state = init_state(objective, space, params, &mut rng)?;

    let mut stall_count = 0usize;
    let mut stop_reason = StopReason::Budget;
    for _ in 1..=params.t_max {
        if let Some(target) = params.target_fitness {
            if state.global_best.fitness <= target {
                stop_reason = StopReason::Target;
                break;
            }
        }
        if let Some(limit) = params.stall_limit {
            if stall_count >= limit {
                stop_reason = StopReason::Stall;
                break;
            }
        }
        let before = state.global_best.fitness;
        step(&mut state, objective, space, params, &mut rng)?;
        if before - state.global_best.fitness > STALL_IMPROVEMENT_EPS {
            stall_count = 0;
        } else {
            stall_count += 1;
        }
    }

    Ok(RunResult {
        best_point: state.global_best.position,
        best_fitness: state.global_best.fitness,
        trace: state.trace,
        evaluations: state.evaluations,
        runtime: start.elapsed(),
        seed,
        stop_reason,
    })
}

fn argmin_fitness(population: &[Candidate]) -> usize {
    let mut best = 0;
    for (i, candidate) in population.iter().enumerate().skip(1) {
        if candidate.fitness < population[best].fitness {
            best = i;
        }
    }
    best
}

fn euclidean_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}
