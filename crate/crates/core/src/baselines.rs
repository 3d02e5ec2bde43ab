//! Textbook GA, PSO, and DE under the shared run-result contract, for
//! head-to-head comparisons against the matchmaking optimizer. The trace
//! schema is shared too; columns that only mean something for the matchmaking
//! optimizer (matchmaker_m, alpha, e_match, eliminated_count) are zero here.

use std::time::Instant;

use thiserror::Error;

use crate::objective::{ObjectiveError, WeightedObjective};
use crate::result::{RunResult, StopReason, TraceRecord};
use crate::rng::{DrawSource, RandomSource};
use crate::space::{Candidate, SearchSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaselineAlgorithm {
    Ga,
    Pso,
    De,
}

impl BaselineAlgorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            BaselineAlgorithm::Ga => "ga",
            BaselineAlgorithm::Pso => "pso",
            BaselineAlgorithm::De => "de",
        }
    }
}

impl std::fmt::Display for BaselineAlgorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Algorithm-specific knobs. The variant selects the algorithm.
#[derive(Debug, Clone, PartialEq)]
pub enum AlgorithmKnobs {
    Ga { crossover_rate: f64, mutation_rate: f64 },
    Pso { w: f64, c1: f64, c2: f64, velocity_max: f64 },
    De { f: f64, cr: f64 },
}

/// Budget plus knobs for one baseline run. The constructors carry the
/// standard defaults: population 30, 50 iterations, GA 0.8/0.1, PSO
/// 0.5/1.5/1.5 with velocity clamp 2, DE 0.5/0.9.
#[derive(Debug, Clone, PartialEq)]
pub struct BaselineParams {
    pub pop_size: usize,
    pub t_max: usize,
    pub knobs: AlgorithmKnobs,
}

impl BaselineParams {
    pub fn ga() -> Self {
        Self {
            pop_size: 30,
            t_max: 50,
            knobs: AlgorithmKnobs::Ga { crossover_rate: 0.8, mutation_rate: 0.1 },
        }
    }

    pub fn pso() -> Self {
        Self {
            pop_size: 30,
            t_max: 50,
            knobs: AlgorithmKnobs::Pso { w: 0.5, c1: 1.5, c2: 1.5, velocity_max: 2.0 },
        }
    }

    pub fn de() -> Self {
        Self {
            pop_size: 30,
            t_max: 50,
            knobs: AlgorithmKnobs::De { f: 0.5, cr: 0.9 },
        }
    }

    pub fn algorithm(&self) -> BaselineAlgorithm {
        match self.knobs {
            AlgorithmKnobs::Ga { .. } => BaselineAlgorithm::Ga,
            AlgorithmKnobs::Pso { .. } => BaselineAlgorithm::Pso,
            AlgorithmKnobs::De { .. } => BaselineAlgorithm::De,
        }
    }

    pub fn validate(&self) -> Result<(), BaselineParamError> {
        if self.t_max < 1 {
            return Err(BaselineParamError::TMax);
        }
        // DE's rand/1 mutation needs the target plus three distinct donors.
        let min_pop = match self.knobs {
            AlgorithmKnobs::De { .. } => 4,
            _ => 2,
        };
        if self.pop_size < min_pop {
            return Err(BaselineParamError::PopSize {
                algorithm: self.algorithm().as_str(),
                min: min_pop,
                got: self.pop_size,
            });
        }
        let rate = |name, value: f64| {
            if value.is_finite() && (0.0..=1.0).contains(&value) {
                Ok(())
            } else {
                Err(BaselineParamError::Rate { name, value })
            }
        };
        let positive = |name, value: f64| {
            if value.is_finite() && value > 0.0 {
                Ok(())
            } else {
                Err(BaselineParamError::Positive { name, value })
            }
        };
        match self.knobs {
            AlgorithmKnobs::Ga { crossover_rate, mutation_rate } => {
                rate("crossover_rate", crossover_rate)?;
                rate("mutation_rate", mutation_rate)?;
            }
            AlgorithmKnobs::Pso { w, c1, c2, velocity_max } => {
                positive("w", w)?;
                positive("c1", c1)?;
                positive("c2", c2)?;
                positive("velocity_max", velocity_max)?;
            }
            AlgorithmKnobs::De { f, cr } => {
                positive("f", f)?;
                rate("cr", cr)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BaselineParamError {
    #[error("pop_size must be at least {min} for {algorithm}, got {got}")]
    PopSize { algorithm: &'static str, min: usize, got: usize },
    #[error("t_max must be at least 1")]
    TMax,
    #[error("{name} must be within [0, 1], got {value}")]
    Rate { name: &'static str, value: f64 },
    #[error("{name} must be positive and finite, got {value}")]
    Positive { name: &'static str, value: f64 },
}

#[derive(Debug, Error)]
pub enum BaselineError {
    #[error(transparent)]
    Params(#[from] BaselineParamError),
    #[error(transparent)]
    Objective(#[from] ObjectiveError),
}

/// Runs the selected baseline for its full iteration budget and returns a
/// result in the shared schema. Deterministic per seed, like every optimizer
/// here.
pub fn run_baseline(
    params: &BaselineParams,
    objective: &mut WeightedObjective,
    space: &SearchSpace,
    seed: u64,
) -> Result<RunResult, BaselineError> {
    params.validate()?;
    let start = Instant::now();
    let mut rng = RandomSource::new(seed);
    let outcome = match params.knobs {
        AlgorithmKnobs::Ga { crossover_rate, mutation_rate } => run_ga(
            params.pop_size,
            params.t_max,
            crossover_rate,
            mutation_rate,
            objective,
            space,
            &mut rng,
        )?,
        AlgorithmKnobs::Pso { w, c1, c2, velocity_max } => run_pso(
            params.pop_size,
            params.t_max,
            w,
            c1,
            c2,
            velocity_max,
            objective,
            space,
            &mut rng,
        )?,
        AlgorithmKnobs::De { f, cr } => {
            run_de(params.pop_size, params.t_max, f, cr, objective, space, &mut rng)?
        }
    };
    Ok(RunResult {
        best_point: outcome.best.position,
        best_fitness: outcome.best.fitness,
        trace: outcome.trace,
        evaluations: outcome.evaluations,
        runtime: start.elapsed(),
        seed,
        stop_reason: StopReason::Budget,
    })
}

struct BaselineOutcome {
    best: Candidate,
    trace: Vec<TraceRecord>,
    evaluations: u64,
}

fn init_population(
    n: usize,
    objective: &mut WeightedObjective,
    space: &SearchSpace,
    rng: &mut impl DrawSource,
) -> Result<Vec<Candidate>, ObjectiveError> {
    let mut population = Vec::with_capacity(n);
    for _ in 0..n {
        let position = space.sample_uniform(rng);
        let fitness = objective.evaluate(&position)?;
        population.push(Candidate { position, fitness });
    }
    Ok(population)
}

fn argmin(population: &[Candidate]) -> usize {
    let mut best = 0;
    for (i, c) in population.iter().enumerate().skip(1) {
        if c.fitness < population[best].fitness {
            best = i;
        }
    }
    best
}

fn trace_row(iteration: usize, best_fitness: f64, population: &[Candidate]) -> TraceRecord {
    TraceRecord {
        iteration,
        best_fitness,
        mean_fitness: population.iter().map(|c| c.fitness).sum::<f64>()
            / population.len() as f64,
        matchmaker_m: 0.0,
        alpha: 0.0,
        e_match: 0.0,
        eliminated_count: 0,
    }
}

/// Uniform index in 0..n from one [0,1) draw.
fn draw_index(rng: &mut impl DrawSource, n: usize) -> usize {
    ((rng.uniform01() * n as f64) as usize).min(n - 1)
}

/// Size-2 tournament with replacement; ties keep the first pick.
fn tournament<'a>(population: &'a [Candidate], rng: &mut impl DrawSource) -> &'a Candidate {
    let a = &population[draw_index(rng, population.len())];
    let b = &population[draw_index(rng, population.len())];
    if b.fitness < a.fitness {
        b
    } else {
        a
    }
}

fn run_ga(
    n: usize,
    t_max: usize,
    crossover_rate: f64,
    mutation_rate: f64,
    objective: &mut WeightedObjective,
    space: &SearchSpace,
    rng: &mut impl DrawSource,
) -> Result<BaselineOutcome, ObjectiveError> {
    let d = space.dim();
    let mut population = init_population(n, objective, space, rng)?;
    let mut evaluations = n as u64;
    let mut best = population[argmin(&population)].clone();
    let mut trace = vec![trace_row(0, best.fitness, &population)];

    for generation in 1..=t_max {
        let elite = population[argmin(&population)].clone();
        let mut next = Vec::with_capacity(n);
        next.push(elite);
        while next.len() < n {
            let p1 = tournament(&population, rng);
            let p2 = tournament(&population, rng);
            let mut child: Vec<f64> = if rng.uniform01() < crossover_rate {
                (0..d)
                    .map(|k| if rng.uniform01() < 0.5 { p1.position[k] } else { p2.position[k] })
                    .collect()
            } else {
                p1.position.clone()
            };
            for (k, gene) in child.iter_mut().enumerate() {
                if rng.uniform01() < mutation_rate {
                    // Gaussian mutation with sigma at 10% of the axis range.
                    *gene += 0.1 * space.width(k) * rng.normal();
                }
            }
            space.clamp_in_place(&mut child);
            let fitness = objective.evaluate(&child)?;
            evaluations += 1;
            next.push(Candidate { position: child, fitness });
        }
        population = next;
        let idx = argmin(&population);
        if population[idx].fitness < best.fitness {
            best = population[idx].clone();
        }
        trace.push(trace_row(generation, best.fitness, &population));
    }
    Ok(BaselineOutcome { best, trace, evaluations })
}

#[allow(clippy::too_many_arguments)]
fn run_pso(
    n: usize,
    t_max: usize,
    w: f64,
    c1: f64,
    c2: f64,
    velocity_max: f64,
    objective: &mut WeightedObjective,
    space: &SearchSpace,
    rng: &mut impl DrawSource,
) -> Result<BaselineOutcome, ObjectiveError> {
    let d = space.dim();
    let mut population = init_population(n, objective, space, rng)?;
    let mut evaluations = n as u64;
    let mut velocities = vec![vec![0.0; d]; n];
    let mut personal_best = population.clone();
    let mut best = personal_best[argmin(&personal_best)].clone();
    let mut trace = vec![trace_row(0, best.fitness, &population)];

    for iteration in 1..=t_max {
        // Synchronous update: every particle sees the previous iteration's
        // global best.
        let leader = best.position.clone();
        for i in 0..n {
            for k in 0..d {
                let r1 = rng.uniform01();
                let r2 = rng.uniform01();
                let pull = c1 * r1 * (personal_best[i].position[k] - population[i].position[k])
                    + c2 * r2 * (leader[k] - population[i].position[k]);
                let v = (w * velocities[i][k] + pull).clamp(-velocity_max, velocity_max);
                velocities[i][k] = v;
                population[i].position[k] += v;
            }
            space.clamp_in_place(&mut population[i].position);
            population[i].fitness = objective.evaluate(&population[i].position)?;
            evaluations += 1;
            if population[i].fitness < personal_best[i].fitness {
                personal_best[i] = population[i].clone();
            }
        }
        let idx = argmin(&personal_best);
        if personal_best[idx].fitness < best.fitness {
            best = personal_best[idx].clone();
        }
        trace.push(trace_row(iteration, best.fitness, &population));
    }
    Ok(BaselineOutcome { best, trace, evaluations })
}

fn run_de(
    n: usize,
    t_max: usize,
    f: f64,
    cr: f64,
    objective: &mut WeightedObjective,
    space: &SearchSpace,
    rng: &mut impl DrawSource,
) -> Result<BaselineOutcome, ObjectiveError> {
    let d = space.dim();
    let mut population = init_population(n, objective, space, rng)?;
    let mut evaluations = n as u64;
    let mut best = population[argmin(&population)].clone();
    let mut trace = vec![trace_row(0, best.fitness, &population)];

    for generation in 1..=t_max {
        let mut next = Vec::with_capacity(n);
        for i in 0..n {
            // rand/1: three donors, all distinct and different from i.
            let mut pick = |exclude: &[usize]| loop {
                let r = draw_index(rng, n);
                if !exclude.contains(&r) {
                    return r;
                }
            };
            let r1 = pick(&[i]);
            let r2 = pick(&[i, r1]);
            let r3 = pick(&[i, r1, r2]);
            let j_rand = draw_index(rng, d);
            let mut trial = Vec::with_capacity(d);
            for k in 0..d {
                let crossed = rng.uniform01() < cr || k == j_rand;
                trial.push(if crossed {
                    population[r1].position[k]
                        + f * (population[r2].position[k] - population[r3].position[k])
                } else {
                    population[i].position[k]
                });
            }
            space.clamp_in_place(&mut trial);
            let trial_fitness = objective.evaluate(&trial)?;
            evaluations += 1;
            // Ties go to the trial, the common reference choice.
            next.push(if trial_fitness <= population[i].fitness {
                Candidate { position: trial, fitness: trial_fitness }
            } else {
                population[i].clone()
            });
        }
        population = next;
        let idx = argmin(&population);
        if population[idx].fitness < best.fitness {
            best = population[idx].clone();
        }
        trace.push(trace_row(generation, best.fitness, &population));
    }
    Ok(BaselineOutcome { best, trace, evaluations })
}
