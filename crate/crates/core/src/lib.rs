//! Population-based continuous minimization built around a wedding-matchmaking
//! search heuristic (IWSO), plus the pieces needed to evaluate it honestly:
//! a 23-function benchmark registry, textbook GA/PSO/DE baselines, and a
//! replicated-experiment harness with summary statistics and sensitivity sweeps.
//!
//! Everything is seed-deterministic: the same inputs and the same `u64` seed
//! reproduce a run bit for bit (wall-clock timings aside).

pub mod baselines;
pub mod benchmarks;
pub mod harness;
pub mod iwso;
pub mod objective;
pub mod result;
pub mod rng;
pub mod space;

pub use objective::{ObjectiveError, WeightedObjective};
pub use result::{RunResult, StopReason, TraceRecord};
pub use rng::{DrawSource, RandomSource};
pub use space::{Candidate, SearchSpace, SpaceError};
