//! Seeded random draws. Every optimizer run owns exactly one [`RandomSource`],
//! so a `u64` seed pins the whole draw sequence.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// The three draw primitives the optimizers consume. [`RandomSource`] is the
/// real implementation; tests substitute scripted sources to pin arithmetic.
pub trait DrawSource {
    /// Uniform draw from [0, 1).
    fn uniform01(&mut self) -> f64;

    /// Uniform draw from [-1, 1).
    fn uniform_sym(&mut self) -> f64;

    /// Standard normal draw.
    fn normal(&mut self) -> f64;
}

/// Deterministic random stream seeded from a `u64`. The same seed yields the
/// same sequence within one build; cross-build bit-identity is not promised.
#[derive(Debug, Clone)]
pub struct RandomSource {
    rng: ChaCha8Rng,
    seed: u64,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            seed,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

impl DrawSource for RandomSource {
    fn uniform01(&mut self) -> f64 {
        // Top 53 bits of a u64 scaled by 2^-53: exact uniform on [0, 1).
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    fn uniform_sym(&mut self) -> f64 {
        2.0 * self.uniform01() - 1.0
    }

    fn normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.rng)
    }
}
