//! Box-constrained search spaces and the candidate type every optimizer in
//! this crate shares.

use thiserror::Error;

use crate::rng::DrawSource;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpaceError {
    #[error("search space needs at least one dimension")]
    Empty,
    #[error("bounds arrays differ in length: {lower} lower vs {upper} upper")]
    BoundsLengthMismatch { lower: usize, upper: usize },
    #[error("bounds must be finite with lower < upper; dimension {dim} has [{lower}, {upper}]")]
    InvalidBound { dim: usize, lower: f64, upper: f64 },
    #[error("point has {got} dimensions, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// An axis-aligned box: per-dimension lower and upper bounds with
/// `lower[j] < upper[j]` everywhere.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchSpace {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl SearchSpace {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self, SpaceError> {
        if lower.len() != upper.len() {
            return Err(SpaceError::BoundsLengthMismatch {
                lower: lower.len(),
                upper: upper.len(),
            });
        }
        if lower.is_empty() {
            return Err(SpaceError::Empty);
        }
        for (dim, (&lo, &hi)) in lower.iter().zip(&upper).enumerate() {
            if !lo.is_finite() || !hi.is_finite() || lo >= hi {
                return Err(SpaceError::InvalidBound { dim, lower: lo, upper: hi });
            }
        }
        Ok(Self { lower, upper })
    }

    /// A box with the same `[lower, upper]` interval in every dimension.
    pub fn uniform(dim: usize, lower: f64, upper: f64) -> Result<Self, SpaceError> {
        Self::new(vec![lower; dim], vec![upper; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn width(&self, dim: usize) -> f64 {
        self.upper[dim] - self.lower[dim]
    }

    pub fn contains(&self, point: &[f64]) -> bool {
        point.len() == self.dim()
            && point
                .iter()
                .zip(&self.lower)
                .zip(&self.upper)
                .all(|((&x, &lo), &hi)| lo <= x && x <= hi)
    }

    /// Projects a point onto the box, coordinate by coordinate.
    pub fn clamp(&self, point: &[f64]) -> Result<Vec<f64>, SpaceError> {
        if point.len() != self.dim() {
            return Err(SpaceError::DimensionMismatch {
                expected: self.dim(),
                got: point.len(),
            });
        }
        let mut out = point.to_vec();
        self.clamp_in_place(&mut out);
        Ok(out)
    }

    pub fn clamp_in_place(&self, point: &mut [f64]) {
        debug_assert_eq!(point.len(), self.dim());
        for (j, x) in point.iter_mut().enumerate() {
            *x = x.clamp(self.lower[j], self.upper[j]);
        }
    }

    /// Samples a point with every coordinate uniform on its `[lower, upper)`
    /// interval, one draw per dimension in index order.
    pub fn sample_uniform(&self, rng: &mut impl DrawSource) -> Vec<f64> {
        (0..self.dim())
            .map(|j| self.lower[j] + rng.uniform01() * self.width(j))
            .collect()
    }
}

/// One population member: a position plus its cached objective value. Code
/// that moves a candidate is responsible for re-evaluating the fitness.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub position: Vec<f64>,
    pub fitness: f64,
}
