//! Weighted-sum objectives: K component functions collapsed into the single
//! scalar the optimizers minimize. Single-objective problems are the K=1 case
//! with weight 1.

use thiserror::Error;

/// One objective component. `FnMut` so stateful components (noise sources)
/// work; `Send` so whole objectives can be built inside worker threads.
pub type ComponentFn = Box<dyn FnMut(&[f64]) -> f64 + Send>;

/// How far the weight total may drift from 1.
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ObjectiveError {
    #[error("objective needs at least one component")]
    NoComponents,
    #[error("component/weight arity mismatch: {components} components, {weights} weights")]
    ArityMismatch { components: usize, weights: usize },
    #[error("weight {index} must be finite and non-negative, got {weight}")]
    BadWeight { index: usize, weight: f64 },
    #[error("weights must sum to 1 within {WEIGHT_SUM_TOLERANCE:e}, got {sum}")]
    WeightSum { sum: f64 },
    #[error("component {component} returned a non-finite value ({value}) during evaluation")]
    NonFiniteComponent { component: usize, value: f64 },
    #[error("weighted sum became non-finite ({value}) after adding component {component}")]
    NonFiniteSum { component: usize, value: f64 },
}

/// A fixed set of components with convex-combination weights.
pub struct WeightedObjective {
    components: Vec<ComponentFn>,
    weights: Vec<f64>,
}

impl WeightedObjective {
    /// Validates arity, weight signs, and that the weights sum to 1.
    pub fn new(components: Vec<ComponentFn>, weights: Vec<f64>) -> Result<Self, ObjectiveError> {
        if components.is_empty() {
            return Err(ObjectiveError::NoComponents);
        }
        if components.len() != weights.len() {
            return Err(ObjectiveError::ArityMismatch {
                components: components.len(),
                weights: weights.len(),
            });
        }
        for (index, &weight) in weights.iter().enumerate() {
            if !weight.is_finite() || weight < 0.0 {
                return Err(ObjectiveError::BadWeight { index, weight });
            }
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(ObjectiveError::WeightSum { sum });
        }
        Ok(Self { components, weights })
    }

    /// Wraps a single function with weight 1.
    pub fn single(f: impl FnMut(&[f64]) -> f64 + Send + 'static) -> Self {
        Self {
            components: vec![Box::new(f)],
            weights: vec![1.0],
        }
    }

    pub fn arity(&self) -> usize {
        self.components.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// The weighted fitness at `point`. Any non-finite component value (or a
    /// non-finite running sum) aborts with the offending component index.
    pub fn evaluate(&mut self, point: &[f64]) -> Result<f64, ObjectiveError> {
        let mut total = 0.0;
        for (component, (f, &w)) in self.components.iter_mut().zip(&self.weights).enumerate() {
            let value = f(point);
            if !value.is_finite() {
                return Err(ObjectiveError::NonFiniteComponent { component, value });
            }
            total += w * value;
            if !total.is_finite() {
                return Err(ObjectiveError::NonFiniteSum { component, value: total });
            }
        }
        Ok(total)
    }
}

impl std::fmt::Debug for WeightedObjective {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("WeightedObjective")
            .field("arity", &self.arity())
            .field("weights", &self.weights)
            .finish()
    }
}
