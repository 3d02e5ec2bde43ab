//! The built-in suite of 23 continuous test functions: canonical formulas,
//! per-function boxes and default dimensions, category metadata, and known
//! optima where the closed form is exact at double precision.
//!
//! Seven entries (ackley_2, cosine matrix, multimodal sphere, noisy quadratic,
//! noisy sphere, rastrigin_2, sine wave) carry names that are not standard in
//! the benchmarking literature; the definitions used here are documented on
//! each evaluator and flagged AMBIGUOUS. Their optima magnitudes are the only
//! anchor, so nothing in the test suite gates on their exact values.

use std::f64::consts::{E, PI};
use std::str::FromStr;
use std::sync::OnceLock;

use thiserror::Error;

use crate::objective::WeightedObjective;
use crate::rng::{DrawSource, RandomSource};
use crate::space::SearchSpace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FunctionId {
    F1, F2, F3, F4, F5, F6, F7, F8, F9, F10, F11, F12,
    F13, F14, F15, F16, F17, F18, F19, F20, F21, F22, F23,
}

impl FunctionId {
    /// All 23 functions in registry order.
    pub const ALL: [FunctionId; 23] = [
        FunctionId::F1, FunctionId::F2, FunctionId::F3, FunctionId::F4, FunctionId::F5,
        FunctionId::F6, FunctionId::F7, FunctionId::F8, FunctionId::F9, FunctionId::F10,
        FunctionId::F11, FunctionId::F12, FunctionId::F13, FunctionId::F14, FunctionId::F15,
        FunctionId::F16, FunctionId::F17, FunctionId::F18, FunctionId::F19, FunctionId::F20,
        FunctionId::F21, FunctionId::F22, FunctionId::F23,
    ];

    /// 1-based registry index, so `F1.index() == 1`.
    pub fn index(self) -> usize {
        Self::ALL.iter().position(|&f| f == self).expect("every id is in ALL") + 1
    }

    pub fn name(self) -> &'static str {
        function_spec(self).name
    }
}

impl std::fmt::Display for FunctionId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "f{}", self.index())
    }
}

impl FromStr for FunctionId {
    type Err = BenchmarkError;

    /// Accepts the short id ("f8") or the registry name with spaces,
    /// underscores, or hyphens used interchangeably ("levy function",
    /// "levy_function").
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let normalized: String = s
            .trim()
            .to_ascii_lowercase()
            .chars()
            .map(|c| if c == ' ' || c == '-' { '_' } else { c })
            .collect();
        for &id in &FunctionId::ALL {
            if normalized == format!("f{}", id.index()) {
                return Ok(id);
            }
            let name_normalized: String = function_spec(id)
                .name
                .chars()
                .map(|c| if c == ' ' || c == '-' { '_' } else { c })
                .collect();
            if normalized == name_normalized {
                return Ok(id);
            }
        }
        Err(BenchmarkError::UnknownId(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Modality {
    Unimodal,
    Multimodal,
}

impl Modality {
    pub fn as_str(self) -> &'static str {
        match self {
            Modality::Unimodal => "unimodal",
            Modality::Multimodal => "multimodal",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Separability {
    Separable,
    Nonseparable,
}

impl Separability {
    pub fn as_str(self) -> &'static str {
        match self {
            Separability::Separable => "separable",
            Separability::Nonseparable => "nonseparable",
        }
    }
}

/// A point and value where a function attains its global minimum, exact to
/// double precision (coherence is tested to 1e-9).
#[derive(Debug, Clone, PartialEq)]
pub struct KnownOptimum {
    pub point: Vec<f64>,
    pub value: f64,
}

/// One registry row: metadata for a benchmark function.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionSpec {
    pub id: FunctionId,
    pub name: &'static str,
    pub modality: Modality,
    pub separability: Separability,
    pub default_dim: usize,
    pub lower: f64,
    pub upper: f64,
    /// Fixed-dimension functions reject points of any other length.
    pub fixed_dim: bool,
    /// Noisy functions add a uniform [0,1) draw per evaluation and therefore
    /// need a random source.
    pub noisy: bool,
    pub known_optimum: Option<KnownOptimum>,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BenchmarkError {
    #[error("unknown benchmark function {0:?} (expected f1..f23 or a registry name)")]
    UnknownId(String),
    #[error("{id} expects points of dimension {expected}, got {got}")]
    WrongDimension { id: FunctionId, expected: usize, got: usize },
    #[error("{id} accepts any dimension >= 1, got an empty point")]
    EmptyPoint { id: FunctionId },
    #[error("{0} is noisy and needs a random source; use evaluate_noisy or objective")]
    NeedsRandomSource(FunctionId),
}

/// The immutable registry row for a function.
pub fn function_spec(id: FunctionId) -> &'static FunctionSpec {
    static REGISTRY: OnceLock<Vec<FunctionSpec>> = OnceLock::new();
    let registry = REGISTRY.get_or_init(build_registry);
    &registry[id.index() - 1]
}

/// The function's default box as a search space.
pub fn space(id: FunctionId) -> SearchSpace {
    let spec = function_spec(id);
    SearchSpace::uniform(spec.default_dim, spec.lower, spec.upper)
        .expect("registry bounds are valid")
}

/// Evaluates a deterministic function. Noisy entries (f11, f12) are rejected;
/// use [`evaluate_noisy`] or [`objective`] for those.
pub fn evaluate(id: FunctionId, point: &[f64]) -> Result<f64, BenchmarkError> {
    let spec = function_spec(id);
    if spec.noisy {
        return Err(BenchmarkError::NeedsRandomSource(id));
    }
    check_dimension(spec, point)?;
    Ok(evaluate_base(id, point))
}

/// Evaluates any function, drawing additive uniform [0,1) noise for the noisy
/// entries. Deterministic entries consume no draws.
pub fn evaluate_noisy(
    id: FunctionId,
    point: &[f64],
    rng: &mut impl DrawSource,
) -> Result<f64, BenchmarkError> {
    let spec = function_spec(id);
    check_dimension(spec, point)?;
    let base = evaluate_base(id, point);
    Ok(if spec.noisy { base + rng.uniform01() } else { base })
}

/// Wraps a function as a single-component objective. Noisy entries own a
/// random stream seeded with `noise_seed`, keeping whole runs deterministic
/// per seed. A point of the wrong dimension evaluates to NaN, which the
/// objective layer reports as an evaluation error.
pub fn objective(id: FunctionId, noise_seed: u64) -> WeightedObjective {
    if function_spec(id).noisy {
        let mut rng = RandomSource::new(noise_seed);
        WeightedObjective::single(move |x: &[f64]| {
            evaluate_noisy(id, x, &mut rng).unwrap_or(f64::NAN)
        })
    } else {
        WeightedObjective::single(move |x: &[f64]| evaluate(id, x).unwrap_or(f64::NAN))
    }
}

fn check_dimension(spec: &FunctionSpec, point: &[f64]) -> Result<(), BenchmarkError> {
    if spec.fixed_dim && point.len() != spec.default_dim {
        return Err(BenchmarkError::WrongDimension {
            id: spec.id,
            expected: spec.default_dim,
            got: point.len(),
        });
    }
    if point.is_empty() {
        return Err(BenchmarkError::EmptyPoint { id: spec.id });
    }
    Ok(())
}

fn evaluate_base(id: FunctionId, x: &[f64]) -> f64 {
    match id {
        FunctionId::F1 => ackley(x),
        FunctionId::F2 => ackley_n2(x),
        FunctionId::F3 => booth(x),
        FunctionId::F4 => cosine_mixture(x),
        FunctionId::F5 => dixon_price(x),
        FunctionId::F6 => foxholes(x),
        FunctionId::F7 => griewank(x),
        FunctionId::F8 => levy(x),
        FunctionId::F9 => michalewicz(x),
        FunctionId::F10 => multimodal_sphere(x),
        FunctionId::F11 => quartic_sum(x),
        FunctionId::F12 => sphere(x),
        FunctionId::F13 => powell_sum(x),
        FunctionId::F14 | FunctionId::F15 => rastrigin(x),
        FunctionId::F16 => rosenbrock(x),
        FunctionId::F17 => salomon(x),
        FunctionId::F18 => schwefel(x),
        FunctionId::F19 => sine_wave(x),
        FunctionId::F20 => sphere(x),
        FunctionId::F21 => three_hump_camel(x),
        FunctionId::F22 => xin_she_yang_n4(x),
        FunctionId::F23 => zakharov(x),
    }
}

/// Ackley: -20 exp(-0.2 sqrt(mean(x^2))) - exp(mean(cos(2 pi x))) + 20 + e.
fn ackley(x: &[f64]) -> f64 {
    let d = x.len() as f64;
    let sq = x.iter().map(|&v| v * v).sum::<f64>() / d;
    let cs = x.iter().map(|&v| (2.0 * PI * v).cos()).sum::<f64>() / d;
    -20.0 * (-0.2 * sq.sqrt()).exp() - cs.exp() + 20.0 + E
}

/// AMBIGUOUS registry name "ackley_2"; implemented as the 2-D Ackley N.2:
/// -200 exp(-0.02 sqrt(x^2 + y^2)).
fn ackley_n2(x: &[f64]) -> f64 {
    -200.0 * (-0.02 * (x[0] * x[0] + x[1] * x[1]).sqrt()).exp()
}

/// Booth: (x + 2y - 7)^2 + (2x + y - 5)^2.
fn booth(x: &[f64]) -> f64 {
    let a = x[0] + 2.0 * x[1] - 7.0;
    let b = 2.0 * x[0] + x[1] - 5.0;
    a * a + b * b
}

/// AMBIGUOUS registry name "cosine matrix"; implemented as a cosine-mixture
/// form -0.1 sum(cos(5 pi x)) + sum(x^2), minimum -0.1 d at the origin.
fn cosine_mixture(x: &[f64]) -> f64 {
    let cos_term: f64 = x.iter().map(|&v| (5.0 * PI * v).cos()).sum();
    let sq: f64 = x.iter().map(|&v| v * v).sum();
    -0.1 * cos_term + sq
}

/// Dixon-Price: (x_1 - 1)^2 + sum_{i=2..d} i (2 x_i^2 - x_{i-1})^2.
fn dixon_price(x: &[f64]) -> f64 {
    let mut total = (x[0] - 1.0) * (x[0] - 1.0);
    for i in 1..x.len() {
        let term = 2.0 * x[i] * x[i] - x[i - 1];
        total += (i + 1) as f64 * term * term;
    }
    total
}

/// Foxholes (Shekel/De Jong five): (0.002 + sum_{j=1..25} 1/(j + (x-a_j)^6
/// + (y-b_j)^6))^-1 on the standard 5x5 grid of wells at {-32,-16,0,16,32}.
fn foxholes(x: &[f64]) -> f64 {
    const A: [f64; 5] = [-32.0, -16.0, 0.0, 16.0, 32.0];
    let mut sum = 0.0;
    for j in 0..25 {
        let a = A[j % 5];
        let b = A[j / 5];
        let dx = x[0] - a;
        let dy = x[1] - b;
        sum += 1.0 / ((j + 1) as f64 + dx.powi(6) + dy.powi(6));
    }
    1.0 / (0.002 + sum)
}

/// Griewank: sum(x^2)/4000 - prod(cos(x_i / sqrt(i))) + 1.
fn griewank(x: &[f64]) -> f64 {
    let sq: f64 = x.iter().map(|&v| v * v).sum();
    let prod: f64 = x
        .iter()
        .enumerate()
        .map(|(i, &v)| (v / ((i + 1) as f64).sqrt()).cos())
        .product();
    sq / 4000.0 - prod + 1.0
}

/// Levy: sin^2(pi w_1) + sum (w_i - 1)^2 [1 + 10 sin^2(pi w_i + 1)]
/// + (w_d - 1)^2 [1 + sin^2(2 pi w_d)], with w_i = 1 + (x_i - 1)/4.
fn levy(x: &[f64]) -> f64 {
    let w = |v: f64| 1.0 + (v - 1.0) / 4.0;
    let d = x.len();
    let w1 = w(x[0]);
    let wd = w(x[d - 1]);
    let mut total = (PI * w1).sin().powi(2);
    for &v in &x[..d - 1] {
        let wi = w(v);
        let s = (PI * wi + 1.0).sin();
        total += (wi - 1.0) * (wi - 1.0) * (1.0 + 10.0 * s * s);
    }
    let s = (2.0 * PI * wd).sin();
    total + (wd - 1.0) * (wd - 1.0) * (1.0 + s * s)
}

/// Michalewicz with steepness m = 10:
/// -sum sin(x_i) sin^{2m}(i x_i^2 / pi).
fn michalewicz(x: &[f64]) -> f64 {
    -x.iter()
        .enumerate()
        .map(|(i, &v)| v.sin() * ((i + 1) as f64 * v * v / PI).sin().powi(20))
        .sum::<f64>()
}

/// AMBIGUOUS registry name "multimodal sphere"; implemented as
/// sum(x^2) - 10 sum(cos(2 pi x)), minimum -10 d at the origin.
fn multimodal_sphere(x: &[f64]) -> f64 {
    let sq: f64 = x.iter().map(|&v| v * v).sum();
    let cs: f64 = x.iter().map(|&v| (2.0 * PI * v).cos()).sum();
    sq - 10.0 * cs
}

/// Quartic bowl sum(x^4); the deterministic part of the AMBIGUOUS
/// "noisy quadratic" entry (additive uniform noise is applied on top).
fn quartic_sum(x: &[f64]) -> f64 {
    x.iter().map(|&v| v * v * v * v).sum()
}

/// Powell sum: sum |x_i|^{i+1} with 1-based i.
fn powell_sum(x: &[f64]) -> f64 {
    x.iter()
        .enumerate()
        .map(|(i, &v)| v.abs().powi(i as i32 + 2))
        .sum()
}

/// Rastrigin: 10 d + sum(x^2 - 10 cos(2 pi x)). Also serves the duplicate
/// AMBIGUOUS registry entry "rastrigin_2".
fn rastrigin(x: &[f64]) -> f64 {
    10.0 * x.len() as f64
        + x.iter()
            .map(|&v| v * v - 10.0 * (2.0 * PI * v).cos())
            .sum::<f64>()
}

/// Rosenbrock: sum_{i=1..d-1} [100 (x_{i+1} - x_i^2)^2 + (1 - x_i)^2].
fn rosenbrock(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| {
            let a = w[1] - w[0] * w[0];
            let b = 1.0 - w[0];
            100.0 * a * a + b * b
        })
        .sum()
}

/// Salomon: 1 - cos(2 pi ||x||) + 0.1 ||x||.
fn salomon(x: &[f64]) -> f64 {
    let norm = x.iter().map(|&v| v * v).sum::<f64>().sqrt();
    1.0 - (2.0 * PI * norm).cos() + 0.1 * norm
}

/// Schwefel: 418.9829 d - sum(x_i sin(sqrt|x_i|)). The offset constant is the
/// conventional rounded value, so no exact optimum is registered.
fn schwefel(x: &[f64]) -> f64 {
    418.9829 * x.len() as f64
        - x.iter().map(|&v| v * v.abs().sqrt().sin()).sum::<f64>()
}

/// AMBIGUOUS registry name "sine wave"; implemented as -sum(sin(x_i)),
/// minimum -d at x_i = pi/2 on the [-pi, pi] box.
fn sine_wave(x: &[f64]) -> f64 {
    -x.iter().map(|&v| v.sin()).sum::<f64>()
}

/// Sphere: sum(x^2). Also the deterministic part of the AMBIGUOUS
/// "noisy sphere" entry.
fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|&v| v * v).sum()
}

/// Three-hump camel: 2x^2 - 1.05x^4 + x^6/6 + xy + y^2.
fn three_hump_camel(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    2.0 * a * a - 1.05 * a.powi(4) + a.powi(6) / 6.0 + a * b + b * b
}

/// Xin-She Yang N.4: (sum sin^2 x_i - exp(-sum x_i^2)) exp(-sum sin^2 sqrt|x_i|),
/// minimum -1 at the origin.
fn xin_she_yang_n4(x: &[f64]) -> f64 {
    let sin_sq: f64 = x.iter().map(|&v| v.sin() * v.sin()).sum();
    let sq: f64 = x.iter().map(|&v| v * v).sum();
    let sin_sqrt: f64 = x
        .iter()
        .map(|&v| {
            let s = v.abs().sqrt().sin();
            s * s
        })
        .sum();
    (sin_sq - (-sq).exp()) * (-sin_sqrt).exp()
}

/// Zakharov: sum(x^2) + (sum 0.5 i x_i)^2 + (sum 0.5 i x_i)^4 with 1-based i.
fn zakharov(x: &[f64]) -> f64 {
    let sq: f64 = x.iter().map(|&v| v * v).sum();
    let lin: f64 = x
        .iter()
        .enumerate()
        .map(|(i, &v)| 0.5 * (i + 1) as f64 * v)
        .sum();
    sq + lin * lin + lin.powi(4)
}

fn build_registry() -> Vec<FunctionSpec> {
    use FunctionId::*;
    use Modality::{Multimodal as M, Unimodal as U};
    use Separability::{Nonseparable as N, Separable as S};

    let zeros = |d: usize, value: f64| Some(KnownOptimum { point: vec![0.0; d], value });
    let dixon_point: Vec<f64> = (1..=30)
        .map(|i| {
            let p = 2f64.powi(i);
            2f64.powf(-(p - 2.0) / p)
        })
        .collect();

    let row = |id,
               name,
               modality,
               separability,
               default_dim,
               lower,
               upper,
               fixed_dim,
               noisy,
               known_optimum| FunctionSpec {
        id,
        name,
        modality,
        separability,
        default_dim,
        lower,
        upper,
        fixed_dim,
        noisy,
        known_optimum,
    };

    vec![
        row(F1, "ackley", M, N, 30, -32.768, 32.768, false, false, zeros(30, 0.0)),
        row(F2, "ackley_2", M, N, 2, -32.768, 32.768, true, false, zeros(2, -200.0)),
        row(F3, "booth", U, N, 2, -10.0, 10.0, true, false,
            Some(KnownOptimum { point: vec![1.0, 3.0], value: 0.0 })),
        row(F4, "cosine matrix", M, N, 30, -10.0, 10.0, false, false, zeros(30, -3.0)),
        row(F5, "dixon-price", U, N, 30, -10.0, 10.0, false, false,
            Some(KnownOptimum { point: dixon_point, value: 0.0 })),
        row(F6, "foxholes", M, N, 2, -65.536, 65.536, true, false, None),
        row(F7, "griewank", M, N, 30, -600.0, 600.0, false, false, zeros(30, 0.0)),
        row(F8, "levy function", M, N, 30, -10.0, 10.0, false, false,
            Some(KnownOptimum { point: vec![1.0; 30], value: 0.0 })),
        row(F9, "michalewicz", M, N, 10, 0.0, PI, false, false, None),
        row(F10, "multimodal sphere", M, S, 30, -10.0, 10.0, false, false, zeros(30, -300.0)),
        row(F11, "noisy quadratic", U, S, 30, -10.0, 10.0, false, true, None),
        row(F12, "noisy sphere", U, S, 30, -10.0, 10.0, false, true, None),
        row(F13, "powell sum", U, S, 30, -1.0, 1.0, false, false, zeros(30, 0.0)),
        row(F14, "rastrigin", M, S, 30, -5.12, 5.12, false, false, zeros(30, 0.0)),
        row(F15, "rastrigin_2", M, S, 30, -5.12, 5.12, false, false, zeros(30, 0.0)),
        row(F16, "rosenbrock", U, N, 30, -5.0, 10.0, false, false,
            Some(KnownOptimum { point: vec![1.0; 30], value: 0.0 })),
        row(F17, "salomon", M, S, 30, -100.0, 100.0, false, false, zeros(30, 0.0)),
        row(F18, "schwefel", M, S, 30, -500.0, 500.0, false, false, None),
        row(F19, "sine wave", M, S, 30, -PI, PI, false, false,
            Some(KnownOptimum { point: vec![PI / 2.0; 30], value: -30.0 })),
        row(F20, "sphere function", U, S, 30, -5.12, 5.12, false, false, zeros(30, 0.0)),
        row(F21, "three hump camel", U, N, 2, -5.0, 5.0, true, false, zeros(2, 0.0)),
        row(F22, "xin-she yang 4", M, N, 30, -10.0, 10.0, false, false, zeros(30, -1.0)),
        row(F23, "zakharov", U, N, 30, -5.0, 10.0, false, false, zeros(30, 0.0)),
    ]
}
