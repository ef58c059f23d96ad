//! Box-constrained benchmark functions.
//!
//! The suite mirrors the four-category layout of the CEC 2017 real-parameter
//! benchmark (unimodal, multimodal, hybrid, composite) but generates its own
//! shifts and rotations from a seed, so no external data files are needed.
//! Every function carries an analytically known optimum value.

use std::f64::consts::PI;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Shifts are drawn from this sub-box so the optimum lies strictly inside the default bounds.
const SHIFT_RANGE: f64 = 80.0;

/// Per-coordinate optimum of the Schwefel term before shifting.
const SCHWEFEL_OFFSET: f64 = 420.968_746_227_503_6;

/// Schwefel inputs are scaled by 10 so the default box covers its usual ±1000 range.
const SCHWEFEL_SCALE: f64 = 10.0;

/// Uniform box constraint `[lower, upper]^d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchBounds {
    lower: f64,
    upper: f64,
}

impl SearchBounds {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !lower.is_finite() || !upper.is_finite() || lower >= upper {
            return Err(Error::InvalidBounds { lower, upper });
        }
        Ok(Self { lower, upper })
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, point: &[f64]) -> bool {
        point.iter().all(|&x| x >= self.lower && x <= self.upper)
    }

    /// Draws a point uniformly from the box.
    pub fn sample<R: Rng + ?Sized>(&self, dimension: usize, rng: &mut R) -> Vec<f64> {
        (0..dimension)
            .map(|_| self.lower + self.width() * rng.random::<f64>())
            .collect()
    }
}

impl Default for SearchBounds {
    fn default() -> Self {
        Self {
            lower: -100.0,
            upper: 100.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Category {
    Unimodal,
    Multimodal,
    Hybrid,
    Composite,
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Category::Unimodal => "unimodal",
            Category::Multimodal => "multimodal",
            Category::Hybrid => "hybrid",
            Category::Composite => "composite",
        })
    }
}

/// Base landscapes, each with minimum 0 at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseFunction {
    Sphere,
    BentCigar,
    Rastrigin,
    Ackley,
    Griewank,
    Schwefel,
}

impl BaseFunction {
    pub fn name(&self) -> &'static str {
        match self {
            BaseFunction::Sphere => "sphere",
            BaseFunction::BentCigar => "bent_cigar",
            BaseFunction::Rastrigin => "rastrigin",
            BaseFunction::Ackley => "ackley",
            BaseFunction::Griewank => "griewank",
            BaseFunction::Schwefel => "schwefel",
        }
    }

    pub fn category(&self) -> Category {
        match self {
            BaseFunction::Sphere | BaseFunction::BentCigar => Category::Unimodal,
            _ => Category::Multimodal,
        }
    }

    /// Evaluates the unshifted, unrotated landscape. Empty input yields 0.
    pub fn value(&self, z: &[f64]) -> f64 {
        if z.is_empty() {
            return 0.0;
        }
        match self {
            BaseFunction::Sphere => z.iter().map(|v| v * v).sum(),
            BaseFunction::BentCigar => {
                z[0] * z[0] + 1e6 * z[1..].iter().map(|v| v * v).sum::<f64>()
            }
            BaseFunction::Rastrigin => z
                .iter()
                .map(|v| v * v - 10.0 * (2.0 * PI * v).cos() + 10.0)
                .sum(),
            BaseFunction::Ackley => {
                let d = z.len() as f64;
                let rms = (z.iter().map(|v| v * v).sum::<f64>() / d).sqrt();
                let mean_cos = z.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / d;
                // Written so that both brackets vanish exactly at the origin.
                20.0 * (1.0 - (-0.2 * rms).exp()) + (1f64.exp() - mean_cos.exp())
            }
            BaseFunction::Griewank => {
                let sum = z.iter().map(|v| v * v).sum::<f64>() / 4000.0;
                let prod = z
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos())
                    .product::<f64>();
                sum + (1.0 - prod)
            }
            BaseFunction::Schwefel => {
                let d = z.len() as f64;
                let peak = schwefel_term(SCHWEFEL_OFFSET, d);
                z.iter()
                    .map(|v| peak - schwefel_term(SCHWEFEL_SCALE * v + SCHWEFEL_OFFSET, d))
                    .sum()
            }
        }
    }
}

/// One coordinate of the modified Schwefel function, including the
/// out-of-range mirroring and quadratic penalty used by CEC suites.
fn schwefel_term(t: f64, d: f64) -> f64 {
    if t.abs() <= 500.0 {
        t * t.abs().sqrt().sin()
    } else if t > 500.0 {
        let m = 500.0 - t % 500.0;
        m * m.abs().sqrt().sin() - (t - 500.0).powi(2) / (10_000.0 * d)
    } else {
        let m = t.abs() % 500.0 - 500.0;
        m * m.abs().sqrt().sin() - (t + 500.0).powi(2) / (10_000.0 * d)
    }
}

/// Square orthonormal matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Rotation {
    dim: usize,
    data: Vec<f64>,
    identity: bool,
}

impl Rotation {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![0.0; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = 1.0;
        }
        Self {
            dim,
            data,
            identity: true,
        }
    }

    /// Orthonormalizes a standard-normal matrix with two passes of modified Gram-Schmidt.
    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        loop {
            let mut rows: Vec<Vec<f64>> = (0..dim)
                .map(|_| (0..dim).map(|_| rng.sample(StandardNormal)).collect())
                .collect();
            if orthonormalize(&mut rows) {
                let data: Vec<f64> = rows.into_iter().flatten().collect();
                let identity = data == Self::identity(dim).data;
                return Self {
                    dim,
                    data,
                    identity,
                };
            }
        }
    }

    /// Builds a rotation from row-major data; returns `None` unless it is orthonormal to `1e-9`.
    pub fn from_rows(rows: &[Vec<f64>]) -> Option<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return None;
        }
        let data: Vec<f64> = rows.iter().flatten().copied().collect();
        let identity = data == Self::identity(dim).data;
        let r = Self {
            dim,
            data,
            identity,
        };
        r.is_orthonormal(1e-9).then_some(r)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn is_identity(&self) -> bool {
        self.identity
    }

    /// Maximum absolute deviation of `R·Rᵀ` from the identity is at most `tol`.
    pub fn is_orthonormal(&self, tol: f64) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let dot: f64 = self
                    .row(i)
                    .iter()
                    .zip(self.row(j))
                    .map(|(a, b)| a * b)
                    .sum();
                let target = if i == j { 1.0 } else { 0.0 };
                (dot - target).abs() <= tol
            })
        })
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }
}

fn orthonormalize(rows: &mut [Vec<f64>]) -> bool {
    for _pass in 0..2 {
        for i in 0..rows.len() {
            for j in 0..i {
                let (done, rest) = rows.split_at_mut(i);
                let proj: f64 = rest[0].iter().zip(&done[j]).map(|(a, b)| a * b).sum();
                for (a, b) in rest[0].iter_mut().zip(&done[j]) {
                    *a -= proj * b;
                }
            }
            let norm = rows[i].iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm < 1e-8 {
                return false;
            }
            rows[i].iter_mut().for_each(|v| *v /= norm);
        }
    }
    true
}

/// A contiguous block of coordinates handled by one base function.
#[derive(Debug, Clone, PartialEq)]
pub struct HybridBlock {
    pub base: BaseFunction,
    pub len: usize,
}

/// One term of a composite function.
#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    pub base: BaseFunction,
    pub shift: Vec<f64>,
    pub rotation: Rotation,
    pub sigma: f64,
    pub bias: f64,
}

impl Component {
    pub fn value(&self, point: &[f64]) -> f64 {
        self.base
            .value(&transform(point, &self.shift, &self.rotation))
            + self.bias
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Landscape {
    Base(BaseFunction),
    Hybrid(Vec<HybridBlock>),
    Composite(Vec<Component>),
}

/// A concrete benchmark problem: landscape, transform, bounds and known optimum.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveSpec {
    pub id: u32,
    pub name: String,
    pub category: Category,
    pub dimension: usize,
    pub bounds: SearchBounds,
    /// Location of the global optimum.
    pub shift: Vec<f64>,
    pub rotation: Rotation,
    pub landscape: Landscape,
    /// Additive offset applied to every value.
    pub bias: f64,
    pub f_opt: f64,
    pub suite_seed: u64,
}

impl ObjectiveSpec {
    /// Single base function, `f(x) = base(R·(x − shift)) + bias`.
    pub fn from_base(
        id: u32,
        base: BaseFunction,
        shift: Vec<f64>,
        rotation: Rotation,
        bias: f64,
    ) -> Self {
        let dimension = shift.len();
        assert_eq!(
            rotation.dim(),
            dimension,
            "rotation/shift dimension mismatch"
        );
        Self {
            id,
            name: base.name().to_string(),
            category: base.category(),
            dimension,
            bounds: SearchBounds::default(),
            shift,
            rotation,
            landscape: Landscape::Base(base),
            bias,
            f_opt: bias,
            suite_seed: 0,
        }
    }

    /// Base function with no shift, no rotation and zero bias.
    pub fn plain(base: BaseFunction, dimension: usize) -> Self {
        Self::from_base(
            0,
            base,
            vec![0.0; dimension],
            Rotation::identity(dimension),
            0.0,
        )
    }

    /// Evaluates without touching any counter.
    pub fn value_at(&self, point: &[f64]) -> f64 {
        match &self.landscape {
            Landscape::Base(base) => {
                self.bias + base.value(&transform(point, &self.shift, &self.rotation))
            }
            Landscape::Hybrid(blocks) => {
                let z = transform(point, &self.shift, &self.rotation);
                let mut start = 0;
                let mut total = 0.0;
                for block in blocks {
                    total += block.base.value(&z[start..start + block.len]);
                    start += block.len;
                }
                self.bias + total
            }
            Landscape::Composite(components) => {
                let weights = composite_weights(point, components);
                let total: f64 = components
                    .iter()
                    .zip(&weights)
                    .filter(|(_, &w)| w > 0.0)
                    .map(|(c, w)| w * c.value(point))
                    .sum();
                self.bias + total
            }
        }
    }

    /// Component values (bias included) for composite functions.
    pub fn component_values(&self, point: &[f64]) -> Option<Vec<f64>> {
        match &self.landscape {
            Landscape::Composite(components) => Some(
                components
                    .iter()
                    .map(|c| self.bias + c.value(point))
                    .collect(),
            ),
            _ => None,
        }
    }

    /// Counted evaluation; fails without counting on a dimension mismatch or an exhausted budget.
    pub fn evaluate(&self, point: &[f64], counter: &mut EvaluationCounter) -> Result<f64> {
        if point.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: point.len(),
            });
        }
        counter.charge()?;
        Ok(self.value_at(point))
    }

    pub fn error_of(&self, best_fitness: f64) -> f64 {
        error_of(self, best_fitness)
    }

    /// One-line `key=value` record.
    pub fn describe(&self) -> String {
        format!(
            "id={} name={} category={} dim={} lower={:?} upper={:?} f_opt={:?} suite_seed={}",
            self.id,
            self.name,
            self.category,
            self.dimension,
            self.bounds.lower(),
            self.bounds.upper(),
            self.f_opt,
            self.suite_seed
        )
    }
}

fn transform(point: &[f64], shift: &[f64], rotation: &Rotation) -> Vec<f64> {
    let diff: Vec<f64> = point.iter().zip(shift).map(|(x, o)| x - o).collect();
    if rotation.is_identity() {
        diff
    } else {
        rotation.apply(&diff)
    }
}

/// Gaussian distance weights normalized to sum 1. A point sitting exactly on a
/// component's shift gets that component alone; if every weight underflows
/// the weights fall back to `1/k`.
fn composite_weights(point: &[f64], components: &[Component]) -> Vec<f64> {
    let d = point.len() as f64;
    let mut weights = Vec::with_capacity(components.len());
    for (i, c) in components.iter().enumerate() {
        let dist2: f64 = point
            .iter()
            .zip(&c.shift)
            .map(|(x, o)| (x - o).powi(2))
            .sum();
        if dist2 == 0.0 {
            let mut one_hot = vec![0.0; components.len()];
            one_hot[i] = 1.0;
            return one_hot;
        }
        weights.push((-dist2 / (2.0 * d * c.sigma * c.sigma)).exp() / dist2.sqrt());
    }
    let sum: f64 = weights.iter().sum();
    if sum > 0.0 && sum.is_finite() {
        weights.iter_mut().for_each(|w| *w /= sum);
    } else {
        let k = components.len() as f64;
        weights.iter_mut().for_each(|w| *w = 1.0 / k);
    }
    weights
}

/// Absolute gap between a fitness and the known optimum.
pub fn error_of(spec: &ObjectiveSpec, best_fitness: f64) -> f64 {
    (best_fitness - spec.f_opt).abs()
}

/// Evaluations used against a fixed budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvaluationCounter {
    used: u64,
    budget: u64,
}

impl EvaluationCounter {
    pub fn new(budget: u64) -> Self {
        Self { used: 0, budget }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn remaining(&self) -> u64 {
        self.budget - self.used
    }

    fn charge(&mut self) -> Result<()> {
        if self.used >= self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
            });
        }
        self.used += 1;
        Ok(())
    }
}

/// Splits `dimension` coordinates into contiguous blocks by proportion.
/// Blocks that would be empty are dropped.
fn hybrid_blocks(dimension: usize, parts: &[(BaseFunction, f64)]) -> Vec<HybridBlock> {
    let mut remaining = dimension;
    let mut blocks = Vec::new();
    for (i, &(base, share)) in parts.iter().enumerate() {
        let len = if i + 1 == parts.len() {
            remaining
        } else {
            ((share * dimension as f64).ceil() as usize).min(remaining)
        };
        remaining -= len;
        if len > 0 {
            blocks.push(HybridBlock { base, len });
        }
    }
    blocks
}

fn random_shift<R: Rng + ?Sized>(dimension: usize, rng: &mut R) -> Vec<f64> {
    (0..dimension)
        .map(|_| rng.random_range(-SHIFT_RANGE..SHIFT_RANGE))
        .collect()
}

/// Builds the ten-function emulated suite for one dimension.
///
/// | id | name       | category   |
/// |----|------------|------------|
/// | 1  | sphere     | unimodal   |
/// | 2  | bent_cigar | unimodal   |
/// | 3  | rastrigin  | multimodal |
/// | 4  | ackley     | multimodal |
/// | 5  | griewank   | multimodal |
/// | 6  | schwefel   | multimodal |
/// | 7  | hybrid_1   | hybrid     |
/// | 8  | hybrid_2   | hybrid     |
/// | 9  | composite_1| composite  |
/// | 10 | composite_2| composite  |
///
/// Function `id` has `f_opt = 100·id`. All randomness comes from `suite_seed`.
pub fn make_suite(suite_seed: u64, dimension: usize) -> Result<Vec<ObjectiveSpec>> {
    if dimension < 2 {
        return Err(Error::InvalidDimension(dimension));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(suite_seed);
    let mut suite = Vec::with_capacity(10);

    let bases = [
        BaseFunction::Sphere,
        BaseFunction::BentCigar,
        BaseFunction::Rastrigin,
        BaseFunction::Ackley,
        BaseFunction::Griewank,
        BaseFunction::Schwefel,
    ];
    for base in bases {
        let id = suite.len() as u32 + 1;
        let shift = random_shift(dimension, &mut rng);
        let rotation = Rotation::random(dimension, &mut rng);
        suite.push(ObjectiveSpec::from_base(
            id,
            base,
            shift,
            rotation,
            100.0 * id as f64,
        ));
    }

    let hybrids: [&[(BaseFunction, f64)]; 2] = [
        &[
            (BaseFunction::BentCigar, 0.2),
            (BaseFunction::Rastrigin, 0.4),
            (BaseFunction::Schwefel, 0.4),
        ],
        &[
            (BaseFunction::Griewank, 0.3),
            (BaseFunction::Ackley, 0.3),
            (BaseFunction::Rastrigin, 0.2),
            (BaseFunction::Sphere, 0.2),
        ],
    ];
    for (k, parts) in hybrids.iter().enumerate() {
        let id = suite.len() as u32 + 1;
        let bias = 100.0 * id as f64;
        suite.push(ObjectiveSpec {
            id,
            name: format!("hybrid_{}", k + 1),
            category: Category::Hybrid,
            dimension,
            bounds: SearchBounds::default(),
            shift: random_shift(dimension, &mut rng),
            rotation: Rotation::random(dimension, &mut rng),
            landscape: Landscape::Hybrid(hybrid_blocks(dimension, parts)),
            bias,
            f_opt: bias,
            suite_seed,
        });
    }

    let composites: [[(BaseFunction, f64, f64); 3]; 2] = [
        [
            (BaseFunction::Rastrigin, 10.0, 0.0),
            (BaseFunction::Griewank, 20.0, 100.0),
            (BaseFunction::Schwefel, 30.0, 200.0),
        ],
        [
            (BaseFunction::Ackley, 10.0, 0.0),
            (BaseFunction::Rastrigin, 20.0, 100.0),
            (BaseFunction::Griewank, 30.0, 200.0),
        ],
    ];
    for (k, parts) in composites.iter().enumerate() {
        let id = suite.len() as u32 + 1;
        let bias = 100.0 * id as f64;
        let components: Vec<Component> = parts
            .iter()
            .map(|&(base, sigma, component_bias)| Component {
                base,
                shift: random_shift(dimension, &mut rng),
                rotation: Rotation::random(dimension, &mut rng),
                sigma,
                bias: component_bias,
            })
            .collect();
        let best = components
            .iter()
            .min_by(|a, b| a.bias.total_cmp(&b.bias))
            .expect("composite has components");
        suite.push(ObjectiveSpec {
            id,
            name: format!("composite_{}", k + 1),
            category: Category::Composite,
            dimension,
            bounds: SearchBounds::default(),
            shift: best.shift.clone(),
            rotation: best.rotation.clone(),
            f_opt: bias + best.bias,
            landscape: Landscape::Composite(components),
            bias,
            suite_seed,
        });
    }

    for spec in suite.iter_mut() {
        spec.suite_seed = suite_seed;
    }
    Ok(suite)
}

/// One [`ObjectiveSpec::describe`] line per function.
pub fn describe_suite(suite: &[ObjectiveSpec]) -> String {
    suite.iter().map(|s| s.describe() + "\n").collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_values() {
        let spec = ObjectiveSpec::plain(BaseFunction::Sphere, 2);
        let mut counter = EvaluationCounter::new(10);
        assert_eq!(spec.evaluate(&[0.0, 0.0], &mut counter).unwrap(), 0.0);
        assert_eq!(spec.evaluate(&[1.0, 1.0], &mut counter).unwrap(), 2.0);
        assert_eq!(counter.used(), 2);
    }

    #[test]
    fn rastrigin_values() {
        let spec = ObjectiveSpec::plain(BaseFunction::Rastrigin, 3);
        assert_eq!(spec.value_at(&[0.0, 0.0, 0.0]), 0.0);

        // 0.5² − 10·cos(π) + 10, evaluated by hand.
        let spec = ObjectiveSpec::plain(BaseFunction::Rastrigin, 1);
        assert!((spec.value_at(&[0.5]) - 20.25).abs() < 1e-12);
    }

    #[test]
    fn dimension_mismatch_is_not_counted() {
        let spec = ObjectiveSpec::plain(BaseFunction::Sphere, 3);
        let mut counter = EvaluationCounter::new(5);
        let err = spec.evaluate(&[0.0, 0.0], &mut counter).unwrap_err();
        assert!(matches!(
            err,
            Error::DimensionMismatch {
                expected: 3,
                got: 2
            }
        ));
        assert_eq!(counter.used(), 0);
    }

    #[test]
    fn exhausted_budget_signals() {
        let spec = ObjectiveSpec::plain(BaseFunction::Sphere, 2);
        let mut counter = EvaluationCounter::new(1);
        spec.evaluate(&[1.0, 2.0], &mut counter).unwrap();
        let err = spec.evaluate(&[1.0, 2.0], &mut counter).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { budget: 1 }));
        assert_eq!(counter.used(), 1);
    }

    #[test]
    fn error_of_is_absolute_gap() {
        let mut spec = ObjectiveSpec::plain(BaseFunction::Sphere, 2);
        assert_eq!(error_of(&spec, 3.5), 3.5);
        spec.f_opt = 100.0;
        assert_eq!(error_of(&spec, 100.0), 0.0);
        spec.f_opt = -50.0;
        assert_eq!(error_of(&spec, -49.0), 1.0);
    }

    #[test]
    fn bases_vanish_at_origin() {
        for base in [
            BaseFunction::Sphere,
            BaseFunction::BentCigar,
            BaseFunction::Rastrigin,
            BaseFunction::Ackley,
            BaseFunction::Griewank,
            BaseFunction::Schwefel,
        ] {
            for d in [1, 2, 7, 30] {
                assert_eq!(base.value(&vec![0.0; d]), 0.0, "{} d={d}", base.name());
            }
        }
    }

    #[test]
    fn suite_rejects_small_dimension() {
        assert!(matches!(make_suite(0, 1), Err(Error::InvalidDimension(1))));
        assert!(make_suite(0, 2).is_ok());
    }

    #[test]
    fn suite_layout() {
        let suite = make_suite(0, 10).unwrap();
        assert_eq!(suite.len(), 10);
        let count = |c| suite.iter().filter(|s| s.category == c).count();
        assert_eq!(count(Category::Unimodal), 2);
        assert_eq!(count(Category::Multimodal), 4);
        assert_eq!(count(Category::Hybrid), 2);
        assert_eq!(count(Category::Composite), 2);
        for spec in &suite {
            assert!(spec.shift.iter().all(|&o| o > -100.0 && o < 100.0));
            assert!(spec.rotation.is_orthonormal(1e-9));
            assert_eq!(spec.f_opt, 100.0 * spec.id as f64 + 0.0);
        }
    }

    #[test]
    fn suite_is_seeded() {
        let a = make_suite(0, 10).unwrap();
        let b = make_suite(0, 10).unwrap();
        let c = make_suite(1, 10).unwrap();
        for (x, y) in a.iter().zip(&b) {
            let xs: Vec<u64> = x.shift.iter().map(|v| v.to_bits()).collect();
            let ys: Vec<u64> = y.shift.iter().map(|v| v.to_bits()).collect();
            assert_eq!(xs, ys);
        }
        assert!(a.iter().zip(&c).any(|(x, y)| x.shift != y.shift));
    }

    #[test]
    fn hybrid_blocks_cover_dimension() {
        let parts = [
            (BaseFunction::Griewank, 0.3),
            (BaseFunction::Ackley, 0.3),
            (BaseFunction::Rastrigin, 0.2),
            (BaseFunction::Sphere, 0.2),
        ];
        let lens: Vec<usize> = hybrid_blocks(10, &parts).iter().map(|b| b.len).collect();
        assert_eq!(lens, vec![3, 3, 2, 2]);
        let lens: Vec<usize> = hybrid_blocks(2, &parts).iter().map(|b| b.len).collect();
        assert_eq!(lens, vec![1, 1]);
    }

    #[test]
    fn composite_is_exact_at_best_component() {
        for d in [2, 10, 30] {
            for spec in make_suite(3, d).unwrap() {
                if spec.category == Category::Composite {
                    assert_eq!(spec.value_at(&spec.shift), spec.f_opt);
                }
            }
        }
    }

    #[test]
    fn describe_lists_every_function() {
        let suite = make_suite(4, 5).unwrap();
        let text = describe_suite(&suite);
        assert_eq!(text.lines().count(), 10);
        assert!(text
            .lines()
            .next()
            .unwrap()
            .starts_with("id=1 name=sphere category=unimodal dim=5"));
        assert!(text.contains("suite_seed=4"));
    }
}
