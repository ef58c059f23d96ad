//! Orthogonal arrays and orthogonal-array swarm initialization.
//!
//! Arrays come from the classical basic-column / interaction-column
//! construction for a prime level count `α`: with `J` basic columns the array
//! has `β = α^J` rows and `δ = (α^J − 1)/(α − 1)` columns, and every pair of
//! columns contains each ordered pair of levels exactly `β/α²` times.
//!
//! Levels are mapped onto the box with the shifted linear form
//! `x = (a − 1)·(ub − lb)/(α − 1) + lb`, which sends level 1 to `lb` and level
//! `α` to `ub`. (The unshifted form `a·step + lb` would overshoot the upper bound.)

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::objective::{EvaluationCounter, ObjectiveSpec, SearchBounds};

pub const DEFAULT_ROW_CAP: usize = 4096;
pub const DEFAULT_LEVELS: u32 = 2;

/// A `β × δ` array over the levels `1..=α`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalArray {
    levels: u32,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl OrthogonalArray {
    /// Wraps raw rows. No balance check is made; see [`verify_oa`].
    pub fn from_rows(levels: u32, rows: &[Vec<u32>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self {
            levels,
            rows: rows.len(),
            cols,
            entries: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn levels(&self) -> u32 {
        self.levels
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn strength(&self) -> u32 {
        2
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.entries[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[u32] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[u32]> {
        self.entries.chunks(self.cols.max(1)).take(self.rows)
    }
}

impl fmt::Display for OrthogonalArray {
    /// Rows of space-separated levels.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.iter_rows() {
            let line: Vec<String> = row.iter().map(u32::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2
        && (2..)
            .take_while(|k| k * k <= n)
            .all(|k| !n.is_multiple_of(k))
}

pub fn construct_oa(levels: u32, min_factors: usize) -> Result<OrthogonalArray> {
    construct_oa_with_cap(levels, min_factors, DEFAULT_ROW_CAP)
}

/// Smallest array of the family with at least `min_factors` columns.
pub fn construct_oa_with_cap(
    levels: u32,
    min_factors: usize,
    row_cap: usize,
) -> Result<OrthogonalArray> {
    if !is_prime(levels) {
        return Err(Error::UnsupportedLevelCount(levels));
    }
    let min_factors = min_factors.max(1);
    let alpha = levels as u64;

    let mut basic = 1u32;
    let rows = loop {
        let rows = alpha.checked_pow(basic).ok_or(Error::TooManyRows {
            rows: u64::MAX,
            cap: row_cap,
        })?;
        if rows > row_cap as u64 {
            return Err(Error::TooManyRows { rows, cap: row_cap });
        }
        if ((rows - 1) / (alpha - 1)) as usize >= min_factors {
            break rows as usize;
        }
        basic += 1;
    };
    let cols = (rows - 1) / (levels as usize - 1);
    let a = levels as usize;

    // Zero-based levels while building; shifted to 1..=α at the end.
    let mut entries = vec![0u32; rows * cols];
    let basic_col = |k: u32| (a.pow(k - 1) - 1) / (a - 1);
    for k in 1..=basic {
        let col = basic_col(k);
        let period = a.pow(basic - k);
        for i in 0..rows {
            entries[i * cols + col] = ((i / period) % a) as u32;
        }
    }
    for k in 2..=basic {
        let j = basic_col(k);
        for s in 0..j {
            for t in 1..a {
                let col = j + s * (a - 1) + t;
                for i in 0..rows {
                    let v =
                        (entries[i * cols + s] as usize * t + entries[i * cols + j] as usize) % a;
                    entries[i * cols + col] = v as u32;
                }
            }
        }
    }
    entries.iter_mut().for_each(|e| *e += 1);

    Ok(OrthogonalArray {
        levels,
        rows,
        cols,
        entries,
    })
}

/// Exhaustive strength-2 balance check.
///
/// Every column must hold each level `β/α` times, and every pair of distinct
/// columns must hold each ordered pair of levels `β/α²` times. Entries
/// outside `1..=α` or row counts that do not divide evenly fail the check.
pub fn verify_oa(oa: &OrthogonalArray) -> bool {
    let a = oa.levels as usize;
    if a < 2 || oa.rows == 0 || oa.entries.len() != oa.rows * oa.cols {
        return false;
    }
    if oa.entries.iter().any(|&e| e == 0 || e as usize > a) {
        return false;
    }
    if !oa.rows.is_multiple_of(a) {
        return false;
    }
    let per_level = oa.rows / a;
    for c in 0..oa.cols {
        let mut counts = vec![0usize; a];
        for r in 0..oa.rows {
            counts[oa.get(r, c) as usize - 1] += 1;
        }
        if counts.iter().any(|&n| n != per_level) {
            return false;
        }
    }
    if oa.cols < 2 {
        return true;
    }
    if !oa.rows.is_multiple_of(a * a) {
        return false;
    }
    let per_pair = oa.rows / (a * a);
    for c1 in 0..oa.cols {
        for c2 in c1 + 1..oa.cols {
            let mut counts = vec![0usize; a * a];
            for r in 0..oa.rows {
                let u = oa.get(r, c1) as usize - 1;
                let v = oa.get(r, c2) as usize - 1;
                counts[u * a + v] += 1;
            }
            if counts.iter().any(|&n| n != per_pair) {
                return false;
            }
        }
    }
    true
}

/// Maps one level onto the box. The endpoints are assigned, not computed.
pub fn map_level(level: u32, levels: u32, bounds: SearchBounds) -> f64 {
    if level <= 1 {
        bounds.lower()
    } else if level >= levels {
        bounds.upper()
    } else {
        let step = bounds.width() / (levels - 1) as f64;
        ((level - 1) as f64 * step + bounds.lower()).clamp(bounds.lower(), bounds.upper())
    }
}

/// Maps every row (first `dimension` columns) to a point in the box.
pub fn map_to_search_space(
    oa: &OrthogonalArray,
    bounds: SearchBounds,
    dimension: usize,
) -> Result<Vec<Vec<f64>>> {
    if oa.cols < dimension {
        return Err(Error::InsufficientFactors {
            factors: oa.cols,
            dimension,
        });
    }
    Ok(oa
        .iter_rows()
        .map(|row| {
            row[..dimension]
                .iter()
                .map(|&a| map_level(a, oa.levels, bounds))
                .collect()
        })
        .collect())
}

/// Initial positions with their evaluated fitness.
#[derive(Debug, Clone, PartialEq)]
pub struct InitialSwarm {
    pub positions: Vec<Vec<f64>>,
    pub fitness: Vec<f64>,
    /// Rows of the orthogonal array used (0 for purely random initialization).
    pub oa_rows: usize,
    /// Positions that came from the array (the rest are random fills).
    pub from_array: usize,
}

/// Evaluations needed to initialize `n` particles from an array with `oa_rows` rows.
pub fn initialization_cost(n: usize, oa_rows: usize) -> u64 {
    n.max(oa_rows) as u64
}

fn check_population(n: usize) -> Result<()> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::InvalidPopulation(n));
    }
    Ok(())
}

/// Seeds `n` particles from an orthogonal array with `levels` levels.
///
/// With `β ≥ n` all `β` mapped rows are evaluated and the `n` fittest are
/// kept (ties to the lower row, original row order preserved). With `β < n`
/// all rows are kept and the remaining `n − β` slots are filled uniformly at
/// random. The budget must cover the whole initialization up front.
pub fn build_initial_swarm<R: Rng + ?Sized>(
    n: usize,
    spec: &ObjectiveSpec,
    levels: u32,
    counter: &mut EvaluationCounter,
    rng: &mut R,
) -> Result<InitialSwarm> {
    check_population(n)?;
    let oa = construct_oa(levels, spec.dimension)?;
    let mut positions = map_to_search_space(&oa, spec.bounds, spec.dimension)?;
    if counter.remaining() < initialization_cost(n, oa.rows()) {
        return Err(Error::BudgetExceeded {
            budget: counter.budget(),
        });
    }

    if positions.len() >= n {
        let fitness = positions
            .iter()
            .map(|p| spec.evaluate(p, counter))
            .collect::<Result<Vec<_>>>()?;
        let mut order: Vec<usize> = (0..positions.len()).collect();
        order.sort_by(|&i, &j| fitness[i].total_cmp(&fitness[j]).then(i.cmp(&j)));
        let mut keep = order[..n].to_vec();
        keep.sort_unstable();
        let kept_positions = keep.iter().map(|&i| positions[i].clone()).collect();
        let kept_fitness = keep.iter().map(|&i| fitness[i]).collect();
        return Ok(InitialSwarm {
            positions: kept_positions,
            fitness: kept_fitness,
            oa_rows: oa.rows(),
            from_array: n,
        });
    }

    let from_array = positions.len();
    while positions.len() < n {
        positions.push(spec.bounds.sample(spec.dimension, rng));
    }
    let fitness = positions
        .iter()
        .map(|p| spec.evaluate(p, counter))
        .collect::<Result<Vec<_>>>()?;
    Ok(InitialSwarm {
        positions,
        fitness,
        oa_rows: oa.rows(),
        from_array,
    })
}

/// Uniform random initialization of `n` particles.
pub fn random_swarm<R: Rng + ?Sized>(
    n: usize,
    spec: &ObjectiveSpec,
    counter: &mut EvaluationCounter,
    rng: &mut R,
) -> Result<InitialSwarm> {
    check_population(n)?;
    if counter.remaining() < n as u64 {
        return Err(Error::BudgetExceeded {
            budget: counter.budget(),
        });
    }
    let positions: Vec<Vec<f64>> = (0..n)
        .map(|_| spec.bounds.sample(spec.dimension, rng))
        .collect();
    let fitness = positions
        .iter()
        .map(|p| spec.evaluate(p, counter))
        .collect::<Result<Vec<_>>>()?;
    Ok(InitialSwarm {
        positions,
        fitness,
        oa_rows: 0,
        from_array: 0,
    })
}
