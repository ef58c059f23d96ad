//! Multi-run experiment protocol: paired seeds, per-run convergence CSVs and
//! summary statistics over best-of-run errors.
//!
//! Output layout under the output directory:
//!
//! ```text
//! suite_d{dim}.txt                              one line per benchmark function
//! {algo}/d{dim}/F{id:02}_{name}/run{r:02}.csv  one convergence trace per run
//! summary.txt                                   one line per (function, dim, algo)
//! ```
//!
//! Data files hold no timestamps, so identical flags give identical bytes.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::objective::{describe_suite, make_suite, ObjectiveSpec};
use crate::optimizer::{
    run, run_seed, Ablations, Algorithm, OptimizerConfig, RunRecord, DEFAULT_POPULATION,
};
use crate::ortho_init::DEFAULT_LEVELS;
use crate::swarm::PsoParams;

pub const CSV_HEADER: &str = "iteration,evals,best_error,diversity,exploration_pct";
pub const ARCHIVE_COLUMNS: &str = "phi_size,psi_size,chi_size,phi_best,psi_best,chi_best";
pub const DEFAULT_RUNS: usize = 25;
pub const DEFAULT_DIMENSIONS: [usize; 3] = [10, 30, 50];

/// An algorithm plus its ablation switches, e.g. `opsom`, `pso`, `opsom-no-oa`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlgorithmVariant {
    pub algorithm: Algorithm,
    pub ablations: Ablations,
}

impl AlgorithmVariant {
    pub const OPSOM: Self = Self {
        algorithm: Algorithm::Opsom,
        ablations: Ablations {
            no_oa: false,
            no_archives: false,
            no_mutation: false,
            fixed_inertia: false,
        },
    };

    pub const PSO: Self = Self {
        algorithm: Algorithm::Pso,
        ablations: Ablations {
            no_oa: false,
            no_archives: false,
            no_mutation: false,
            fixed_inertia: false,
        },
    };

    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for AlgorithmVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.algorithm {
            Algorithm::Pso => f.write_str("pso"),
            Algorithm::Opsom => {
                f.write_str("opsom")?;
                let a = self.ablations;
                for (on, suffix) in [
                    (a.no_oa, "-no-oa"),
                    (a.no_archives, "-no-archives"),
                    (a.no_mutation, "-no-mutation"),
                    (a.fixed_inertia, "-fixed-inertia"),
                ] {
                    if on {
                        f.write_str(suffix)?;
                    }
                }
                Ok(())
            }
        }
    }
}

type SetFlag = fn(&mut Ablations);

impl FromStr for AlgorithmVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        if s == "pso" {
            return Ok(Self::PSO);
        }
        let rest = s
            .strip_prefix("opsom")
            .ok_or_else(|| Error::InvalidConfig(format!("unknown algorithm `{s}`")))?;
        let mut variant = Self::OPSOM;
        let mut rest = rest;
        while !rest.is_empty() {
            let flags: [(&str, SetFlag); 4] = [
                ("-no-oa", |a| a.no_oa = true),
                ("-no-archives", |a| a.no_archives = true),
                ("-no-mutation", |a| a.no_mutation = true),
                ("-fixed-inertia", |a| a.fixed_inertia = true),
            ];
            let (suffix, set) = flags
                .iter()
                .find(|(suffix, _)| rest.starts_with(suffix))
                .ok_or_else(|| Error::InvalidConfig(format!("unknown algorithm `{s}`")))?;
            set(&mut variant.ablations);
            rest = &rest[suffix.len()..];
        }
        Ok(variant)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub suite_seed: u64,
    pub dimensions: Vec<usize>,
    pub runs: usize,
    pub base_seed: u64,
    pub algorithms: Vec<AlgorithmVariant>,
    pub population: usize,
    /// `None` means `10⁴·d` per run.
    pub budget: Option<u64>,
    pub oa_levels: u32,
    pub pso_params: PsoParams,
    /// Restrict to these function ids; `None` runs the whole suite.
    pub functions: Option<Vec<u32>>,
    /// Worker threads; results do not depend on it.
    pub jobs: usize,
    /// Append per-archive sizes and best fitness to OPSO-m traces.
    pub archive_log: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            suite_seed: 0,
            dimensions: DEFAULT_DIMENSIONS.to_vec(),
            runs: DEFAULT_RUNS,
            base_seed: 0,
            algorithms: vec![AlgorithmVariant::OPSOM],
            population: DEFAULT_POPULATION,
            budget: None,
            oa_levels: DEFAULT_LEVELS,
            pso_params: PsoParams::default(),
            functions: None,
            jobs: 1,
            archive_log: false,
        }
    }
}

impl ExperimentConfig {
    pub fn optimizer_config(&self, variant: AlgorithmVariant, seed: u64) -> OptimizerConfig {
        OptimizerConfig {
            algorithm: variant.algorithm,
            population: self.population,
            budget: self.budget,
            oa_levels: self.oa_levels,
            pso_params: self.pso_params,
            ablations: variant.ablations,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::InvalidConfig("at least one run is required".into()));
        }
        if self.algorithms.is_empty() {
            return Err(Error::InvalidConfig("no algorithm selected".into()));
        }
        if self.dimensions.is_empty() {
            return Err(Error::InvalidConfig("no dimension selected".into()));
        }
        for &d in &self.dimensions {
            if d < 2 {
                return Err(Error::InvalidDimension(d));
            }
            for &variant in &self.algorithms {
                self.optimizer_config(variant, 0).validate(d)?;
            }
        }
        Ok(())
    }
}

/// Order statistics and moments of final best-of-run errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryStats {
    pub best: f64,
    pub worst: f64,
    pub median: f64,
    pub mean: f64,
    /// Sample standard deviation (`n − 1` denominator; 0 for a single run).
    pub std: f64,
    pub runs: usize,
}

pub fn summarize(errors: &[f64]) -> Result<SummaryStats> {
    if errors.is_empty() {
        return Err(Error::MissingData("summary cell".into()));
    }
    let mut sorted = errors.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    };
    let mean = sorted.iter().sum::<f64>() / n as f64;
    let std = if n > 1 {
        (sorted.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    Ok(SummaryStats {
        best: sorted[0],
        worst: sorted[n - 1],
        median,
        mean,
        std,
        runs: n,
    })
}

/// All runs of one algorithm on one function at one dimension.
#[derive(Debug, Clone)]
pub struct Cell {
    pub spec: ObjectiveSpec,
    pub variant: AlgorithmVariant,
    pub budget: u64,
    /// Indexed by run; run `r` used seed `run_seed(base_seed, r)`.
    pub records: Vec<RunRecord>,
}

impl Cell {
    pub fn final_errors(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.best_error).collect()
    }

    pub fn summary(&self) -> Result<SummaryStats> {
        summarize(&self.final_errors()).map_err(|_| {
            Error::MissingData(format!(
                "F{:02} d={} {}",
                self.spec.id, self.spec.dimension, self.variant
            ))
        })
    }

    pub fn median_error(&self) -> Result<f64> {
        Ok(self.summary()?.median)
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentResults {
    pub config: ExperimentConfig,
    pub suites: Vec<(usize, Vec<ObjectiveSpec>)>,
    pub cells: Vec<Cell>,
}

impl ExperimentResults {
    pub fn cell(
        &self,
        function_id: u32,
        dimension: usize,
        variant: AlgorithmVariant,
    ) -> Option<&Cell> {
        self.cells.iter().find(|c| {
            c.spec.id == function_id && c.spec.dimension == dimension && c.variant == variant
        })
    }
}

/// Runs every (dimension, function, algorithm, run) combination.
///
/// Run `r` of every algorithm uses the same seed and the same function
/// instance, so differences between algorithms are algorithmic only.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResults> {
    config.validate()?;
    let mut suites = Vec::new();
    let mut tasks = Vec::new();
    for &d in &config.dimensions {
        let suite: Vec<ObjectiveSpec> = make_suite(config.suite_seed, d)?
            .into_iter()
            .filter(|s| {
                config
                    .functions
                    .as_ref()
                    .is_none_or(|ids| ids.contains(&s.id))
            })
            .collect();
        if suite.is_empty() {
            return Err(Error::InvalidConfig(
                "function filter matches nothing".into(),
            ));
        }
        for (f, _) in suite.iter().enumerate() {
            for (a, _) in config.algorithms.iter().enumerate() {
                for r in 0..config.runs {
                    tasks.push((suites.len(), f, a, r));
                }
            }
        }
        suites.push((d, suite));
    }

    let execute = |&(s, f, a, r): &(usize, usize, usize, usize)| {
        let spec = &suites[s].1[f];
        let seed = run_seed(config.base_seed, r as u64);
        run(&config.optimizer_config(config.algorithms[a], seed), spec)
    };
    let records: Vec<RunRecord> = if config.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .map_err(|e| Error::InvalidConfig(e.to_string()))?;
        pool.install(|| tasks.par_iter().map(execute).collect::<Result<Vec<_>>>())?
    } else {
        tasks.iter().map(execute).collect::<Result<Vec<_>>>()?
    };

    let mut cells: Vec<Cell> = Vec::new();
    for (&(s, f, a, _), record) in tasks.iter().zip(records) {
        let spec = &suites[s].1[f];
        let variant = config.algorithms[a];
        match cells.last_mut() {
            Some(cell)
                if cell.spec.id == spec.id
                    && cell.spec.dimension == spec.dimension
                    && cell.variant == variant =>
            {
                cell.records.push(record)
            }
            _ => cells.push(Cell {
                spec: spec.clone(),
                variant,
                budget: config
                    .optimizer_config(variant, 0)
                    .budget_for(spec.dimension),
                records: vec![record],
            }),
        }
    }

    Ok(ExperimentResults {
        config: config.clone(),
        suites,
        cells,
    })
}

/// Convergence trace as CSV text.
pub fn convergence_csv(record: &RunRecord, archive_columns: bool) -> String {
    let mut out = String::from(CSV_HEADER);
    if archive_columns {
        out.push(',');
        out.push_str(ARCHIVE_COLUMNS);
    }
    out.push('\n');
    for (row, pct) in record.rows.iter().zip(record.exploration()) {
        out.push_str(&format!(
            "{},{},{:?},{:?},{:?}",
            row.iteration, row.evals, row.best_error, row.diversity, pct
        ));
        if archive_columns {
            match row.archives {
                Some(a) => out.push_str(&format!(
                    ",{},{},{},{:?},{:?},{:?}",
                    a.phi_len, a.psi_len, a.chi_len, a.phi_best, a.psi_best, a.chi_best
                )),
                None => out.push_str(",,,,,,"),
            }
        }
        out.push('\n');
    }
    out
}

pub fn summary_line(cell: &Cell) -> Result<String> {
    let s = cell.summary()?;
    Ok(format!(
        "function=F{:02} name={} category={} dim={} algo={} runs={} budget={} best={:?} worst={:?} median={:?} mean={:?} std={:?}",
        cell.spec.id,
        cell.spec.name,
        cell.spec.category,
        cell.spec.dimension,
        cell.variant,
        s.runs,
        cell.budget,
        s.best,
        s.worst,
        s.median,
        s.mean,
        s.std
    ))
}

pub fn summary_text(results: &ExperimentResults) -> Result<String> {
    let mut out = String::new();
    for cell in &results.cells {
        out.push_str(&summary_line(cell)?);
        out.push('\n');
    }
    Ok(out)
}

pub fn run_csv_path(out_dir: &Path, cell: &Cell, run_index: usize) -> PathBuf {
    out_dir
        .join(cell.variant.label())
        .join(format!("d{}", cell.spec.dimension))
        .join(format!("F{:02}_{}", cell.spec.id, cell.spec.name))
        .join(format!("run{run_index:02}.csv"))
}

/// Writes suite descriptions, every convergence CSV and `summary.txt`.
/// Returns the number of CSV files written.
pub fn write_outputs(results: &ExperimentResults, out_dir: &Path) -> Result<usize> {
    fs::create_dir_all(out_dir)?;
    for (d, suite) in &results.suites {
        fs::write(
            out_dir.join(format!("suite_d{d}.txt")),
            describe_suite(suite),
        )?;
    }
    let mut written = 0;
    for cell in &results.cells {
        let archive_columns =
            results.config.archive_log && cell.variant.algorithm == Algorithm::Opsom;
        for (r, record) in cell.records.iter().enumerate() {
            let path = run_csv_path(out_dir, cell, r);
            if let Some(parent) = path.parent() {
                fs::create_dir_all(parent)?;
            }
            let mut file = fs::File::create(&path)?;
            file.write_all(convergence_csv(record, archive_columns).as_bytes())?;
            written += 1;
        }
    }
    fs::write(out_dir.join("summary.txt"), summary_text(results)?)?;
    Ok(written)
}
