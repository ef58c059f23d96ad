//! The OPSO-m and baseline PSO run loops.
//!
//! One OPSO-m iteration:
//!
//! 1. rank the swarm by current fitness; best half is elite, worst half regular;
//! 2. each regular particle samples one entry per archive, learns from the
//!    fittest of the three and moves (one evaluation each);
//! 3. each elite particle is mutated against a snapshot of the elite
//!    positions (one evaluation each);
//! 4. personal/global bests are refreshed, then `phi` is rebuilt and the
//!    improved personal/global bests are pushed to `psi`/`chi`.
//!
//! Every iteration costs exactly `n` evaluations and the loop runs while at
//! least `n` evaluations remain, so a run ends with between `budget − n + 1`
//! and `budget` evaluations used.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::archives::{ArchiveEntry, ArchiveSet};
use crate::error::{Error, Result};
use crate::learning::{regular_velocity_update, select_scheme, Memory, Scheme};
use crate::mutation::{elite_mutate, MutationDraw};
use crate::objective::{error_of, EvaluationCounter, ObjectiveSpec};
use crate::ortho_init::{build_initial_swarm, construct_oa, random_swarm, DEFAULT_LEVELS};
use crate::swarm::{
    handle_bounds, pso_step, pso_velocity, sort_and_split, unit_vector, update_bests, PsoParams,
    SwarmState,
};

pub const DEFAULT_POPULATION: usize = 40;
pub const BUDGET_PER_DIMENSION: u64 = 10_000;

/// Odd multiplier used to derive per-run seeds.
pub const RUN_SEED_MULTIPLIER: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Opsom,
    Pso,
}

/// Components of OPSO-m that can be switched off.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Ablations {
    /// Uniform random initialization instead of the orthogonal array.
    pub no_oa: bool,
    /// Regular particles use the inertia-weight PSO update instead of archive learning.
    pub no_archives: bool,
    /// Elites follow the regular update instead of mutating.
    pub no_mutation: bool,
    /// Inertia weight `ω` replaces the stochastic memory factor in archive learning.
    pub fixed_inertia: bool,
}

impl Ablations {
    pub fn any(&self) -> bool {
        self.no_oa || self.no_archives || self.no_mutation || self.fixed_inertia
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    pub algorithm: Algorithm,
    pub population: usize,
    /// Evaluation budget; `None` means `10⁴·d`.
    pub budget: Option<u64>,
    pub oa_levels: u32,
    pub pso_params: PsoParams,
    pub ablations: Ablations,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            algorithm: Algorithm::Opsom,
            population: DEFAULT_POPULATION,
            budget: None,
            oa_levels: DEFAULT_LEVELS,
            pso_params: PsoParams::default(),
            ablations: Ablations::default(),
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn budget_for(&self, dimension: usize) -> u64 {
        self.budget
            .unwrap_or(BUDGET_PER_DIMENSION * dimension as u64)
    }

    pub fn uses_orthogonal_array(&self) -> bool {
        self.algorithm == Algorithm::Opsom && !self.ablations.no_oa
    }

    /// Smallest budget accepted for `dimension`: `n + β` with the orthogonal
    /// array, `n` otherwise.
    pub fn minimum_budget(&self, dimension: usize) -> Result<u64> {
        let n = self.population as u64;
        if self.uses_orthogonal_array() {
            let oa = construct_oa(self.oa_levels, dimension)?;
            Ok(n + oa.rows() as u64)
        } else {
            Ok(n)
        }
    }

    pub fn validate(&self, dimension: usize) -> Result<()> {
        if self.population < 6 || !self.population.is_multiple_of(2) {
            return Err(Error::InvalidPopulation(self.population));
        }
        self.pso_params.validate()?;
        let budget = self.budget_for(dimension);
        let minimum = self.minimum_budget(dimension)?;
        if budget < minimum {
            return Err(Error::InvalidConfig(format!(
                "budget {budget} is below the {minimum} evaluations needed to initialize"
            )));
        }
        Ok(())
    }
}

/// Per-archive sizes and best fitness after an iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArchiveStats {
    pub phi_len: usize,
    pub psi_len: usize,
    pub chi_len: usize,
    pub phi_best: f64,
    pub psi_best: f64,
    pub chi_best: f64,
}

impl ArchiveStats {
    fn of(archives: &ArchiveSet) -> Self {
        let best = |a: &[ArchiveEntry]| a.iter().map(|e| e.fitness).fold(f64::INFINITY, f64::min);
        Self {
            phi_len: archives.phi().len(),
            psi_len: archives.psi().len(),
            chi_len: archives.chi().len(),
            phi_best: best(archives.phi()),
            psi_best: best(archives.psi()),
            chi_best: best(archives.chi()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationRow {
    /// 0 is the initialized swarm.
    pub iteration: u64,
    pub evals: u64,
    pub best_error: f64,
    pub diversity: f64,
    pub archives: Option<ArchiveStats>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub rows: Vec<IterationRow>,
    pub best_error: f64,
    pub best_fitness: f64,
    pub best_position: Vec<f64>,
    pub evaluations: u64,
    /// Evaluations spent on initialization.
    pub init_evaluations: u64,
    pub wall_time: f64,
}

impl RunRecord {
    /// Exploration percentage per row.
    pub fn exploration(&self) -> Vec<f64> {
        let trace: Vec<f64> = self.rows.iter().map(|r| r.diversity).collect();
        exploration_ratio(&trace)
    }
}

/// Mean Euclidean distance of the particles from their centroid.
pub fn diversity(state: &SwarmState) -> f64 {
    let positions: Vec<&[f64]> = state
        .particles
        .iter()
        .map(|p| p.position.as_slice())
        .collect();
    diversity_of(&positions)
}

pub fn diversity_of<P: AsRef<[f64]>>(points: &[P]) -> f64 {
    if points.is_empty() {
        return 0.0;
    }
    let n = points.len() as f64;
    let d = points[0].as_ref().len();
    let mut centroid = vec![0.0; d];
    for p in points {
        for (c, x) in centroid.iter_mut().zip(p.as_ref()) {
            *c += x;
        }
    }
    centroid.iter_mut().for_each(|c| *c /= n);
    points
        .iter()
        .map(|p| {
            p.as_ref()
                .iter()
                .zip(&centroid)
                .map(|(x, c)| (x - c).powi(2))
                .sum::<f64>()
                .sqrt()
        })
        .sum::<f64>()
        / n
}

/// `100·D(t)/max D` for each entry; an all-zero trace is 0% throughout.
pub fn exploration_ratio(trace: &[f64]) -> Vec<f64> {
    let max = trace.iter().copied().fold(0.0, f64::max);
    trace
        .iter()
        .map(|&d| if max > 0.0 { 100.0 * (d / max) } else { 0.0 })
        .collect()
}

/// Seed for run `run_index` of an experiment.
pub fn run_seed(base_seed: u64, run_index: u64) -> u64 {
    base_seed ^ run_index.wrapping_mul(RUN_SEED_MULTIPLIER)
}

/// Read-only view handed to a [`RunObserver`] after initialization and after every iteration.
pub struct IterationView<'a> {
    pub iteration: u64,
    pub state: &'a SwarmState,
    /// `None` for baseline PSO and when archives are ablated.
    pub archives: Option<&'a ArchiveSet>,
    /// Elite particle indices in rank order (empty at initialization and for PSO).
    pub elite: &'a [usize],
    pub regular: &'a [usize],
    pub mutations: &'a [MutationDraw],
    pub schemes: &'a [Scheme],
    pub counter: &'a EvaluationCounter,
}

pub trait RunObserver {
    fn on_iteration(&mut self, view: &IterationView<'_>);
}

impl RunObserver for () {
    fn on_iteration(&mut self, _view: &IterationView<'_>) {}
}

impl<F: FnMut(&IterationView<'_>)> RunObserver for F {
    fn on_iteration(&mut self, view: &IterationView<'_>) {
        self(view)
    }
}

/// Runs whichever algorithm `config` names.
pub fn run(config: &OptimizerConfig, spec: &ObjectiveSpec) -> Result<RunRecord> {
    match config.algorithm {
        Algorithm::Opsom => run_opsom(config, spec),
        Algorithm::Pso => run_pso(config, spec),
    }
}

pub fn run_opsom(config: &OptimizerConfig, spec: &ObjectiveSpec) -> Result<RunRecord> {
    run_opsom_observed(config, spec, &mut ())
}

pub fn run_pso(config: &OptimizerConfig, spec: &ObjectiveSpec) -> Result<RunRecord> {
    run_pso_observed(config, spec, &mut ())
}

fn row(
    iteration: u64,
    counter: &EvaluationCounter,
    spec: &ObjectiveSpec,
    state: &SwarmState,
    archives: Option<&ArchiveSet>,
) -> IterationRow {
    IterationRow {
        iteration,
        evals: counter.used(),
        best_error: error_of(spec, state.gbest_fitness),
        diversity: diversity(state),
        archives: archives.map(ArchiveStats::of),
    }
}

fn finish(
    rows: Vec<IterationRow>,
    state: &SwarmState,
    spec: &ObjectiveSpec,
    counter: &EvaluationCounter,
    init_evaluations: u64,
    started: Instant,
) -> RunRecord {
    RunRecord {
        rows,
        best_error: error_of(spec, state.gbest_fitness),
        best_fitness: state.gbest_fitness,
        best_position: state.gbest_position.clone(),
        evaluations: counter.used(),
        init_evaluations,
        wall_time: started.elapsed().as_secs_f64(),
    }
}

pub fn run_opsom_observed<O: RunObserver + ?Sized>(
    config: &OptimizerConfig,
    spec: &ObjectiveSpec,
    observer: &mut O,
) -> Result<RunRecord> {
    let started = Instant::now();
    config.validate(spec.dimension)?;
    let n = config.population;
    let ablations = config.ablations;
    let params = config.pso_params;
    let v_max = params.v_max(spec.bounds);
    let memory = if ablations.fixed_inertia {
        Memory::Inertia(params.inertia)
    } else {
        Memory::Stochastic
    };

    let mut counter = EvaluationCounter::new(config.budget_for(spec.dimension));
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let init = if ablations.no_oa {
        random_swarm(n, spec, &mut counter, &mut rng)?
    } else {
        build_initial_swarm(n, spec, config.oa_levels, &mut counter, &mut rng)?
    };
    let init_evaluations = counter.used();
    let mut state = SwarmState::new(init.positions, init.fitness);
    let mut archives = (!ablations.no_archives).then(|| ArchiveSet::seeded(&state));

    let mut rows = vec![row(0, &counter, spec, &state, archives.as_ref())];
    observer.on_iteration(&IterationView {
        iteration: 0,
        state: &state,
        archives: archives.as_ref(),
        elite: &[],
        regular: &[],
        mutations: &[],
        schemes: &[],
        counter: &counter,
    });

    let mut mutations = Vec::with_capacity(n / 2);
    let mut schemes = Vec::with_capacity(n);
    while counter.remaining() >= n as u64 {
        mutations.clear();
        schemes.clear();
        let (elite, regular) = sort_and_split(&state)?;
        let gbest = state.gbest_position.clone();
        let elite_snapshot: Vec<Vec<f64>> = elite
            .iter()
            .map(|&i| state.particles[i].position.clone())
            .collect();

        // Without mutation every particle learns, swept in index order.
        let learners: Vec<usize> = if ablations.no_mutation {
            (0..n).collect()
        } else {
            regular.clone()
        };
        for &i in &learners {
            let p = &mut state.particles[i];
            p.velocity = match &archives {
                Some(archives) => {
                    let reps = archives.sample_representatives(&mut rng)?;
                    let choice = select_scheme(&reps);
                    schemes.push(choice.scheme);
                    regular_velocity_update(p, &choice, &gbest, memory, v_max, &mut rng)
                }
                None => {
                    let r1 = unit_vector(spec.dimension, &mut rng);
                    let r2 = unit_vector(spec.dimension, &mut rng);
                    pso_velocity(
                        &p.velocity,
                        &p.position,
                        &p.pbest_position,
                        &gbest,
                        &params,
                        v_max,
                        &r1,
                        &r2,
                    )
                }
            };
            for (x, v) in p.position.iter_mut().zip(&p.velocity) {
                *x += v;
            }
            handle_bounds(&mut p.position, &mut p.velocity, spec.bounds);
            p.fitness = spec.evaluate(&p.position, &mut counter)?;
        }

        if !ablations.no_mutation {
            for (rank, &i) in elite.iter().enumerate() {
                let p = &mut state.particles[i];
                let (next, draw) = elite_mutate(
                    &p.position,
                    &p.pbest_position,
                    &elite_snapshot,
                    rank,
                    spec.bounds,
                    &mut rng,
                )?;
                p.position = next;
                p.fitness = spec.evaluate(&p.position, &mut counter)?;
                mutations.push(draw);
            }
        }

        let update = update_bests(&mut state);
        state.iteration += 1;
        if let Some(archives) = archives.as_mut() {
            archives.refresh_phi(&state);
            for &i in &update.improved {
                let p = &state.particles[i];
                archives.push_psi(
                    ArchiveEntry {
                        position: p.pbest_position.clone(),
                        fitness: p.pbest_fitness,
                    },
                    &mut rng,
                );
            }
            if update.gbest_improved {
                archives.push_chi(
                    ArchiveEntry {
                        position: state.gbest_position.clone(),
                        fitness: state.gbest_fitness,
                    },
                    &mut rng,
                );
            }
        }

        rows.push(row(
            state.iteration,
            &counter,
            spec,
            &state,
            archives.as_ref(),
        ));
        observer.on_iteration(&IterationView {
            iteration: state.iteration,
            state: &state,
            archives: archives.as_ref(),
            elite: &elite,
            regular: &regular,
            mutations: &mutations,
            schemes: &schemes,
            counter: &counter,
        });
    }

    Ok(finish(
        rows,
        &state,
        spec,
        &counter,
        init_evaluations,
        started,
    ))
}

pub fn run_pso_observed<O: RunObserver + ?Sized>(
    config: &OptimizerConfig,
    spec: &ObjectiveSpec,
    observer: &mut O,
) -> Result<RunRecord> {
    let started = Instant::now();
    let config = OptimizerConfig {
        algorithm: Algorithm::Pso,
        ..config.clone()
    };
    config.validate(spec.dimension)?;
    let n = config.population;

    let mut counter = EvaluationCounter::new(config.budget_for(spec.dimension));
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let init = random_swarm(n, spec, &mut counter, &mut rng)?;
    let init_evaluations = counter.used();
    let mut state = SwarmState::new(init.positions, init.fitness);

    let mut rows = vec![row(0, &counter, spec, &state, None)];
    let mut notify = |state: &SwarmState, counter: &EvaluationCounter| {
        observer.on_iteration(&IterationView {
            iteration: state.iteration,
            state,
            archives: None,
            elite: &[],
            regular: &[],
            mutations: &[],
            schemes: &[],
            counter,
        })
    };
    notify(&state, &counter);
    while counter.remaining() >= n as u64 {
        pso_step(&mut state, &config.pso_params, spec, &mut counter, &mut rng)?;
        rows.push(row(state.iteration, &counter, spec, &state, None));
        notify(&state, &counter);
    }

    Ok(finish(
        rows,
        &state,
        spec,
        &counter,
        init_evaluations,
        started,
    ))
}
