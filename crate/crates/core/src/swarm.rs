//! Particle and swarm state, the baseline PSO update and best-so-far bookkeeping.

use rand::Rng;

use crate::error::{Error, Result};
use crate::objective::{EvaluationCounter, ObjectiveSpec, SearchBounds};

#[derive(Debug, Clone, PartialEq)]
pub struct Particle {
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    pub fitness: f64,
    pub pbest_position: Vec<f64>,
    pub pbest_fitness: f64,
}

impl Particle {
    /// A particle at rest whose personal best is its starting point.
    pub fn at_rest(position: Vec<f64>, fitness: f64) -> Self {
        let d = position.len();
        Self {
            pbest_position: position.clone(),
            pbest_fitness: fitness,
            position,
            velocity: vec![0.0; d],
            fitness,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SwarmState {
    pub particles: Vec<Particle>,
    pub gbest_position: Vec<f64>,
    pub gbest_fitness: f64,
    pub iteration: u64,
}

impl SwarmState {
    /// Builds a swarm of particles at rest; the global best is the fittest
    /// starting point (lowest index on ties).
    pub fn new(positions: Vec<Vec<f64>>, fitness: Vec<f64>) -> Self {
        assert_eq!(positions.len(), fitness.len());
        assert!(!positions.is_empty(), "empty swarm");
        let particles: Vec<Particle> = positions
            .into_iter()
            .zip(fitness)
            .map(|(p, f)| Particle::at_rest(p, f))
            .collect();
        let best = argmin_pbest(&particles);
        Self {
            gbest_position: particles[best].pbest_position.clone(),
            gbest_fitness: particles[best].pbest_fitness,
            particles,
            iteration: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.particles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.particles.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.gbest_position.len()
    }
}

fn argmin_pbest(particles: &[Particle]) -> usize {
    let mut best = 0;
    for (i, p) in particles.iter().enumerate().skip(1) {
        if p.pbest_fitness < particles[best].pbest_fitness {
            best = i;
        }
    }
    best
}

/// Coefficients of the inertia-weight PSO update.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsoParams {
    pub inertia: f64,
    pub cognitive: f64,
    pub social: f64,
    /// Velocity cap as a fraction of the box width.
    pub v_max_fraction: f64,
}

impl Default for PsoParams {
    fn default() -> Self {
        Self {
            inertia: 0.729,
            cognitive: 1.49445,
            social: 1.49445,
            v_max_fraction: 0.2,
        }
    }
}

impl PsoParams {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.inertia) {
            return Err(Error::InvalidConfig(format!(
                "inertia {} outside [0, 1]",
                self.inertia
            )));
        }
        if !(self.cognitive >= 0.0 && self.social >= 0.0) {
            return Err(Error::InvalidConfig(
                "acceleration coefficients must be non-negative".into(),
            ));
        }
        if !(self.v_max_fraction > 0.0 && self.v_max_fraction <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "v_max fraction {} outside (0, 1]",
                self.v_max_fraction
            )));
        }
        Ok(())
    }

    pub fn v_max(&self, bounds: SearchBounds) -> f64 {
        self.v_max_fraction * bounds.width()
    }
}

pub fn clamp_velocity(velocity: &mut [f64], v_max: f64) {
    velocity
        .iter_mut()
        .for_each(|v| *v = v.clamp(-v_max, v_max));
}

/// `v' = ω·v + c₁·r₁∘(pbest − x) + c₂·r₂∘(gbest − x)`, clamped to `±v_max`.
#[allow(clippy::too_many_arguments)]
pub fn pso_velocity(
    velocity: &[f64],
    position: &[f64],
    pbest: &[f64],
    gbest: &[f64],
    params: &PsoParams,
    v_max: f64,
    r1: &[f64],
    r2: &[f64],
) -> Vec<f64> {
    let mut out: Vec<f64> = (0..velocity.len())
        .map(|k| {
            params.inertia * velocity[k]
                + params.cognitive * r1[k] * (pbest[k] - position[k])
                + params.social * r2[k] * (gbest[k] - position[k])
        })
        .collect();
    clamp_velocity(&mut out, v_max);
    out
}

/// Clamps out-of-range coordinates to the violated bound and zeroes the matching velocity.
pub fn handle_bounds(position: &mut [f64], velocity: &mut [f64], bounds: SearchBounds) {
    for (x, v) in position.iter_mut().zip(velocity.iter_mut()) {
        if *x < bounds.lower() {
            *x = bounds.lower();
            *v = 0.0;
        } else if *x > bounds.upper() {
            *x = bounds.upper();
            *v = 0.0;
        }
    }
}

/// Result of a best-so-far refresh.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BestsUpdate {
    /// Particles whose personal best strictly improved, in index order.
    pub improved: Vec<usize>,
    pub gbest_improved: bool,
}

/// Strict-improvement refresh of personal and global bests; ties keep the incumbent.
pub fn update_bests(state: &mut SwarmState) -> BestsUpdate {
    let mut update = BestsUpdate::default();
    for (i, p) in state.particles.iter_mut().enumerate() {
        if p.fitness < p.pbest_fitness {
            p.pbest_fitness = p.fitness;
            p.pbest_position.clone_from(&p.position);
            update.improved.push(i);
        }
    }
    let best = argmin_pbest(&state.particles);
    if state.particles[best].pbest_fitness < state.gbest_fitness {
        state.gbest_fitness = state.particles[best].pbest_fitness;
        state
            .gbest_position
            .clone_from(&state.particles[best].pbest_position);
        update.gbest_improved = true;
    }
    update
}

pub(crate) fn unit_vector<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<f64> {
    (0..d).map(|_| rng.random::<f64>()).collect()
}

/// One synchronous iteration of baseline PSO.
///
/// Particles are swept in index order, each drawing `r₁` then `r₂`
/// (one uniform value per dimension). The global best is read-only during the
/// sweep and bests are refreshed afterwards. If the budget runs out the sweep
/// stops before moving the next particle, bests are refreshed for what was
/// evaluated, and `BudgetExceeded` is returned.
pub fn pso_step<R: Rng + ?Sized>(
    state: &mut SwarmState,
    params: &PsoParams,
    spec: &ObjectiveSpec,
    counter: &mut EvaluationCounter,
    rng: &mut R,
) -> Result<BestsUpdate> {
    let v_max = params.v_max(spec.bounds);
    let d = state.dimension();
    let gbest = state.gbest_position.clone();
    for i in 0..state.len() {
        if counter.remaining() == 0 {
            update_bests(state);
            return Err(Error::BudgetExceeded {
                budget: counter.budget(),
            });
        }
        let p = &mut state.particles[i];
        let r1 = unit_vector(d, rng);
        let r2 = unit_vector(d, rng);
        p.velocity = pso_velocity(
            &p.velocity,
            &p.position,
            &p.pbest_position,
            &gbest,
            params,
            v_max,
            &r1,
            &r2,
        );
        for (x, v) in p.position.iter_mut().zip(&p.velocity) {
            *x += v;
        }
        handle_bounds(&mut p.position, &mut p.velocity, spec.bounds);
        p.fitness = spec.evaluate(&p.position, counter)?;
    }
    let update = update_bests(state);
    state.iteration += 1;
    Ok(update)
}

/// Ranks particles by current fitness and splits them into the best half
/// (elite) and the worst half (regular). Ties go to the lower index.
/// Both index lists are in rank order.
pub fn sort_and_split(state: &SwarmState) -> Result<(Vec<usize>, Vec<usize>)> {
    let n = state.len();
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::InvalidPopulation(n));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        state.particles[i]
            .fitness
            .total_cmp(&state.particles[j].fitness)
            .then(i.cmp(&j))
    });
    let regular = order.split_off(n / 2);
    Ok((order, regular))
}
