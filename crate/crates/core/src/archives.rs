//! The three bounded archives that guide the regular subgroup.
//!
//! * `phi`: personal bests of the `n/2` particles with the best personal-best
//!   fitness, rebuilt from scratch every iteration.
//! * `psi`: personal bests that strictly improved, capacity `n`.
//! * `chi`: global bests that strictly improved, capacity `n`.
//!
//! When `psi` or `chi` overflow, entries other than the newest are evicted
//! uniformly at random. The newest `chi` entry is always the current global
//! best, so `chi` never loses it.

use rand::Rng;

use crate::error::{Error, Result};
use crate::swarm::SwarmState;

#[derive(Debug, Clone, PartialEq)]
pub struct ArchiveEntry {
    pub position: Vec<f64>,
    pub fitness: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArchiveSet {
    phi: Vec<ArchiveEntry>,
    psi: Vec<ArchiveEntry>,
    chi: Vec<ArchiveEntry>,
    population: usize,
}

/// One representative drawn from each archive.
#[derive(Debug, Clone, Copy)]
pub struct Representatives<'a> {
    pub phi: &'a ArchiveEntry,
    pub psi: &'a ArchiveEntry,
    pub chi: &'a ArchiveEntry,
}

impl ArchiveSet {
    /// Empty archives for a swarm of `population` particles.
    pub fn new(population: usize) -> Self {
        Self {
            phi: Vec::with_capacity(population / 2),
            psi: Vec::with_capacity(population + 1),
            chi: Vec::with_capacity(population + 1),
            population,
        }
    }

    /// Archives seeded from a freshly initialized swarm: `phi` from the top
    /// half, `psi` with every personal best and `chi` with the global best.
    pub fn seeded(state: &SwarmState) -> Self {
        let mut archives = Self::new(state.len());
        archives.refresh_phi(state);
        archives.psi = state
            .particles
            .iter()
            .map(|p| ArchiveEntry {
                position: p.pbest_position.clone(),
                fitness: p.pbest_fitness,
            })
            .collect();
        archives.chi.push(ArchiveEntry {
            position: state.gbest_position.clone(),
            fitness: state.gbest_fitness,
        });
        archives
    }

    pub fn phi(&self) -> &[ArchiveEntry] {
        &self.phi
    }

    pub fn psi(&self) -> &[ArchiveEntry] {
        &self.psi
    }

    pub fn chi(&self) -> &[ArchiveEntry] {
        &self.chi
    }

    pub fn phi_capacity(&self) -> usize {
        self.population / 2
    }

    pub fn capacity(&self) -> usize {
        self.population
    }

    /// Rebuilds `phi` from the `n/2` best personal bests (ties to the lower index).
    pub fn refresh_phi(&mut self, state: &SwarmState) {
        let mut order: Vec<usize> = (0..state.len()).collect();
        order.sort_by(|&i, &j| {
            state.particles[i]
                .pbest_fitness
                .total_cmp(&state.particles[j].pbest_fitness)
                .then(i.cmp(&j))
        });
        self.phi = order
            .into_iter()
            .take(self.phi_capacity().max(1))
            .map(|i| ArchiveEntry {
                position: state.particles[i].pbest_position.clone(),
                fitness: state.particles[i].pbest_fitness,
            })
            .collect();
    }

    /// Appends an improved personal best.
    pub fn push_psi<R: Rng + ?Sized>(&mut self, entry: ArchiveEntry, rng: &mut R) {
        let cap = self.capacity();
        push_bounded(&mut self.psi, entry, cap, rng);
    }

    /// Appends an improved global best.
    pub fn push_chi<R: Rng + ?Sized>(&mut self, entry: ArchiveEntry, rng: &mut R) {
        let cap = self.capacity();
        push_bounded(&mut self.chi, entry, cap, rng);
    }

    /// Draws one entry uniformly from each archive, in the order phi, psi, chi.
    pub fn sample_representatives<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
    ) -> Result<Representatives<'_>> {
        Ok(Representatives {
            phi: pick(&self.phi, "phi", rng)?,
            psi: pick(&self.psi, "psi", rng)?,
            chi: pick(&self.chi, "chi", rng)?,
        })
    }
}

fn pick<'a, R: Rng + ?Sized>(
    archive: &'a [ArchiveEntry],
    name: &'static str,
    rng: &mut R,
) -> Result<&'a ArchiveEntry> {
    if archive.is_empty() {
        return Err(Error::EmptyArchive(name));
    }
    Ok(&archive[rng.random_range(0..archive.len())])
}

fn push_bounded<R: Rng + ?Sized>(
    archive: &mut Vec<ArchiveEntry>,
    entry: ArchiveEntry,
    capacity: usize,
    rng: &mut R,
) {
    archive.push(entry);
    while archive.len() > capacity.max(1) {
        // Never the newest, which sits at the end.
        let victim = rng.random_range(0..archive.len() - 1);
        archive.remove(victim);
    }
}
