//! Archive-guided velocity update for the regular subgroup.
//!
//! Each regular particle draws one representative from each archive and
//! learns from the fittest of the three:
//!
//! `v' = r₁∘v + r₂∘(guide − x) + r₃∘(gbest − x)`
//!
//! with fresh per-dimension uniform draws. Ties between representatives go
//! to `phi`, then `psi`, then `chi`.

use rand::Rng;

use crate::archives::Representatives;
use crate::swarm::{clamp_velocity, unit_vector, Particle};

/// Which archive supplied the guide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Guide from the top personal-best archive.
    TopPersonalBest,
    /// Guide from the improved personal-best archive.
    ImprovedPersonalBest,
    /// Guide from the improved global-best archive.
    ImprovedGlobalBest,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchemeChoice {
    pub scheme: Scheme,
    pub guide_position: Vec<f64>,
}

/// Strict argmin over `(phi, psi, chi)` fitness with priority phi > psi > chi on ties.
pub fn scheme_for(phi: f64, psi: f64, chi: f64) -> Scheme {
    if phi <= psi && phi <= chi {
        Scheme::TopPersonalBest
    } else if psi <= chi {
        Scheme::ImprovedPersonalBest
    } else {
        Scheme::ImprovedGlobalBest
    }
}

pub fn select_scheme(reps: &Representatives<'_>) -> SchemeChoice {
    let scheme = scheme_for(reps.phi.fitness, reps.psi.fitness, reps.chi.fitness);
    let guide = match scheme {
        Scheme::TopPersonalBest => reps.phi,
        Scheme::ImprovedPersonalBest => reps.psi,
        Scheme::ImprovedGlobalBest => reps.chi,
    };
    SchemeChoice {
        scheme,
        guide_position: guide.position.clone(),
    }
}

/// How the previous velocity is carried over.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Memory {
    /// Per-dimension uniform factor `r₁`.
    Stochastic,
    /// Fixed inertia weight in place of `r₁`.
    Inertia(f64),
}

/// `v'ₖ = m₁ₖ·vₖ + r₂ₖ·(guideₖ − xₖ) + r₃ₖ·(gbestₖ − xₖ)`, clamped to `±v_max`.
#[allow(clippy::too_many_arguments)]
pub fn regular_velocity(
    velocity: &[f64],
    position: &[f64],
    guide: &[f64],
    gbest: &[f64],
    memory: &[f64],
    r2: &[f64],
    r3: &[f64],
    v_max: f64,
) -> Vec<f64> {
    let mut out: Vec<f64> = (0..velocity.len())
        .map(|k| {
            memory[k] * velocity[k]
                + r2[k] * (guide[k] - position[k])
                + r3[k] * (gbest[k] - position[k])
        })
        .collect();
    clamp_velocity(&mut out, v_max);
    out
}

/// Draws `r₁` (stochastic memory only), `r₂`, `r₃` in that order and applies
/// [`regular_velocity`].
pub fn regular_velocity_update<R: Rng + ?Sized>(
    particle: &Particle,
    choice: &SchemeChoice,
    gbest_position: &[f64],
    memory: Memory,
    v_max: f64,
    rng: &mut R,
) -> Vec<f64> {
    let d = particle.position.len();
    let m = match memory {
        Memory::Stochastic => unit_vector(d, rng),
        Memory::Inertia(w) => vec![w; d],
    };
    let r2 = unit_vector(d, rng);
    let r3 = unit_vector(d, rng);
    regular_velocity(
        &particle.velocity,
        &particle.position,
        &choice.guide_position,
        gbest_position,
        &m,
        &r2,
        &r3,
        v_max,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::archives::ArchiveEntry;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn entry(fitness: f64, x: f64) -> ArchiveEntry {
        ArchiveEntry {
            position: vec![x],
            fitness,
        }
    }

    #[test]
    fn clear_minimum() {
        let (a, b, c) = (entry(1.0, 10.0), entry(2.0, 20.0), entry(3.0, 30.0));
        let choice = select_scheme(&Representatives {
            phi: &a,
            psi: &b,
            chi: &c,
        });
        assert_eq!(choice.scheme, Scheme::TopPersonalBest);
        assert_eq!(choice.guide_position, vec![10.0]);

        let (a, b, c) = (entry(9.0, 10.0), entry(2.0, 20.0), entry(4.0, 30.0));
        let choice = select_scheme(&Representatives {
            phi: &a,
            psi: &b,
            chi: &c,
        });
        assert_eq!(choice.scheme, Scheme::ImprovedPersonalBest);
        assert_eq!(choice.guide_position, vec![20.0]);
    }

    #[test]
    fn tie_prefers_phi() {
        assert_eq!(scheme_for(5.0, 5.0, 7.0), Scheme::TopPersonalBest);
        assert_eq!(scheme_for(6.0, 5.0, 5.0), Scheme::ImprovedPersonalBest);
        assert_eq!(scheme_for(5.0, 5.0, 5.0), Scheme::TopPersonalBest);
        assert_eq!(scheme_for(6.0, 7.0, 5.0), Scheme::ImprovedGlobalBest);
    }

    #[test]
    fn fixed_point() {
        let v = regular_velocity(&[0.0], &[2.0], &[2.0], &[2.0], &[0.4], &[0.6], &[0.9], 40.0);
        assert_eq!(v, vec![0.0]);
    }

    #[test]
    fn unit_draws_hand_computed() {
        // 1·0 + 1·(2 − 0) + 1·(4 − 0) = 6
        let v = regular_velocity(&[0.0], &[0.0], &[2.0], &[4.0], &[1.0], &[1.0], &[1.0], 1e9);
        assert_eq!(v, vec![6.0]);
    }

    #[test]
    fn pure_memory() {
        let v = regular_velocity(
            &[3.0],
            &[1.0],
            &[7.0],
            &[-5.0],
            &[1.0],
            &[0.0],
            &[0.0],
            40.0,
        );
        assert_eq!(v, vec![3.0]);
    }

    #[test]
    fn fixed_inertia_scales_memory() {
        let particle = Particle {
            position: vec![0.0, 0.0],
            velocity: vec![2.0, -2.0],
            fitness: 0.0,
            pbest_position: vec![0.0, 0.0],
            pbest_fitness: 0.0,
        };
        let choice = SchemeChoice {
            scheme: Scheme::TopPersonalBest,
            guide_position: vec![0.0, 0.0],
        };
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let v = regular_velocity_update(
            &particle,
            &choice,
            &[0.0, 0.0],
            Memory::Inertia(0.5),
            40.0,
            &mut rng,
        );
        assert_eq!(v, vec![1.0, -1.0]);
    }
}
