//! "Best-rand to current" mutation for the elite subgroup.
//!
//! `x' = x + Δ₁∘(pbest − x) + Δ₂∘(x_g − x_h)`
//!
//! `Δ₁`, `Δ₂` are per-dimension uniform draws in `[0, 1)`; `g` and `h` are
//! two distinct elite ranks, both different from the mutated particle's own
//! rank. Peers are read from a snapshot taken before any elite moves.

use rand::Rng;

use crate::error::{Error, Result};
use crate::objective::SearchBounds;
use crate::swarm::unit_vector;

/// The random quantities behind one elite mutation.
#[derive(Debug, Clone, PartialEq)]
pub struct MutationDraw {
    pub delta1: Vec<f64>,
    pub delta2: Vec<f64>,
    /// Rank of the first peer within the elite subgroup.
    pub g: usize,
    /// Rank of the second peer within the elite subgroup.
    pub h: usize,
}

/// Draws `g`, `h` (distinct, both ≠ `own_rank`) then `Δ₁`, `Δ₂`.
pub fn draw_mutation<R: Rng + ?Sized>(
    elite_count: usize,
    own_rank: usize,
    dimension: usize,
    rng: &mut R,
) -> Result<MutationDraw> {
    if elite_count < 3 {
        return Err(Error::DegenerateSubgroup(elite_count));
    }
    // Sample from the ranks with `own_rank` (and then `g`) removed.
    let mut g = rng.random_range(0..elite_count - 1);
    if g >= own_rank {
        g += 1;
    }
    let (lo, hi) = if g < own_rank {
        (g, own_rank)
    } else {
        (own_rank, g)
    };
    let mut h = rng.random_range(0..elite_count - 2);
    if h >= lo {
        h += 1;
    }
    if h >= hi {
        h += 1;
    }
    Ok(MutationDraw {
        delta1: unit_vector(dimension, rng),
        delta2: unit_vector(dimension, rng),
        g,
        h,
    })
}

/// Unclamped mutation kernel.
pub fn mutate_position(
    position: &[f64],
    pbest: &[f64],
    peer_g: &[f64],
    peer_h: &[f64],
    delta1: &[f64],
    delta2: &[f64],
) -> Vec<f64> {
    (0..position.len())
        .map(|k| {
            position[k] + delta1[k] * (pbest[k] - position[k]) + delta2[k] * (peer_g[k] - peer_h[k])
        })
        .collect()
}

/// Mutates the elite at `own_rank` against the snapshot `elite_positions`
/// (rank order) and clamps the result into the box. Velocity is untouched.
pub fn elite_mutate<R: Rng + ?Sized>(
    position: &[f64],
    pbest: &[f64],
    elite_positions: &[Vec<f64>],
    own_rank: usize,
    bounds: SearchBounds,
    rng: &mut R,
) -> Result<(Vec<f64>, MutationDraw)> {
    let draw = draw_mutation(elite_positions.len(), own_rank, position.len(), rng)?;
    let mut next = mutate_position(
        position,
        pbest,
        &elite_positions[draw.g],
        &elite_positions[draw.h],
        &draw.delta1,
        &draw.delta2,
    );
    next.iter_mut()
        .for_each(|x| *x = x.clamp(bounds.lower(), bounds.upper()));
    Ok((next, draw))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn vanishing_differences() {
        let x = mutate_position(
            &[4.0, -2.0],
            &[4.0, -2.0],
            &[1.0, 1.0],
            &[1.0, 1.0],
            &[0.7, 0.2],
            &[0.9, 0.5],
        );
        assert_eq!(x, vec![4.0, -2.0]);
    }

    #[test]
    fn full_pull_to_pbest() {
        let x = mutate_position(
            &[4.0, -2.0],
            &[-7.5, 3.25],
            &[9.0, 1.0],
            &[1.0, 8.0],
            &[1.0, 1.0],
            &[0.0, 0.0],
        );
        assert_eq!(x, vec![-7.5, 3.25]);
    }

    #[test]
    fn peer_difference_hand_computed() {
        // 0 + 0·(…) + 1·(3 − 1) = 2
        let x = mutate_position(&[0.0], &[5.0], &[3.0], &[1.0], &[0.0], &[1.0]);
        assert_eq!(x, vec![2.0]);
    }

    #[test]
    fn draws_exclude_self_and_each_other() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for elite_count in 3..8 {
            let mut seen = std::collections::HashSet::new();
            for own in 0..elite_count {
                for _ in 0..2000 {
                    let d = draw_mutation(elite_count, own, 2, &mut rng).unwrap();
                    assert!(d.g != d.h && d.g != own && d.h != own);
                    assert!(d.g < elite_count && d.h < elite_count);
                    assert!(d
                        .delta1
                        .iter()
                        .chain(&d.delta2)
                        .all(|v| (0.0..1.0).contains(v)));
                    seen.insert((own, d.g, d.h));
                }
            }
            // Every admissible ordered pair shows up.
            assert_eq!(
                seen.len(),
                elite_count * (elite_count - 1) * (elite_count - 2)
            );
        }
    }

    #[test]
    fn small_elite_is_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(
            draw_mutation(2, 0, 3, &mut rng),
            Err(Error::DegenerateSubgroup(2))
        ));
    }

    #[test]
    fn mutated_positions_are_clamped() {
        let bounds = SearchBounds::default();
        let elites = vec![vec![100.0], vec![-100.0], vec![100.0], vec![-100.0]];
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let (x, _) = elite_mutate(&[99.0], &[99.0], &elites, 0, bounds, &mut rng).unwrap();
            assert!(bounds.contains(&x));
        }
    }
}
