//! Initial designs and exploration-set generation.
//!
//! The exploration set is built in two stages: a large candidate pool is
//! created by sparse uniform perturbations of the current best point, then
//! points are selected sequentially by a maximin distance criterion seeded
//! with distance-to-boundary scores.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::{Error, Result};
use crate::rng;

/// Latin hypercube design: one sample per stratum in every dimension,
/// uniform placement within the stratum, independent column permutations.
pub fn latin_hypercube(n_samples: usize, n_dims: usize, seed: u64) -> Vec<Vec<f64>> {
    assert!(n_samples >= 1, "latin_hypercube requires n_samples >= 1");
    let mut rng = rng::substream(seed, &[]);
    let mut plan = vec![vec![0.0; n_dims]; n_samples];
    let mut strata: Vec<usize> = (0..n_samples).collect();
    for dim in 0..n_dims {
        strata.shuffle(&mut rng);
        for (point, &stratum) in plan.iter_mut().zip(&strata) {
            let jitter: f64 = rng.random_range(0.0..1.0);
            point[dim] = (stratum as f64 + jitter) / n_samples as f64;
        }
    }
    plan
}

/// Folds a coordinate back into `[0, 1]` by repeated reflection at the
/// violated face (triangular folding with period 2).
pub fn reflect_coordinate(mut v: f64) -> f64 {
    assert!(v.is_finite(), "cannot reflect a non-finite coordinate");
    loop {
        if v < 0.0 {
            v = -v;
        } else if v > 1.0 {
            v = 2.0 - v;
        } else {
            return v;
        }
    }
}

/// Reflects every coordinate into the unit cube.
pub fn reflect_into_unit(x: &[f64]) -> Vec<f64> {
    x.iter().map(|&v| reflect_coordinate(v)).collect()
}

/// Euclidean distance from `x` to the nearest face of the unit cube.
pub fn boundary_distance(x: &[f64]) -> Result<f64> {
    let mut min = f64::INFINITY;
    for (dim, &v) in x.iter().enumerate() {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::OutOfBounds { dim, value: v });
        }
        min = min.min(v).min(1.0 - v);
    }
    Ok(min)
}

/// Parameters for candidate-pool generation around the current best point.
#[derive(Debug, Clone)]
pub struct PerturbationSpec {
    pub x_best: Vec<f64>,
    /// Perturbation range; offsets are drawn from `U[-r/2, r/2]`.
    pub r: f64,
    /// Per-dimension perturbation probability.
    pub p: f64,
    /// Pool size, `1000 * n + 2 * n_explore` by default.
    pub n_cand: usize,
}

impl PerturbationSpec {
    pub fn new(x_best: Vec<f64>, r: f64, p: f64, n_explore: usize) -> Self {
        let n = x_best.len();
        Self {
            x_best,
            r,
            p,
            n_cand: 1000 * n + 2 * n_explore,
        }
    }
}

/// Candidate pool plus the running selection scores.
#[derive(Debug, Clone)]
pub struct CandidateSet {
    pub points: Vec<Vec<f64>>,
    pub distance_scores: Vec<f64>,
}

impl CandidateSet {
    /// Initializes scores to `2 * sqrt(2n)` times the boundary distance.
    pub fn from_points(points: Vec<Vec<f64>>) -> Result<Self> {
        let n = points.first().map_or(0, Vec::len);
        let scale = 2.0 * libm::sqrt(2.0 * n as f64);
        let distance_scores = points
            .iter()
            .map(|p| boundary_distance(p).map(|d| scale * d))
            .collect::<Result<Vec<f64>>>()?;
        Ok(Self {
            points,
            distance_scores,
        })
    }
}

/// Generates the candidate pool by sparse perturbation of `x_best`.
///
/// For each candidate the number of perturbed dimensions is drawn from
/// `Binom(n, p)` forced to at least 1, the dimensions are chosen uniformly
/// without replacement, offsets come from `U[-r/2, r/2]`, and the result is
/// reflected into the unit cube.
pub fn generate_candidates(spec: &PerturbationSpec, seed: u64) -> Result<Vec<Vec<f64>>> {
    let n = spec.x_best.len();
    for (dim, &v) in spec.x_best.iter().enumerate() {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::OutOfBounds { dim, value: v });
        }
    }
    let mut rng = rng::substream(seed, &[]);
    let binomial = Binomial::new(n as u64, spec.p)
        .map_err(|_| Error::InvalidConfig(alloc::format!("invalid p_perturb {}", spec.p)))?;
    let half = spec.r / 2.0;
    let mut candidates = Vec::with_capacity(spec.n_cand);
    for _ in 0..spec.n_cand {
        let t = (binomial.sample(&mut rng) as usize).max(1);
        let dims = sample_without_replacement(&mut rng, n, t);
        let mut point = spec.x_best.clone();
        for dim in dims {
            point[dim] = reflect_coordinate(point[dim] + rng.random_range(-half..=half));
        }
        candidates.push(point);
    }
    Ok(candidates)
}

/// Uniform sample of `t` distinct indices from `0..n` (partial Fisher-Yates).
fn sample_without_replacement(rng: &mut ChaCha8Rng, n: usize, t: usize) -> Vec<usize> {
    debug_assert!(t <= n);
    let mut indices: Vec<usize> = (0..n).collect();
    for i in 0..t {
        let j = rng.random_range(i..n);
        indices.swap(i, j);
    }
    indices.truncate(t);
    indices
}

/// Sequential maximin selection of `n_explore` points from the pool.
///
/// Each round picks the argmax of the score array (ties to the lowest
/// index) and then clips every score at the Euclidean distance to the
/// freshly selected point.
pub fn select_exploration(mut set: CandidateSet, n_explore: usize) -> Result<Vec<Vec<f64>>> {
    if n_explore > set.points.len() {
        return Err(Error::InsufficientCandidates {
            available: set.points.len(),
            requested: n_explore,
        });
    }
    let mut selected = Vec::with_capacity(n_explore);
    for _ in 0..n_explore {
        let mut best = 0;
        for (j, &score) in set.distance_scores.iter().enumerate() {
            if score > set.distance_scores[best] {
                best = j;
            }
        }
        let chosen = set.points[best].clone();
        for (point, score) in set.points.iter().zip(set.distance_scores.iter_mut()) {
            *score = score.min(euclidean(&chosen, point));
        }
        selected.push(chosen);
    }
    Ok(selected)
}

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    let sum: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
    libm::sqrt(sum)
}

/// Candidate generation followed by maximin selection; the full
/// exploration-set pipeline.
pub fn generate_exploration_points(
    n_explore: usize,
    r: f64,
    x_best: &[f64],
    p: f64,
    seed: u64,
) -> Result<Vec<Vec<f64>>> {
    let spec = PerturbationSpec::new(x_best.to_vec(), r, p, n_explore);
    let candidates = generate_candidates(&spec, seed)?;
    select_exploration(CandidateSet::from_points(candidates)?, n_explore)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lhs_sorted_coordinates_fall_one_per_stratum() {
        let plan = latin_hypercube(4, 3, 11);
        for dim in 0..3 {
            let mut strata: Vec<usize> = plan
                .iter()
                .map(|p| (p[dim] * 4.0).floor() as usize)
                .collect();
            strata.sort_unstable();
            assert_eq!(strata, vec![0, 1, 2, 3]);
        }
    }

    #[test]
    fn lhs_single_sample_is_in_unit_cube() {
        let plan = latin_hypercube(1, 5, 2);
        assert_eq!(plan.len(), 1);
        assert!(plan[0].iter().all(|&v| (0.0..=1.0).contains(&v)));
    }

    #[test]
    fn lhs_replays_for_equal_seeds() {
        assert_eq!(latin_hypercube(8, 4, 42), latin_hypercube(8, 4, 42));
        assert_ne!(latin_hypercube(8, 4, 42), latin_hypercube(8, 4, 43));
    }

    #[test]
    fn reflection_examples() {
        assert_eq!(reflect_coordinate(1.2), 0.8);
        assert_eq!(reflect_coordinate(-0.3), 0.3);
        assert_eq!(reflect_coordinate(2.5), 0.5);
        assert_eq!(reflect_coordinate(0.0), 0.0);
        assert_eq!(reflect_coordinate(1.0), 1.0);
    }

    #[test]
    fn boundary_distance_examples() {
        assert_eq!(boundary_distance(&[0.5, 0.5, 0.5]).unwrap(), 0.5);
        assert_eq!(boundary_distance(&[0.0, 0.4]).unwrap(), 0.0);
        assert_eq!(boundary_distance(&[0.3, 1.0]).unwrap(), 0.0);
        assert!((boundary_distance(&[0.2, 0.9]).unwrap() - 0.1).abs() < 1e-15);
        assert!(boundary_distance(&[1.1]).is_err());
    }

    #[test]
    fn one_dimensional_candidates_always_perturb() {
        // Binom(1, 1) is always 1, so every candidate moves.
        let spec = PerturbationSpec::new(vec![0.5], 0.8, 1.0, 2);
        let candidates = generate_candidates(&spec, 5).unwrap();
        assert_eq!(candidates.len(), 1000 + 4);
        assert!(candidates.iter().all(|c| (0.0..=1.0).contains(&c[0])));
    }

    #[test]
    fn tiny_range_keeps_candidates_near_best() {
        let spec = PerturbationSpec::new(vec![0.5; 4], 1e-12, 0.5, 4);
        let candidates = generate_candidates(&spec, 9).unwrap();
        for c in candidates {
            for (a, b) in c.iter().zip(&spec.x_best) {
                assert!((a - b).abs() <= 5e-13);
            }
        }
    }

    #[test]
    fn unperturbed_coordinates_match_best_exactly() {
        let x_best = vec![0.3, 0.6, 0.9, 0.2, 0.7];
        let spec = PerturbationSpec::new(x_best.clone(), 0.4, 0.3, 5);
        for c in generate_candidates(&spec, 1).unwrap() {
            let moved = c.iter().zip(&x_best).filter(|(a, b)| a != b).count();
            assert!(moved >= 1);
        }
    }

    #[test]
    fn first_selection_is_boundary_distance_argmax() {
        let points = vec![vec![0.1, 0.1], vec![0.5, 0.4], vec![0.9, 0.5]];
        let set = CandidateSet::from_points(points).unwrap();
        let picked = select_exploration(set, 1).unwrap();
        assert_eq!(picked, vec![vec![0.5, 0.4]]);
    }

    #[test]
    fn duplicates_are_suppressed_after_selection() {
        let points = vec![vec![0.5, 0.5], vec![0.5, 0.5], vec![0.3, 0.3]];
        let picked = select_exploration(CandidateSet::from_points(points).unwrap(), 2).unwrap();
        assert_eq!(picked[0], vec![0.5, 0.5]);
        assert_eq!(picked[1], vec![0.3, 0.3]);
    }

    #[test]
    fn requesting_more_than_available_fails() {
        let set = CandidateSet::from_points(vec![vec![0.5]]).unwrap();
        assert!(matches!(
            select_exploration(set, 2),
            Err(Error::InsufficientCandidates {
                available: 1,
                requested: 2
            })
        ));
    }

    #[test]
    fn exploration_pipeline_contract() {
        let x_best = vec![0.4; 6];
        let out = generate_exploration_points(6, 1.6, &x_best, 1.0 / 6f64.sqrt(), 17).unwrap();
        assert_eq!(out.len(), 6);
        for p in &out {
            assert!(p.iter().all(|&v| (0.0..=1.0).contains(&v)));
        }
        let replay = generate_exploration_points(6, 1.6, &x_best, 1.0 / 6f64.sqrt(), 17).unwrap();
        assert_eq!(out, replay);
    }
}
