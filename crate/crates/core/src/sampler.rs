//! Random oriented cubic multigraphs from the pairing (configuration) model.
//!
//! The `6n` darts are matched by a uniformly random perfect matching and each
//! vertex independently gets one of its two cyclic orders with probability
//! 1/2.
//!
//! Per-trial randomness is a ChaCha8 generator keyed with
//! `seed_from_u64(master_seed)` and switched to stream `trial_index`, so a
//! trial's graph depends only on `(master_seed, trial_index)` and never on
//! which worker produced it.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ribbon_graph::RibbonGraph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SampleError {
    #[error("n must be at least 1")]
    ZeroSize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeedSpec {
    pub master_seed: u64,
    pub trial_index: u64,
}

impl SeedSpec {
    pub fn new(master_seed: u64, trial_index: u64) -> Self {
        SeedSpec {
            master_seed,
            trial_index,
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.trial_index);
        rng
    }
}

/// Draws one oriented cubic multigraph on `2n` vertices.
pub fn sample_pairing(n: usize, seed: SeedSpec) -> Result<RibbonGraph, SampleError> {
    if n == 0 {
        return Err(SampleError::ZeroSize);
    }
    let mut rng = seed.rng();
    let darts = 6 * n;

    let mut order: Vec<usize> = (0..darts).collect();
    order.shuffle(&mut rng);
    let mut alpha = vec![0; darts];
    for pair in order.chunks_exact(2) {
        alpha[pair[0]] = pair[1];
        alpha[pair[1]] = pair[0];
    }

    let mut sigma = Vec::with_capacity(darts);
    for v in 0..2 * n {
        let b = 3 * v;
        if rng.random::<bool>() {
            sigma.extend([b + 1, b + 2, b]);
        } else {
            sigma.extend([b + 2, b, b + 1]);
        }
    }
    Ok(RibbonGraph::new(n, sigma, alpha).expect("pairing model always yields a valid graph"))
}

/// Lazily yields trials `0..trials` for the given master seed.
pub fn sample_batch(
    n: usize,
    trials: u64,
    master_seed: u64,
) -> impl Iterator<Item = Result<RibbonGraph, SampleError>> {
    (0..trials).map(move |i| sample_pairing(n, SeedSpec::new(master_seed, i)))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Canonical key of a matching on the 6 darts of an n = 1 graph.
    fn matching_key(g: &RibbonGraph) -> [usize; 6] {
        std::array::from_fn(|d| g.alpha(d))
    }

    /// All 15 perfect matchings of {0..5}, enumerated independently.
    fn all_matchings() -> Vec<[usize; 6]> {
        fn rec(free: &mut Vec<usize>, cur: &mut [usize; 6], out: &mut Vec<[usize; 6]>) {
            if free.is_empty() {
                out.push(*cur);
                return;
            }
            let a = free.remove(0);
            for i in 0..free.len() {
                let b = free.remove(i);
                cur[a] = b;
                cur[b] = a;
                rec(free, cur, out);
                free.insert(i, b);
            }
            free.insert(0, a);
        }
        let mut out = Vec::new();
        rec(&mut (0..6).collect(), &mut [0; 6], &mut out);
        out
    }

    #[test]
    fn n_zero_rejected() {
        assert_eq!(
            sample_pairing(0, SeedSpec::new(1, 0)),
            Err(SampleError::ZeroSize)
        );
    }

    #[test]
    fn n_one_is_theta_or_loops() {
        for i in 0..200 {
            let g = sample_pairing(1, SeedSpec::new(3, i)).unwrap();
            let loops = g.edges().loop_count();
            assert!(loops == 0 || loops == 2, "loops = {loops}");
        }
    }

    #[test]
    fn deterministic() {
        let a = sample_pairing(4, SeedSpec::new(42, 5)).unwrap();
        let b = sample_pairing(4, SeedSpec::new(42, 5)).unwrap();
        assert_eq!(a.sigma_slice(), b.sigma_slice());
        assert_eq!(a.alpha_slice(), b.alpha_slice());
        assert_ne!(a, sample_pairing(4, SeedSpec::new(42, 6)).unwrap());
    }

    #[test]
    fn batch_matches_individual_calls() {
        let batch: Vec<_> = sample_batch(2, 3, 9).map(Result::unwrap).collect();
        assert_eq!(batch.len(), 3);
        for (i, g) in batch.iter().enumerate() {
            assert!(g.validate().is_empty());
            assert_eq!(*g, sample_pairing(2, SeedSpec::new(9, i as u64)).unwrap());
        }
        let again: Vec<_> = sample_batch(2, 3, 9).map(Result::unwrap).collect();
        assert_eq!(batch, again);
    }

    #[test]
    fn theta_fraction_and_matching_uniformity() {
        let matchings = all_matchings();
        assert_eq!(matchings.len(), 15);
        // 3! ways to pair {0,1,2} with {3,4,5}
        let theta_count = matchings
            .iter()
            .filter(|m| (0..3).all(|d| m[d] >= 3))
            .count();
        assert_eq!(theta_count, 6);

        let trials = 100_000u64;
        let mut freq = std::collections::HashMap::new();
        for g in sample_batch(1, trials, 2024) {
            *freq.entry(matching_key(&g.unwrap())).or_insert(0u64) += 1;
        }
        assert_eq!(freq.len(), 15);
        let theta: u64 = freq
            .iter()
            .filter(|(m, _)| (0..3).all(|d| m[d] >= 3))
            .map(|(_, c)| c)
            .sum();
        let theta_frac = theta as f64 / trials as f64;
        assert!(
            (theta_frac - 0.4).abs() <= 0.01,
            "theta fraction {theta_frac}"
        );

        let p = 1.0 / 15.0;
        let se = (p * (1.0 - p) / trials as f64).sqrt();
        for m in &matchings {
            let f = freq[m] as f64 / trials as f64;
            assert!((f - p).abs() <= 3.0 * se, "matching {m:?} frequency {f}");
        }
    }

    #[test]
    fn orientations_are_balanced() {
        let mut forward = 0usize;
        let mut total = 0usize;
        for g in sample_batch(50, 200, 11) {
            let g = g.unwrap();
            for v in 0..g.vertex_count() {
                forward += usize::from(g.sigma(3 * v) == 3 * v + 1);
                total += 1;
            }
        }
        let frac = forward as f64 / total as f64;
        assert!((frac - 0.5).abs() < 0.02, "{frac}");
    }

    #[test]
    fn mean_loop_count_near_one() {
        let trials = 20_000u64;
        let loops: usize = sample_batch(500, trials, 7)
            .map(|g| g.unwrap().edges().loop_count())
            .sum();
        let mean = loops as f64 / trials as f64;
        assert!((mean - 1.0).abs() <= 0.05, "mean loops {mean}");
    }
}
