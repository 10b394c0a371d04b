//! Seeded random games for batch verification.

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::game::{AttackVector, GameParams, GameSpec, VectorEntry};
use crate::reduction::ReducedGame;

/// Independent stream for item `index` of a batch: seed `base + index`.
pub fn stream(base: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(base.wrapping_add(index))
}

/// `p` in (0.05, 0.95), `c_d` and `c_fa` in (0.1, 10).
pub fn random_params<R: Rng>(rng: &mut R) -> GameParams {
    GameParams {
        prior: rng.gen_range(0.05..0.95),
        detection_cost: rng.gen_range(0.1..10.0),
        false_alarm_cost: rng.gen_range(0.1..10.0),
    }
}

/// Uniformly distributed point of the open simplex.
pub fn random_simplex<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    let draws: Vec<f64> = (0..n).map(|_| -rng.gen_range(f64::MIN_POSITIVE..1.0).ln()).collect();
    let total: f64 = draws.iter().sum();
    draws.into_iter().map(|x| x / total).collect()
}

/// Reduced game with sorted rewards uniform in (0, 10) and strictly positive noise.
pub fn random_reduced_game<R: Rng>(rng: &mut R, levels: RangeInclusive<usize>) -> ReducedGame {
    let n = rng.gen_range(levels);
    loop {
        let mut rewards: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..10.0)).collect();
        rewards.sort_by(f64::total_cmp);
        if rewards.windows(2).any(|w| w[0] >= w[1]) {
            continue;
        }
        let noise = random_simplex(rng, n);
        let params = random_params(rng);
        if let Ok(g) = ReducedGame::new(rewards, noise, params) {
            return g;
        }
    }
}

/// Full game with up to `max_vectors` vectors; with `duplicates` at least one
/// pair of vectors shares a reward whenever there are two or more vectors.
pub fn random_spec<R: Rng>(rng: &mut R, max_vectors: usize, duplicates: bool) -> GameSpec {
    let m = rng.gen_range(1..=max_vectors.max(1));
    loop {
        let mut rewards: Vec<f64> = (0..m).map(|_| rng.gen_range(0.0..10.0)).collect();
        if duplicates && m >= 2 {
            let copies = rng.gen_range(1..m);
            for _ in 0..copies {
                let from = rng.gen_range(0..m);
                let to = rng.gen_range(0..m);
                rewards[to] = rewards[from];
            }
            if rewards.iter().all(|r| rewards.iter().filter(|q| *q == r).count() == 1) {
                rewards[1] = rewards[0];
            }
        }
        let noise = random_simplex(rng, m);
        let entries = rewards
            .into_iter()
            .zip(noise)
            .enumerate()
            .map(|(i, (reward, noise))| VectorEntry {
                vector: AttackVector::new(format!("v{}", i + 1), vec![i as i64]),
                reward,
                noise,
            })
            .collect();
        if let Ok(spec) = GameSpec::new(entries, random_params(rng)) {
            return spec;
        }
    }
}
