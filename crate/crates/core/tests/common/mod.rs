//! Structural checks shared by the property tests and the acceptance suite.

#![allow(dead_code)]

use advclass_ne::oracle::random::{random_simplex, stream};
use advclass_ne::oracle::vertices::{is_contiguous_suffix, optimal_vertices, vertex_shapes};
use advclass_ne::reduction::threshold_detection_profile;
use advclass_ne::solver::{build_matrices, compute_all_ne, VertexType};
use advclass_ne::{EquilibriumSet, ReducedGame};

const ZERO: f64 = 1e-12;

/// Tolerance of the proportionality and trichotomy checks.
pub const WEIGHT_CHECK_TOL: f64 = 1e-9;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Detection probability is nondecreasing in the reward level.
pub fn detection_monotone(set: &EquilibriumSet) -> Result<(), String> {
    for beta in &set.beta_vertices {
        let pi = threshold_detection_profile(beta);
        ensure(pi.values().windows(2).all(|w| w[1] >= w[0] - ZERO), || {
            format!("detection probability decreases: {:?}", pi.values())
        })?;
    }
    Ok(())
}

/// Every level falls into one of three classes, never (no attack, positive
/// detection); classes are ordered by reward; levels detected with
/// probability strictly between 0 and 1 are attacked in proportion to noise.
pub fn level_classes(g: &ReducedGame, set: &EquilibriumSet) -> Result<(), String> {
    let factor = g.params().mimicry_factor();
    for beta in &set.beta_vertices {
        let pi = threshold_detection_profile(beta);
        for alpha in &set.alpha_vertices {
            let mut classes = Vec::with_capacity(g.len());
            for (i, (&a, &d)) in alpha.iter().zip(pi.values()).enumerate() {
                let attacked = a > WEIGHT_CHECK_TOL;
                let detected = d > WEIGHT_CHECK_TOL;
                ensure(attacked || !detected, || {
                    format!("level {} detected with probability {d} but never attacked", i + 1)
                })?;
                classes.push(match (attacked, detected) {
                    (false, _) => 0,
                    (true, false) => 1,
                    (true, true) => 2,
                });
                if d > WEIGHT_CHECK_TOL && d < 1.0 - WEIGHT_CHECK_TOL {
                    let expected = factor * g.noise()[i];
                    ensure((a - expected).abs() <= WEIGHT_CHECK_TOL, || {
                        format!("level {} weight {a}, proportional share {expected}", i + 1)
                    })?;
                }
            }
            let r = g.rewards();
            let max_of = |c: u8| classes.iter().zip(r).filter(|(k, _)| **k == c).map(|(_, r)| *r).fold(f64::MIN, f64::max);
            let min_of = |c: u8| classes.iter().zip(r).filter(|(k, _)| **k == c).map(|(_, r)| *r).fold(f64::MAX, f64::min);
            ensure(max_of(0) <= min_of(1) && max_of(0) <= min_of(2) && max_of(1) < min_of(2), || {
                format!("level classes out of reward order: {classes:?}")
            })?;
        }
    }
    Ok(())
}

/// Optimal vertices of the defender polyhedron have contiguous tight suffixes,
/// at most one is type I only, and type II starts are adjacent.
pub fn vertex_structure(g: &ReducedGame) -> Result<(), String> {
    let m = build_matrices(g, 1.0).map_err(|e| e.to_string())?;
    let vertices = optimal_vertices(&m).map_err(|e| e.to_string())?;
    ensure(!vertices.is_empty() && vertices.len() <= 3, || format!("{} optimal vertices", vertices.len()))?;
    let mut type_one_only = 0;
    let mut type_two_starts = Vec::new();
    for v in &vertices {
        ensure(is_contiguous_suffix(&v.tight_rows, g.len()), || format!("tight rows {:?}", v.tight_rows))?;
        let shapes = vertex_shapes(g, &v.beta, WEIGHT_CHECK_TOL);
        ensure(!shapes.is_empty(), || format!("vertex {:?} has no threshold shape", v.beta))?;
        if shapes.iter().all(|(_, t)| *t == VertexType::TypeI) {
            type_one_only += 1;
        }
        if shapes.iter().all(|(_, t)| *t == VertexType::TypeII) {
            type_two_starts.push(shapes[0].0);
        }
    }
    type_two_starts.sort_unstable();
    ensure(type_one_only <= 1, || format!("{type_one_only} type I vertices"))?;
    ensure(type_two_starts.len() <= 2 && type_two_starts.windows(2).all(|w| w[1] == w[0] + 1), || {
        format!("type II starts {type_two_starts:?}")
    })
}

/// Strategies and the defender payoff do not depend on the shift constant.
pub fn shift_invariance(g: &ReducedGame, base: &EquilibriumSet) -> Result<(), String> {
    for eps in [0.5, 2.0] {
        let other = compute_all_ne(g, eps).map_err(|e| e.to_string())?;
        ensure(other.case == base.case && other.k == base.k, || format!("case changes at epsilon {eps}"))?;
        ensure(same_sets(&other.beta_vertices, &base.beta_vertices), || format!("defender set changes at epsilon {eps}"))?;
        ensure(same_sets(&other.alpha_vertices, &base.alpha_vertices), || format!("attacker set changes at epsilon {eps}"))?;
        ensure((other.defender_value - base.defender_value).abs() <= 1e-9, || {
            format!("defender value {} vs {}", other.defender_value, base.defender_value)
        })?;
    }
    Ok(())
}

fn same_sets(a: &[Vec<f64>], b: &[Vec<f64>]) -> bool {
    a.len() == b.len() && a.iter().all(|x| b.iter().any(|y| x.iter().zip(y).all(|(p, q)| (p - q).abs() <= 1e-12)))
}

fn argmin_set(values: &[f64], tol: f64) -> Vec<usize> {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    (0..values.len()).filter(|&i| values[i] - min <= tol).collect()
}

/// The attacker's best-response rows agree under the cost matrix and its zero-sum shift.
pub fn best_response_equivalence(g: &ReducedGame, seed: u64, samples: u64) -> Result<(), String> {
    let m = build_matrices(g, 1.0).map_err(|e| e.to_string())?;
    let eq = m.lambda_eq();
    let solved = compute_all_ne(g, 1.0).map_err(|e| e.to_string())?;
    let random = (0..samples).map(|i| random_simplex(&mut stream(seed, i), g.len() + 1));
    for beta in solved.beta_vertices.iter().cloned().chain(random) {
        let b = nalgebra::DVector::from_vec(beta.clone());
        let plain: Vec<f64> = (&m.lambda * &b).iter().copied().collect();
        let shifted: Vec<f64> = (&eq * &b).iter().copied().collect();
        let scale = plain.iter().chain(&shifted).fold(1.0f64, |s, x| s.max(x.abs()));
        let tol = 1e-12 * scale;
        ensure(argmin_set(&plain, tol) == argmin_set(&shifted, tol), || format!("argmin sets differ at {beta:?}"))?;
    }
    Ok(())
}

/// All structural checks on one game.
pub fn check_game(g: &ReducedGame, seed: u64) -> Result<(), String> {
    let set = compute_all_ne(g, 1.0).map_err(|e| e.to_string())?;
    detection_monotone(&set)?;
    level_classes(g, &set)?;
    vertex_structure(g)?;
    shift_invariance(g, &set)?;
    best_response_equivalence(g, seed, 100)
}

/// Games on a coarse lattice, where value ties between candidates are common.
pub fn lattice_game(seed: u64) -> advclass_ne::ReducedGame {
    use rand::Rng;
    let mut rng = stream(4, seed);
    let n = rng.gen_range(1..=5);
    let mut rewards: Vec<f64> = Vec::new();
    let mut r = 0.0;
    for _ in 0..n {
        r += rng.gen_range(1..=3) as f64;
        rewards.push(r);
    }
    let mut units: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=4)).collect();
    let total: u32 = units.iter().sum();
    if total % 2 == 1 {
        units[0] += 1;
    }
    let total: u32 = units.iter().sum();
    let noise = units.iter().map(|&u| u as f64 / total as f64).collect();
    let params = advclass_ne::GameParams::new(
        [0.2, 0.25, 0.5][rng.gen_range(0..3)],
        rng.gen_range(1..=8) as f64,
        [0.25, 0.5, 1.0, 2.0][rng.gen_range(0..4)],
    )
    .unwrap();
    advclass_ne::ReducedGame::new(rewards, noise, params).unwrap()
}
