//! Independent checks for the closed-form solver.
//!
//! Everything here avoids the solver's structural shortcuts: the defender LP
//! and its dual go through a general simplex, the full-game value ranges over
//! every classifier, and [`vertices`] enumerates the defender polyhedron by
//! brute force.

pub mod lp;
pub mod random;
pub mod verify;
pub mod vertices;

use crate::error::{Error, Result};
use crate::game::{pure_payoffs_at, Classifier, ClassifierMix, GameSpec};
use crate::solver::GameMatrices;
use lp::{LinearProgram, Sense};

pub use verify::{certify, verify_ne, verify_ne_reduced, VerificationReport};

/// Largest attack vector count for which the full classifier set is materialized.
pub const FULL_GAME_LIMIT: usize = 12;

/// A strategy together with the LP value that certifies it.
#[derive(Debug, Clone, PartialEq)]
pub struct LpStrategy {
    pub weights: Vec<f64>,
    /// `max_beta min[Lambda beta] - mu' beta`, in `Lambda` units.
    pub value: f64,
}

/// Solves `max -mu' beta + z` subject to `z <= (Lambda beta)_i`, `sum beta = 1`, `beta >= 0`.
pub fn solve_defender_lp(m: &GameMatrices) -> Result<LpStrategy> {
    let n = m.levels();
    let cols = m.lambda.ncols();
    let mut objective: Vec<f64> = m.mu.iter().map(|x| -x).collect();
    objective.push(1.0);
    let mut lp = LinearProgram::maximize(objective);
    lp.free_var(cols);
    for i in 0..n {
        let mut row: Vec<f64> = (0..cols).map(|j| -m.lambda[(i, j)]).collect();
        row.push(1.0);
        lp.constraint(row, Sense::Le, 0.0)?;
    }
    let mut simplex = vec![1.0; cols];
    simplex.push(0.0);
    lp.constraint(simplex, Sense::Eq, 1.0)?;
    let sol = lp.solve()?;
    let mut weights = sol.x;
    weights.truncate(cols);
    clean_simplex(&mut weights);
    Ok(LpStrategy { weights, value: sol.value })
}

/// Solves the dual `min w` subject to `(alpha' Lambda)_j - w <= mu_j`, `sum alpha = 1`, `alpha >= 0`.
///
/// The returned value is `w*`, which equals the primal value under strong duality.
pub fn solve_attacker_dual(m: &GameMatrices) -> Result<LpStrategy> {
    let n = m.levels();
    let mut objective = vec![0.0; n];
    objective.push(-1.0);
    let mut lp = LinearProgram::maximize(objective);
    lp.free_var(n);
    for j in 0..m.lambda.ncols() {
        let mut row: Vec<f64> = (0..n).map(|i| m.lambda[(i, j)]).collect();
        row.push(-1.0);
        lp.constraint(row, Sense::Le, m.mu[j])?;
    }
    let mut simplex = vec![1.0; n];
    simplex.push(0.0);
    lp.constraint(simplex, Sense::Eq, 1.0)?;
    let sol = lp.solve()?;
    let mut weights = sol.x;
    weights.truncate(n);
    clean_simplex(&mut weights);
    Ok(LpStrategy { weights, value: -sol.value })
}

/// Largest `|slack * weight|` over both LPs at the given primal and dual points.
pub fn complementary_slackness(m: &GameMatrices, beta: &[f64], alpha: &[f64]) -> f64 {
    let (n, k) = m.lambda.shape();
    let rows: Vec<f64> = (0..n).map(|i| (0..k).map(|j| m.lambda[(i, j)] * beta[j]).sum()).collect();
    let z = rows.iter().copied().fold(f64::INFINITY, f64::min);
    let cols: Vec<f64> = (0..k).map(|j| (0..n).map(|i| alpha[i] * m.lambda[(i, j)]).sum()).collect();
    let w = (0..k).map(|j| cols[j] - m.mu[j]).fold(f64::NEG_INFINITY, f64::max);
    let primal = (0..n).map(|i| (alpha[i] * (rows[i] - z)).abs());
    let dual = (0..k).map(|j| (beta[j] * (m.mu[j] + w - cols[j])).abs());
    primal.chain(dual).fold(0.0, f64::max)
}

/// The defender's optimal mixture over all `2^|V|` classifiers and its value.
#[derive(Debug, Clone)]
pub struct FullGameSolution {
    pub value: f64,
    /// Support of the optimal mixture.
    pub strategy: ClassifierMix,
}

/// Value of the zero-sum-equivalent game over every classifier: `max_beta min_v U^D(v, beta)`.
pub fn full_game_value(spec: &GameSpec) -> Result<f64> {
    Ok(full_game_solution(spec)?.value)
}

pub fn full_game_solution(spec: &GameSpec) -> Result<FullGameSolution> {
    let n = spec.len();
    if n > FULL_GAME_LIMIT {
        return Err(Error::SizeLimit { what: "attack vectors", size: n, limit: FULL_GAME_LIMIT });
    }
    let classifiers: Vec<Classifier> = (0..1u64 << n).map(|mask| Classifier::from_mask(n, mask)).collect();
    let k = classifiers.len();
    let mut objective = vec![0.0; k];
    objective.push(1.0);
    let mut lp = LinearProgram::maximize(objective);
    lp.free_var(k);
    for v in 0..n {
        let mut row: Vec<f64> = classifiers.iter().map(|c| -pure_payoffs_at(spec, v, c).1).collect();
        row.push(1.0);
        lp.constraint(row, Sense::Le, 0.0)?;
    }
    let mut simplex = vec![1.0; k];
    simplex.push(0.0);
    lp.constraint(simplex, Sense::Eq, 1.0)?;
    let sol = lp.solve()?;
    let mut weights = sol.x;
    weights.truncate(k);
    clean_simplex(&mut weights);
    let (support, w): (Vec<Classifier>, Vec<f64>) =
        classifiers.into_iter().zip(weights).filter(|(_, w)| *w > 0.0).unzip();
    let total: f64 = w.iter().sum();
    let w = w.into_iter().map(|x| x / total).collect();
    Ok(FullGameSolution { value: sol.value, strategy: ClassifierMix::new(support, w)? })
}

/// Zeroes round-off negatives and renormalizes.
fn clean_simplex(w: &mut [f64]) {
    for x in w.iter_mut() {
        if *x < 0.0 {
            *x = 0.0;
        }
    }
    let total: f64 = w.iter().sum();
    if total > 0.0 {
        for x in w.iter_mut() {
            *x /= total;
        }
    }
}
