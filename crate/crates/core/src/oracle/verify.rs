//! Best-response certification of candidate equilibria.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{
    check_simplex, defender_best_response_weights, payoffs_from_detection, ClassifierMix, GameSpec, MixedStrategy,
};
use crate::reduction::{reduce, threshold_detection_profile, ReducedGame};
use crate::solver::{build_matrices, EquilibriumSet};

use super::solve_defender_lp;

pub const DEFAULT_VERIFY_TOL: f64 = 1e-9;

/// Largest gap tolerated between the closed-form value and the LP value.
pub const VALUE_GAP_TOL: f64 = 1e-7;

/// Outcome of checking a strategy pair against every pure deviation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    /// `max_v U^A(v, beta) - U^A(alpha, beta)`.
    pub attacker_residual: f64,
    /// `max_{c threshold} U^D(alpha, c) - U^D(alpha, beta)`.
    pub defender_residual: f64,
    /// Same as `defender_residual` but over every classifier; only for full specs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unrestricted_defender_residual: Option<f64>,
    /// `|closed-form value - LP value|`, when an equilibrium set was certified.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_value_gap: Option<f64>,
    pub tol: f64,
    pub passed: bool,
}

impl VerificationReport {
    fn new(attacker_residual: f64, defender_residual: f64, tol: f64) -> Self {
        let passed = attacker_residual <= tol && defender_residual <= tol;
        Self {
            attacker_residual,
            defender_residual,
            unrestricted_defender_residual: None,
            oracle_value_gap: None,
            tol,
            passed,
        }
    }

    /// Keeps the worse residuals of `self` and `other`.
    fn merge(&mut self, other: &VerificationReport) {
        self.attacker_residual = self.attacker_residual.max(other.attacker_residual);
        self.defender_residual = self.defender_residual.max(other.defender_residual);
        self.passed &= other.passed;
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("tolerance must be positive (got {tol})")))
    }
}

/// Checks `(alpha, beta)` on the reduced game: `alpha` over levels, `beta` over thresholds.
pub fn verify_ne_reduced(reduced: &ReducedGame, alpha: &[f64], beta: &[f64], tol: f64) -> Result<VerificationReport> {
    check_tol(tol)?;
    let n = reduced.len();
    if alpha.len() != n || beta.len() != n + 1 {
        return Err(Error::InvalidInput(format!(
            "expected {n} attacker and {} defender weights, got {} and {}",
            n + 1,
            alpha.len(),
            beta.len()
        )));
    }
    check_simplex("attacker strategy", alpha)?;
    check_simplex("defender strategy", beta)?;

    let c_d = reduced.params().detection_cost;
    let pd = threshold_detection_profile(beta);
    let (ua, ud) = reduced.payoffs_with_profile(alpha, pd.values());
    let best_row = reduced
        .rewards()
        .iter()
        .zip(pd.values())
        .map(|(r, p)| r - c_d * p)
        .fold(f64::NEG_INFINITY, f64::max);
    let best_column = (0..=n)
        .map(|j| {
            let flags: Vec<f64> = (0..n).map(|i| if i >= j { 1.0 } else { 0.0 }).collect();
            reduced.payoffs_with_profile(alpha, &flags).1
        })
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(VerificationReport::new(best_row - ua, best_column - ud, tol))
}

/// Checks `(alpha, beta)` on the full game.
///
/// The defender residual ranges over threshold classifiers at every distinct
/// reward plus never-classify; the unrestricted residual ranges over all
/// classifiers.
pub fn verify_ne(spec: &GameSpec, alpha: &MixedStrategy, beta: &ClassifierMix, tol: f64) -> Result<VerificationReport> {
    check_tol(tol)?;
    let a = spec.align(alpha)?;
    check_simplex("attacker strategy", &a)?;
    if beta.vector_count() != spec.len() {
        return Err(Error::InvalidInput(format!(
            "defender strategy covers {} vectors, game has {}",
            beta.vector_count(),
            spec.len()
        )));
    }
    let c_d = spec.params().detection_cost;
    let pd = beta.detection_probabilities();
    let (ua, ud) = payoffs_from_detection(spec, &a, &pd);
    let best_row = spec
        .rewards()
        .iter()
        .zip(&pd)
        .map(|(r, p)| r - c_d * p)
        .fold(f64::NEG_INFINITY, f64::max);

    let reduced = reduce(spec);
    let levels = reduced.vector_levels().unwrap_or_default();
    let best_threshold = (0..=reduced.len())
        .map(|j| {
            let flags: Vec<f64> = levels.iter().map(|&l| if l >= j { 1.0 } else { 0.0 }).collect();
            payoffs_from_detection(spec, &a, &flags).1
        })
        .fold(f64::NEG_INFINITY, f64::max);

    let best = defender_best_response_weights(spec, &a);
    let flags: Vec<f64> = best.detects().iter().map(|&d| if d { 1.0 } else { 0.0 }).collect();
    let unrestricted = payoffs_from_detection(spec, &a, &flags).1 - ud;

    let mut report = VerificationReport::new(best_row - ua, best_threshold - ud, tol);
    report.unrestricted_defender_residual = Some(unrestricted);
    Ok(report)
}

/// Verifies every pairing of vertices in `set` and compares its value with the LP oracle.
pub fn certify(reduced: &ReducedGame, set: &EquilibriumSet, tol: f64) -> Result<VerificationReport> {
    let mut report: Option<VerificationReport> = None;
    for a in &set.alpha_vertices {
        for b in &set.beta_vertices {
            let r = verify_ne_reduced(reduced, a, b, tol)?;
            match report.as_mut() {
                Some(acc) => acc.merge(&r),
                None => report = Some(r),
            }
        }
    }
    let mut report = report.ok_or_else(|| Error::Internal("equilibrium set has no vertices".into()))?;
    let lp = solve_defender_lp(&build_matrices(reduced, set.epsilon)?)?;
    let gap = (lp.value - set.lp_value).abs();
    report.oracle_value_gap = Some(gap);
    report.passed &= gap <= VALUE_GAP_TOL;
    Ok(report)
}
