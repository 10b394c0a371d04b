//! Closed-form computation of every Nash equilibrium of the reduced game.
//!
//! The reduced game is best-response equivalent to a zero-sum game whose
//! defender payoff matrix is `Lambda - 1 mu'`. The defender's equilibrium
//! strategies are the optimal solutions of the LP
//! `max_beta min[Lambda beta] - mu' beta` over the simplex. Every optimal
//! vertex has the same shape: zero weight below some start index `s`,
//! interior weights `(r_i - r_{i-1}) / c_d` from `s + 1` up to the top
//! level, and the leftover mass either on threshold `s` (type I) or on
//! never-classify (type II). Sweeping `s` over both types finds every optimal
//! vertex in `O(n^2)`; the attacker's strategies then follow from
//! complementary slackness.

use std::cmp::Ordering;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{GameSpec, MixedStrategy};
use crate::reduction::{expand_alpha, reduce, threshold_detection_profile, ReducedGame, WEIGHT_TOL};

pub const DEFAULT_EPSILON: f64 = 1.0;

/// Relative tolerance separating the defender values of competing candidates.
pub const DEFAULT_TIE_TOL: f64 = 1e-9;

/// Slack allowed when checking a type I boundary weight against its upper bound.
const FEASIBILITY_TOL: f64 = 1e-12;

/// Tolerance used to decide which rows of `Lambda beta` attain the minimum.
const TIGHT_TOL: f64 = 1e-10;

/// `Equal` iff `|a - b| <= tol * max(1, |a|, |b|)`.
pub fn tie_compare(a: f64, b: f64, tol: f64) -> Ordering {
    let scale = 1f64.max(a.abs()).max(b.abs());
    if (a - b).abs() <= tol * scale {
        Ordering::Equal
    } else if a < b {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Cost matrices of the reduced game.
///
/// Rows are reward levels, columns are thresholds at each level followed by
/// never-classify.
#[derive(Debug, Clone, PartialEq)]
pub struct GameMatrices {
    /// `c_d 1[r_i >= r_j] - r_i`: the attacker's cost.
    pub lambda_tilde: DMatrix<f64>,
    /// `lambda_tilde + (r_max + epsilon)`, strictly positive.
    pub lambda: DMatrix<f64>,
    pub epsilon: f64,
    /// `mu_j = ((1-p)/p) c_fa sum_{k >= j} P_N(r_k)`, with a trailing zero.
    pub mu: DVector<f64>,
}

impl GameMatrices {
    /// The constant `r_max + epsilon` added to every entry of `lambda_tilde`.
    pub fn shift(&self) -> f64 {
        self.lambda[(0, 0)] - self.lambda_tilde[(0, 0)]
    }

    /// `Lambda - 1 mu'`, the defender's payoff matrix in the equivalent zero-sum game.
    pub fn lambda_eq(&self) -> DMatrix<f64> {
        let mut m = self.lambda.clone();
        for j in 0..m.ncols() {
            for i in 0..m.nrows() {
                m[(i, j)] -= self.mu[j];
            }
        }
        m
    }

    pub fn levels(&self) -> usize {
        self.lambda.nrows()
    }
}

/// Builds `Lambda~`, `Lambda` and `mu` for the reduced game.
pub fn build_matrices(reduced: &ReducedGame, epsilon: f64) -> Result<GameMatrices> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::InvalidInput(format!("epsilon must be positive (got {epsilon})")));
    }
    let c_d = reduced.params().detection_cost;
    if c_d <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "the solver needs a positive detection cost (got c_d = {c_d})"
        )));
    }
    let n = reduced.len();
    let r = reduced.rewards();
    let shift = r[n - 1] + epsilon;
    let lambda_tilde = DMatrix::from_fn(n, n + 1, |i, j| if i >= j { c_d - r[i] } else { -r[i] });
    let lambda = lambda_tilde.add_scalar(shift);

    let scale = reduced.params().false_alarm_scale();
    let mut mu = DVector::zeros(n + 1);
    let mut tail = 0.0;
    for i in (0..n).rev() {
        tail += reduced.noise()[i];
        mu[i] = scale * tail;
    }
    for i in 0..n {
        if reduced.noise()[i] <= 0.0 || mu[i] <= mu[i + 1] {
            return Err(Error::ZeroNoiseMass { level: i + 1, reward: r[i] });
        }
    }
    Ok(GameMatrices { lambda_tilde, lambda, epsilon, mu })
}

/// Where a candidate vertex puts the mass not used by the interior weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexType {
    /// On the threshold at the start index.
    TypeI,
    /// On never-classify.
    TypeII,
}

/// A feasible candidate produced by [`EquilibriumSolver::compute_beta`].
#[derive(Debug, Clone, PartialEq)]
pub struct BetaCandidate {
    /// 1-based start index.
    pub s: usize,
    pub vertex_type: VertexType,
    pub beta: Vec<f64>,
    /// `min[Lambda beta] - mu' beta`.
    pub value: f64,
}

/// Which of the four equilibrium shapes the game has.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EquilibriumCase {
    /// Unique NE; boundary defender weight on threshold `k`, none on never-classify.
    #[serde(rename = "i")]
    I,
    /// Unique NE; boundary defender weight on never-classify.
    #[serde(rename = "ii")]
    II,
    /// Unique degenerate defender strategy; the attacker's weight on level `k` ranges over an interval.
    #[serde(rename = "iii")]
    III,
    /// Two defender vertices; unique attacker strategy.
    #[serde(rename = "iv")]
    IV,
}

impl EquilibriumCase {
    pub fn tag(&self) -> &'static str {
        match self {
            EquilibriumCase::I => "i",
            EquilibriumCase::II => "ii",
            EquilibriumCase::III => "iii",
            EquilibriumCase::IV => "iv",
        }
    }
}

/// The complete equilibrium set of a reduced game.
///
/// Every pairing of a point in the convex hull of `beta_vertices` with a
/// point in the convex hull of `alpha_vertices` is a Nash equilibrium, and
/// those are all of them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquilibriumSet {
    pub case: EquilibriumCase,
    /// 1-based index of the first level in the supports.
    pub k: usize,
    /// Defender strategies over the `n + 1` thresholds.
    pub beta_vertices: Vec<Vec<f64>>,
    /// Attacker strategies over the `n` reward levels.
    pub alpha_vertices: Vec<Vec<f64>>,
    /// The defender's equilibrium payoff `U^D`, identical across the set.
    pub defender_value: f64,
    /// `max_beta min[Lambda beta] - mu' beta`, the same value in `Lambda` units.
    pub lp_value: f64,
    /// Smallest and largest attacker payoff over the set.
    pub attacker_payoff_range: (f64, f64),
    pub epsilon: f64,
}

impl EquilibriumSet {
    pub fn is_singleton(&self) -> bool {
        self.beta_vertices.len() == 1 && self.alpha_vertices.len() == 1
    }

    /// Attacker payoff for reporting: the value itself, or the midpoint of the range.
    pub fn attacker_payoff(&self) -> f64 {
        0.5 * (self.attacker_payoff_range.0 + self.attacker_payoff_range.1)
    }

    /// Average of the defender vertices, a point in the relative interior of the set.
    pub fn beta_centroid(&self) -> Vec<f64> {
        centroid(&self.beta_vertices)
    }

    pub fn alpha_centroid(&self) -> Vec<f64> {
        centroid(&self.alpha_vertices)
    }
}

fn centroid(vertices: &[Vec<f64>]) -> Vec<f64> {
    let m = vertices.len() as f64;
    let mut out = vec![0.0; vertices[0].len()];
    for v in vertices {
        for (o, x) in out.iter_mut().zip(v) {
            *o += x / m;
        }
    }
    out
}

/// Holds a reduced game with its matrices and runs the candidate sweep.
#[derive(Debug, Clone)]
pub struct EquilibriumSolver<'a> {
    reduced: &'a ReducedGame,
    matrices: GameMatrices,
    tie_tol: f64,
}

impl<'a> EquilibriumSolver<'a> {
    pub fn new(reduced: &'a ReducedGame, epsilon: f64) -> Result<Self> {
        let matrices = build_matrices(reduced, epsilon)?;
        Ok(Self { reduced, matrices, tie_tol: DEFAULT_TIE_TOL })
    }

    pub fn with_tie_tolerance(mut self, tol: f64) -> Result<Self> {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Error::InvalidInput(format!("tie tolerance must be positive (got {tol})")));
        }
        self.tie_tol = tol;
        Ok(self)
    }

    pub fn matrices(&self) -> &GameMatrices {
        &self.matrices
    }

    /// `Lambda beta`, using the prefix structure of the threshold columns.
    pub fn lambda_times(&self, beta: &[f64]) -> Vec<f64> {
        let c_d = self.reduced.params().detection_cost;
        let shift = self.matrices.shift();
        let pd = threshold_detection_profile(beta);
        let total: f64 = beta.iter().sum();
        pd.values()
            .iter()
            .zip(self.reduced.rewards())
            .map(|(p, r)| c_d * p + (shift - r) * total)
            .collect()
    }

    /// `min[Lambda beta] - mu' beta`.
    pub fn defender_objective(&self, beta: &[f64]) -> f64 {
        let min = self.lambda_times(beta).into_iter().fold(f64::INFINITY, f64::min);
        let penalty: f64 = self.matrices.mu.iter().zip(beta).map(|(m, b)| m * b).sum();
        min - penalty
    }

    /// Candidate vertex with start index `s` (1-based), or `None` if infeasible.
    ///
    /// Interior weights `(r_i - r_{i-1}) / c_d` sit on thresholds `s+1..=n`.
    /// The remainder goes to threshold `s` (type I) or never-classify (type II).
    /// A negative remainder is infeasible, and so is a type I remainder above
    /// `(r_s - r_{s-1}) / c_d` for `s >= 2`, which would make row `s - 1` the
    /// attacker's best response.
    pub fn compute_beta(&self, s: usize, vertex_type: VertexType) -> Result<Option<BetaCandidate>> {
        let n = self.reduced.len();
        if s == 0 || s > n {
            return Err(Error::InvalidInput(format!("start index {s} outside 1..={n}")));
        }
        let r = self.reduced.rewards();
        let c_d = self.reduced.params().detection_cost;
        let mut beta = vec![0.0; n + 1];
        // level i (1-based) lives at beta[i - 1]
        for i in (s + 1)..=n {
            beta[i - 1] = (r[i - 1] - r[i - 2]) / c_d;
        }
        let interior: f64 = beta.iter().sum();
        let remainder = 1.0 - interior;
        if remainder < -FEASIBILITY_TOL {
            return Ok(None);
        }
        let remainder = remainder.max(0.0);
        match vertex_type {
            VertexType::TypeI => {
                if s >= 2 && remainder > (r[s - 1] - r[s - 2]) / c_d + FEASIBILITY_TOL {
                    return Ok(None);
                }
                beta[s - 1] = remainder;
            }
            VertexType::TypeII => beta[n] = remainder,
        }
        let value = self.defender_objective(&beta);
        Ok(Some(BetaCandidate { s, vertex_type, beta, value }))
    }

    /// All feasible candidates, ordered by `s` and then type.
    pub fn candidates(&self) -> Result<Vec<BetaCandidate>> {
        let mut out = Vec::with_capacity(2 * self.reduced.len());
        for s in 1..=self.reduced.len() {
            for t in [VertexType::TypeI, VertexType::TypeII] {
                if let Some(c) = self.compute_beta(s, t)? {
                    out.push(c);
                }
            }
        }
        Ok(out)
    }

    /// First 1-based row at which `Lambda beta` attains its minimum.
    pub fn tight_start(&self, beta: &[f64]) -> usize {
        let rows = self.lambda_times(beta);
        let min = rows.iter().copied().fold(f64::INFINITY, f64::min);
        rows.iter().position(|&v| tie_compare(v, min, TIGHT_TOL) == Ordering::Equal).map_or(1, |i| i + 1)
    }

    pub fn compute_all_ne(&self) -> Result<EquilibriumSet> {
        let candidates = self.candidates()?;
        let best = candidates
            .iter()
            .map(|c| c.value)
            .fold(f64::NEG_INFINITY, f64::max);
        if !best.is_finite() {
            return Err(Error::Internal("no feasible candidate vertex".into()));
        }

        // Distinct optimal vertices; the same vector can come out of several (s, type) pairs.
        let mut vertices: Vec<Vec<f64>> = Vec::new();
        for c in candidates.iter().filter(|c| tie_compare(c.value, best, self.tie_tol) == Ordering::Equal) {
            let duplicate = vertices.iter().any(|v| {
                v.iter().zip(&c.beta).all(|(a, b)| (a - b).abs() <= WEIGHT_TOL)
            });
            if !duplicate {
                vertices.push(c.beta.clone());
            }
        }
        if vertices.len() > 2 {
            return Err(Error::Internal(format!(
                "{} distinct optimal defender vertices; at most two are possible",
                vertices.len()
            )));
        }

        let n = self.reduced.len();
        let k = vertices.iter().map(|b| self.tight_start(b)).max().unwrap_or(1);
        let on_start = vertices.iter().any(|b| b[k - 1] > WEIGHT_TOL);
        let on_never = vertices.iter().any(|b| b[n] > WEIGHT_TOL);

        let case = match (vertices.len(), on_start, on_never) {
            (2, _, _) => EquilibriumCase::IV,
            (_, true, false) => EquilibriumCase::I,
            (_, false, true) => EquilibriumCase::II,
            (_, false, false) => EquilibriumCase::III,
            (_, true, true) => {
                return Err(Error::Internal(format!(
                    "single optimal vertex with mass on both threshold {k} and never-classify"
                )))
            }
        };
        let alpha_vertices = self.compute_alpha(k, on_start, on_never)?;

        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        let mut defender_value = None;
        for b in &vertices {
            for a in &alpha_vertices {
                let (ua, ud) = self.reduced.payoffs(a, b);
                lo = lo.min(ua);
                hi = hi.max(ua);
                defender_value.get_or_insert(ud);
            }
        }
        if tie_compare(lo, hi, 1e-12) == Ordering::Equal {
            hi = lo;
        }

        Ok(EquilibriumSet {
            case,
            k,
            beta_vertices: vertices,
            alpha_vertices,
            defender_value: defender_value.unwrap_or(f64::NAN),
            lp_value: best,
            attacker_payoff_range: (lo, hi),
            epsilon: self.matrices.epsilon,
        })
    }

    /// Attacker equilibrium strategies given the defender's support structure.
    ///
    /// Levels strictly between `k` and `n` carry `((1-p)/p) (c_fa/c_d) P_N(r_i)`.
    /// The boundary weights follow from which boundary columns the defender
    /// uses: a positive weight on threshold `k` pins `alpha_k` to the formula,
    /// positive weight on never-classify pins `alpha_n`, and the free one
    /// absorbs the rest. With neither, `alpha_k` ranges over
    /// `[0, min(f P_N(r_k), 1 - sum_interior - f P_N(r_n))]`: the upper end keeps
    /// never-classify from beating the top threshold.
    fn compute_alpha(&self, k: usize, on_start: bool, on_never: bool) -> Result<Vec<Vec<f64>>> {
        let n = self.reduced.len();
        let factor = self.reduced.params().mimicry_factor();
        let proportional = |i: usize| factor * self.reduced.noise()[i - 1];
        let mut base = vec![0.0; n];
        if k == n {
            base[n - 1] = 1.0;
            return Ok(vec![base]);
        }
        for i in (k + 1)..n {
            base[i - 1] = proportional(i);
        }
        let interior: f64 = base.iter().sum();

        let mut out = Vec::new();
        if on_start {
            base[k - 1] = proportional(k);
            base[n - 1] = 1.0 - interior - base[k - 1];
            out.push(base);
        } else if on_never {
            base[n - 1] = proportional(n);
            base[k - 1] = 1.0 - interior - base[n - 1];
            out.push(base);
        } else {
            let upper = proportional(k).min(1.0 - interior - proportional(n));
            if upper < -1e-9 {
                return Err(Error::Internal(format!(
                    "empty attacker weight interval at level {k} (upper end {upper})"
                )));
            }
            let upper = upper.max(0.0);
            let mut low = base.clone();
            low[n - 1] = 1.0 - interior;
            out.push(low);
            if upper > WEIGHT_TOL {
                let mut high = base;
                high[k - 1] = upper;
                high[n - 1] = 1.0 - interior - upper;
                out.push(high);
            }
        }
        for a in &mut out {
            for (i, w) in a.iter_mut().enumerate() {
                if *w < -1e-9 {
                    return Err(Error::Internal(format!("negative attacker weight {w} at level {}", i + 1)));
                }
                *w = w.max(0.0);
            }
        }
        Ok(out)
    }
}

/// Every NE of the reduced game.
pub fn compute_all_ne(reduced: &ReducedGame, epsilon: f64) -> Result<EquilibriumSet> {
    EquilibriumSolver::new(reduced, epsilon)?.compute_all_ne()
}

/// Equilibria of a full game: the reduced solution plus attacker strategies
/// spread back over the attack vectors.
#[derive(Debug, Clone)]
pub struct SpecSolution {
    pub reduced: ReducedGame,
    pub equilibria: EquilibriumSet,
    /// One entry per reduced attacker vertex, over the spec's vectors.
    pub alpha_vertices: Vec<MixedStrategy>,
}

pub fn solve_spec(spec: &GameSpec, epsilon: f64) -> Result<SpecSolution> {
    let reduced = reduce(spec);
    let equilibria = compute_all_ne(&reduced, epsilon)?;
    let profile = threshold_detection_profile(&equilibria.beta_centroid());
    let alpha_vertices = equilibria
        .alpha_vertices
        .iter()
        .map(|a| expand_alpha(&reduced, a, &profile))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpecSolution { reduced, equilibria, alpha_vertices })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::GameParams;
    use approx::assert_abs_diff_eq;

    fn game(rewards: &[f64], noise: &[f64], p: f64, c_d: f64, c_fa: f64) -> ReducedGame {
        ReducedGame::new(rewards.to_vec(), noise.to_vec(), GameParams::new(p, c_d, c_fa).unwrap()).unwrap()
    }

    #[test]
    fn matrices_by_definition() {
        let g = game(&[1.0, 2.0], &[0.4, 0.6], 0.5, 3.0, 1.0);
        let m = build_matrices(&g, 1.0).unwrap();
        assert_eq!(m.lambda_tilde, DMatrix::from_row_slice(2, 3, &[2.0, -1.0, -1.0, 1.0, 1.0, -2.0]));
        assert_eq!(m.lambda, DMatrix::from_row_slice(2, 3, &[5.0, 2.0, 2.0, 4.0, 4.0, 1.0]));
        assert_abs_diff_eq!(m.mu[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.mu[1], 0.6, epsilon = 1e-15);
        assert_eq!(m.mu[2], 0.0);
        assert_eq!(m.shift(), 3.0);
    }

    #[test]
    fn single_level_matrix() {
        let g = game(&[1.0], &[1.0], 0.5, 2.0, 1.0);
        let m = build_matrices(&g, 1.0).unwrap();
        assert_eq!(m.lambda, DMatrix::from_row_slice(1, 2, &[3.0, 1.0]));
    }

    #[test]
    fn matrices_reject_bad_input() {
        let g = game(&[1.0, 2.0], &[0.4, 0.6], 0.5, 3.0, 1.0);
        assert!(matches!(build_matrices(&g, 0.0), Err(Error::InvalidInput(_))));
        assert!(matches!(build_matrices(&g, -1.0), Err(Error::InvalidInput(_))));
        let z = game(&[1.0, 2.0], &[1.0, 0.0], 0.5, 3.0, 1.0);
        assert!(matches!(build_matrices(&z, 1.0), Err(Error::ZeroNoiseMass { level: 2, .. })));
    }

    #[test]
    fn lambda_eq_subtracts_mu_per_column() {
        let g = game(&[1.0, 2.0], &[0.4, 0.6], 0.5, 3.0, 1.0);
        let m = build_matrices(&g, 1.0).unwrap();
        let eq = m.lambda_eq();
        assert_abs_diff_eq!(eq[(0, 0)], 4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(eq[(1, 1)], 3.4, epsilon = 1e-15);
        assert_abs_diff_eq!(eq[(1, 2)], 1.0, epsilon = 1e-15);
    }

    #[test]
    fn type_two_candidate_arithmetic() {
        let g = game(&[1.0, 2.0, 4.0], &[0.2, 0.3, 0.5], 0.5, 10.0, 1.0);
        let solver = EquilibriumSolver::new(&g, 1.0).unwrap();
        let c = solver.compute_beta(1, VertexType::TypeII).unwrap().unwrap();
        let expected = [0.0, 0.1, 0.2, 0.7];
        for (b, e) in c.beta.iter().zip(expected) {
            assert_abs_diff_eq!(*b, e, epsilon = 1e-15);
        }
    }

    #[test]
    fn interior_weight_can_consume_everything() {
        let g = game(&[1.0, 2.0], &[0.5, 0.5], 0.5, 1.0, 1.0);
        let solver = EquilibriumSolver::new(&g, 1.0).unwrap();
        let c = solver.compute_beta(1, VertexType::TypeI).unwrap().unwrap();
        assert_eq!(c.beta, vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn negative_remainder_is_infeasible() {
        let g = game(&[1.0, 5.0], &[0.5, 0.5], 0.5, 1.0, 1.0);
        let solver = EquilibriumSolver::new(&g, 1.0).unwrap();
        assert!(solver.compute_beta(1, VertexType::TypeI).unwrap().is_none());
        assert!(solver.compute_beta(1, VertexType::TypeII).unwrap().is_none());
        assert!(solver.compute_beta(3, VertexType::TypeI).is_err());
        assert!(solver.compute_beta(0, VertexType::TypeI).is_err());
    }

    #[test]
    fn oversized_type_one_boundary_is_infeasible() {
        // s = 2: remainder 1 > (r_2 - r_1)/c_d = 0.1
        let g = game(&[1.0, 2.0], &[0.5, 0.5], 0.5, 10.0, 1.0);
        let solver = EquilibriumSolver::new(&g, 1.0).unwrap();
        assert!(solver.compute_beta(2, VertexType::TypeI).unwrap().is_none());
    }

    #[test]
    fn tie_comparison() {
        assert_eq!(tie_compare(2.0, 1.0, 1e-9), Ordering::Greater);
        assert_eq!(tie_compare(1.0, 1.0 + 1e-12, 1e-9), Ordering::Equal);
        let eps = 1.0;
        assert_eq!(tie_compare(eps, eps * (1.0 + 1e-6), 1e-9), Ordering::Less);
    }

    #[test]
    fn single_level_always_classifies() {
        let g = game(&[1.0], &[1.0], 0.5, 2.0, 1.0);
        let solver = EquilibriumSolver::new(&g, 1.0).unwrap();
        let t1 = solver.compute_beta(1, VertexType::TypeI).unwrap().unwrap();
        let t2 = solver.compute_beta(1, VertexType::TypeII).unwrap().unwrap();
        // c_d + eps - 1 versus eps
        assert_abs_diff_eq!(t1.value, 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(t2.value, 1.0, epsilon = 1e-15);
        let ne = solver.compute_all_ne().unwrap();
        assert_eq!(ne.case, EquilibriumCase::I);
        assert_eq!(ne.k, 1);
        assert_eq!(ne.beta_vertices, vec![vec![1.0, 0.0]]);
        assert_eq!(ne.alpha_vertices, vec![vec![1.0]]);
        assert_abs_diff_eq!(ne.defender_value, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn degenerate_case_interval_respects_top_threshold() {
        // feature-1 game of the two-feature study: the attacker weight on the
        // middle level may only go up to 1 - f P_N(top) = 0.64
        let g = game(&[4.1, 5.1, 6.1], &[0.49, 0.42, 0.09], 0.2, 1.0, 1.0);
        let ne = compute_all_ne(&g, 1.0).unwrap();
        assert_eq!(ne.case, EquilibriumCase::III);
        assert_eq!(ne.k, 2);
        assert_eq!(ne.beta_vertices, vec![vec![0.0, 0.0, 1.0, 0.0]]);
        assert_eq!(ne.alpha_vertices.len(), 2);
        assert_abs_diff_eq!(ne.alpha_vertices[0][2], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ne.alpha_vertices[1][1], 0.64, epsilon = 1e-12);
        assert_abs_diff_eq!(ne.alpha_vertices[1][2], 0.36, epsilon = 1e-12);
    }
}
