//! Binomial-noise games, parameter sweeps and the two-feature study.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{
    attacker_best_response, defender_best_response, mixed_payoffs, AttackVector, Classifier, ClassifierMix,
    GameParams, GameSpec, MixedStrategy, VectorEntry,
};
use crate::oracle::verify::certify;
use crate::reduction::{expand_alpha, reduce, threshold_detection_profile, ReducedGame};
use crate::solver::{compute_all_ne, solve_spec, EquilibriumSet};

/// Binomial non-attacker behaviour: `N` trials with success probability
/// `theta0`, and reward `i * reward_unit` for `i` attacks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BinomialNoiseSpec {
    pub trials: u32,
    pub theta0: f64,
    pub reward_unit: f64,
}

impl BinomialNoiseSpec {
    pub fn new(trials: u32, theta0: f64, reward_unit: f64) -> Result<Self> {
        let s = Self { trials, theta0, reward_unit };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidInput("binomial trial count N must be at least 1".into()));
        }
        if !(self.theta0.is_finite() && (0.0..=1.0).contains(&self.theta0)) {
            return Err(Error::InvalidInput(format!("theta0 must lie in (0, 1) (got {})", self.theta0)));
        }
        if self.theta0 == 0.0 || self.theta0 == 1.0 {
            let level = if self.theta0 == 0.0 { self.trials as usize + 1 } else { 1 };
            let reward = (level - 1) as f64 * self.reward_unit;
            return Err(Error::ZeroNoiseMass { level, reward });
        }
        if !(self.reward_unit.is_finite() && self.reward_unit > 0.0) {
            return Err(Error::InvalidInput(format!("reward unit c_a must be positive (got {})", self.reward_unit)));
        }
        Ok(())
    }

    pub fn rewards(&self) -> Vec<f64> {
        (0..=self.trials).map(|i| i as f64 * self.reward_unit).collect()
    }
}

/// Binomial pmf over `0..=n`.
///
/// Starts from the mode and walks outwards with the ratio
/// `pmf(k+1) / pmf(k) = (n-k)/(k+1) * theta/(1-theta)`, then normalizes, so no
/// factorials or large powers are formed.
pub fn binomial_pmf(n: u32, theta: f64) -> Result<Vec<f64>> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::InvalidInput(format!("binomial success probability must lie in (0, 1) (got {theta})")));
    }
    let n_us = n as usize;
    let mode = (((n as f64 + 1.0) * theta).floor() as usize).min(n_us);
    let odds = theta / (1.0 - theta);
    let mut pmf = vec![0.0; n_us + 1];
    pmf[mode] = 1.0;
    for k in mode..n_us {
        pmf[k + 1] = pmf[k] * (n_us - k) as f64 / (k + 1) as f64 * odds;
    }
    for k in (1..=mode).rev() {
        pmf[k - 1] = pmf[k] * k as f64 / (n_us - k + 1) as f64 / odds;
    }
    let total: f64 = pmf.iter().sum();
    for p in pmf.iter_mut() {
        *p /= total;
    }
    Ok(pmf)
}

/// Reduced game with rewards `0, c_a, ..., N c_a` and binomial noise.
pub fn binomial_game(noise: &BinomialNoiseSpec, params: GameParams) -> Result<ReducedGame> {
    noise.validate()?;
    params.validate()?;
    let pmf = binomial_pmf(noise.trials, noise.theta0)?;
    if let Some(level) = pmf.iter().position(|&p| p <= 0.0) {
        return Err(Error::ZeroNoiseMass { level: level + 1, reward: level as f64 * noise.reward_unit });
    }
    ReducedGame::new(noise.rewards(), pmf, params)
}

/// The reference single-feature binomial setup:
/// `c_a = 1, c_d = 120, p = 0.2, c_fa = 140, N = 100, theta0 = 0.2`.
pub fn reference_binomial_setup() -> (BinomialNoiseSpec, GameParams) {
    (
        BinomialNoiseSpec { trials: 100, theta0: 0.2, reward_unit: 1.0 },
        GameParams { prior: 0.2, detection_cost: 120.0, false_alarm_cost: 140.0 },
    )
}

/// Parameter varied by a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SweepParam {
    #[serde(rename = "c_a")]
    RewardUnit,
    #[serde(rename = "c_fa")]
    FalseAlarmCost,
    #[serde(rename = "c_d")]
    DetectionCost,
    #[serde(rename = "p")]
    Prior,
    #[serde(rename = "theta0")]
    Theta0,
}

impl SweepParam {
    pub fn name(&self) -> &'static str {
        match self {
            SweepParam::RewardUnit => "c_a",
            SweepParam::FalseAlarmCost => "c_fa",
            SweepParam::DetectionCost => "c_d",
            SweepParam::Prior => "p",
            SweepParam::Theta0 => "theta0",
        }
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "c_a" => Ok(SweepParam::RewardUnit),
            "c_fa" => Ok(SweepParam::FalseAlarmCost),
            "c_d" => Ok(SweepParam::DetectionCost),
            "p" => Ok(SweepParam::Prior),
            "theta0" => Ok(SweepParam::Theta0),
            other => Err(Error::InvalidInput(format!(
                "unknown sweep parameter `{other}` (expected one of c_a, c_fa, c_d, p, theta0)"
            ))),
        }
    }
}

/// Where the games of a sweep come from.
#[derive(Debug, Clone)]
pub enum GameSource {
    Binomial { noise: BinomialNoiseSpec, params: GameParams },
    Spec(GameSpec),
}

impl GameSource {
    pub fn params(&self) -> GameParams {
        match self {
            GameSource::Binomial { params, .. } => *params,
            GameSource::Spec(spec) => *spec.params(),
        }
    }

    pub fn reduced(&self) -> Result<ReducedGame> {
        match self {
            GameSource::Binomial { noise, params } => binomial_game(noise, *params),
            GameSource::Spec(spec) => Ok(reduce(spec)),
        }
    }

    /// The reduced game with `param` set to `value`.
    pub fn with_param(&self, param: SweepParam, value: f64) -> Result<ReducedGame> {
        let mut params = self.params();
        match param {
            SweepParam::FalseAlarmCost => params.false_alarm_cost = value,
            SweepParam::DetectionCost => params.detection_cost = value,
            SweepParam::Prior => params.prior = value,
            SweepParam::RewardUnit | SweepParam::Theta0 => {
                let GameSource::Binomial { noise, .. } = self else {
                    return Err(Error::InvalidInput(format!(
                        "parameter {param} can only be swept on a binomial game"
                    )));
                };
                let mut noise = *noise;
                if param == SweepParam::RewardUnit {
                    noise.reward_unit = value;
                } else {
                    noise.theta0 = value;
                }
                return binomial_game(&noise, params);
            }
        }
        params.validate()?;
        match self {
            GameSource::Binomial { noise, .. } => binomial_game(noise, params),
            GameSource::Spec(spec) => reduce(spec).with_params(params),
        }
    }
}

/// Solution at one grid point.
#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub reduced: ReducedGame,
    pub equilibria: EquilibriumSet,
    pub verified: bool,
}

impl SweepPoint {
    pub fn k(&self) -> usize {
        self.equilibria.k
    }

    pub fn attacker_payoff(&self) -> f64 {
        self.equilibria.attacker_payoff()
    }

    pub fn defender_payoff(&self) -> f64 {
        self.equilibria.defender_value
    }
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub value: f64,
    pub outcome: Result<SweepPoint>,
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub param: SweepParam,
    pub rows: Vec<SweepRow>,
}

/// Solves and certifies the game at every grid value; rows follow grid order.
pub fn sweep(source: &GameSource, param: SweepParam, grid: &[f64], epsilon: f64, tol: f64) -> SweepResult {
    let rows = grid
        .par_iter()
        .map(|&value| {
            let outcome = source.with_param(param, value).and_then(|reduced| {
                let equilibria = compute_all_ne(&reduced, epsilon)?;
                let verified = certify(&reduced, &equilibria, tol)?.passed;
                Ok(SweepPoint { reduced, equilibria, verified })
            });
            SweepRow { value, outcome }
        })
        .collect();
    SweepResult { param, rows }
}

/// Inclusive grid `lo, lo + step, ...` with `round((hi - lo) / step) + 1` points.
pub fn linear_grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite() && step.is_finite()) || step <= 0.0 || hi < lo {
        return Err(Error::InvalidInput(format!("invalid grid {lo}:{hi}:{step}")));
    }
    let count = ((hi - lo) / step).round() as usize + 1;
    if count > 1_000_000 {
        return Err(Error::SizeLimit { what: "grid points", size: count, limit: 1_000_000 });
    }
    Ok((0..count).map(|i| lo + i as f64 * step).collect())
}

/// Parameters of the two-feature study: attacks on a valuable server over
/// `trials` slots, combined with a low or high inactive-percentage scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MultiFeatureParams {
    pub trials: u32,
    pub reward_unit: f64,
    pub reward_low: f64,
    pub reward_high: f64,
    pub prior: f64,
    pub theta0: f64,
    /// Non-attacker probability of a low inactive percentage.
    pub theta_low: f64,
    pub detection_cost: f64,
    pub false_alarm_cost: f64,
}

impl Default for MultiFeatureParams {
    fn default() -> Self {
        Self {
            trials: 2,
            reward_unit: 1.0,
            reward_low: 2.0,
            reward_high: 4.1,
            prior: 0.2,
            theta0: 0.3,
            theta_low: 0.8,
            detection_cost: 1.0,
            false_alarm_cost: 1.0,
        }
    }
}

impl MultiFeatureParams {
    fn game_params(&self) -> Result<GameParams> {
        GameParams::new(self.prior, self.detection_cost, self.false_alarm_cost)
    }

    fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.theta_low) {
            return Err(Error::InvalidInput(format!("theta_low must lie in [0, 1] (got {})", self.theta_low)));
        }
        for (name, v) in [("c_low", self.reward_low), ("c_high", self.reward_high)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::InvalidInput(format!("{name} must be a nonnegative number (got {v})")));
            }
        }
        BinomialNoiseSpec { trials: self.trials, theta0: self.theta0, reward_unit: self.reward_unit }.validate()
    }
}

/// Vector id for `attacks` accesses with a low or high inactive percentage.
pub fn multi_feature_id(attacks: u32, high: bool) -> String {
    format!("a{attacks}-{}", if high { "high" } else { "low" })
}

/// The full two-feature game: `3 x 2` vectors for the default two slots.
pub fn multi_feature_spec(params: &MultiFeatureParams) -> Result<GameSpec> {
    params.validate()?;
    let pmf = binomial_pmf(params.trials, params.theta0)?;
    let mut entries = Vec::new();
    for a in 0..=params.trials {
        for high in [false, true] {
            let (bonus, share) = if high {
                (params.reward_high, 1.0 - params.theta_low)
            } else {
                (params.reward_low, params.theta_low)
            };
            entries.push(VectorEntry {
                vector: AttackVector::new(multi_feature_id(a, high), vec![a as i64, high as i64]),
                reward: a as f64 * params.reward_unit + bonus,
                noise: pmf[a as usize] * share,
            });
        }
    }
    GameSpec::new(entries, params.game_params()?)
}

/// One of the four information scenarios of the two-feature study.
#[derive(Debug, Clone)]
pub struct ScenarioResult {
    pub scenario: u8,
    pub attacker: MixedStrategy,
    pub defender: ClassifierMix,
    pub defender_payoff: f64,
    pub attacker_payoff: f64,
}

/// Runs the four scenarios.
///
/// 1. Both players see only the access count. The attacker uses only
///    high-percentage vectors and the defender thresholds on the access count.
/// 2. The defender best-responds over all classifiers of both features to the
///    scenario 1 attacker.
/// 3. The attacker best-responds to the scenario 2 classifier.
/// 4. Equilibrium of the full two-feature game.
///
/// Where an equilibrium set is not a singleton, its centroid is used.
pub fn multi_feature_study(params: &MultiFeatureParams, epsilon: f64) -> Result<Vec<ScenarioResult>> {
    let spec = multi_feature_spec(params)?;
    let ids: Vec<String> = spec.vectors().iter().map(|v| v.id.clone()).collect();

    let single = binomial_game(
        &BinomialNoiseSpec { trials: params.trials, theta0: params.theta0, reward_unit: params.reward_unit },
        params.game_params()?,
    )?;
    let single = ReducedGame::new(
        single.rewards().iter().map(|r| r + params.reward_high).collect(),
        single.noise().to_vec(),
        *single.params(),
    )?;
    let ne1 = compute_all_ne(&single, epsilon)?;
    let alpha1 = ne1.alpha_centroid();
    let beta1 = ne1.beta_centroid();

    let index = |a: u32, high: bool| spec.index_of(&multi_feature_id(a, high));
    let mut w1 = vec![0.0; spec.len()];
    for a in 0..=params.trials {
        w1[index(a, true)?] = alpha1[a as usize];
    }
    let attacker1 = MixedStrategy::new(ids.clone(), w1)?;
    let thresholds = (0..beta1.len())
        .map(|j| Classifier::from_flags(spec.vectors().iter().map(|v| v.features[0] as usize >= j).collect()))
        .collect();
    let defender1 = ClassifierMix::new(thresholds, beta1)?;

    let defender2 = ClassifierMix::pure(defender_best_response(&spec, &attacker1)?);
    let attacker3 = MixedStrategy::pure(ids, attacker_best_response(&spec, &defender2)?)?;

    let sol = solve_spec(&spec, epsilon)?;
    let profile = threshold_detection_profile(&sol.equilibria.beta_centroid());
    let attacker4 = expand_alpha(&sol.reduced, &sol.equilibria.alpha_centroid(), &profile)?;
    let defender4 = sol.reduced.expand_beta(&sol.equilibria.beta_centroid())?;

    let scenarios = [
        (1, attacker1.clone(), defender1),
        (2, attacker1, defender2.clone()),
        (3, attacker3, defender2),
        (4, attacker4, defender4),
    ];
    scenarios
        .into_iter()
        .map(|(scenario, attacker, defender)| {
            let (attacker_payoff, defender_payoff) = mixed_payoffs(&spec, &attacker, &defender)?;
            Ok(ScenarioResult { scenario, attacker, defender, defender_payoff, attacker_payoff })
        })
        .collect()
}
