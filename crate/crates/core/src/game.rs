//! The classification game between a strategic attacker and a defender.
//!
//! The attacker picks an attack vector `v` and earns `R(v)`, paying the
//! detection cost `c_d` whenever the defender's classifier flags `v`. The
//! defender loses what the attacker gains and additionally pays the scaled
//! false-alarm cost `((1-p)/p) * c_fa` for every unit of non-attacker mass she
//! flags. Everything here works on the full vector space; the reward-level
//! reduction lives in [`crate::reduction`].

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance used when ingesting probability vectors.
pub const PROB_TOL: f64 = 1e-12;

/// Tolerance for best-response tie detection.
pub const TIE_TOL: f64 = 1e-12;

/// Checks that `weights` is a probability vector. Inputs outside tolerance are
/// rejected, never renormalized.
pub fn check_simplex(what: &str, weights: &[f64]) -> Result<()> {
    if weights.is_empty() {
        return Err(Error::InvalidInput(format!("{what} is empty")));
    }
    for (i, &w) in weights.iter().enumerate() {
        if !w.is_finite() || !(-PROB_TOL..=1.0 + PROB_TOL).contains(&w) {
            return Err(Error::InvalidInput(format!("{what}[{i}] = {w} is not a probability")));
        }
    }
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > PROB_TOL {
        return Err(Error::NotNormalized { what: what.to_string(), sum });
    }
    Ok(())
}

fn nearly_equal(a: f64, b: f64) -> bool {
    (a - b).abs() <= TIE_TOL * 1f64.max(a.abs()).max(b.abs())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttackVector {
    pub id: String,
    pub features: Vec<i64>,
}

impl AttackVector {
    pub fn new(id: impl Into<String>, features: Vec<i64>) -> Self {
        Self { id: id.into(), features }
    }
}

/// Prior and cost parameters shared by the full and the reduced game.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GameParams {
    /// Probability that the agent is an attacker.
    pub prior: f64,
    /// Cost to the attacker when detected.
    pub detection_cost: f64,
    /// Cost to the defender per false alarm.
    pub false_alarm_cost: f64,
}

impl GameParams {
    pub fn new(prior: f64, detection_cost: f64, false_alarm_cost: f64) -> Result<Self> {
        let params = Self { prior, detection_cost, false_alarm_cost };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.prior.is_finite() || self.prior < 0.0 || self.prior > 1.0 {
            return Err(Error::InvalidInput(format!("prior p = {} is not a probability", self.prior)));
        }
        if self.prior == 0.0 || self.prior == 1.0 {
            return Err(Error::DegeneratePrior(self.prior));
        }
        if !self.detection_cost.is_finite() || self.detection_cost < 0.0 {
            return Err(Error::InvalidInput(format!(
                "detection cost c_d = {} must be finite and nonnegative",
                self.detection_cost
            )));
        }
        if !self.false_alarm_cost.is_finite() || self.false_alarm_cost < 0.0 {
            return Err(Error::InvalidInput(format!(
                "false alarm cost c_fa = {} must be finite and nonnegative",
                self.false_alarm_cost
            )));
        }
        Ok(())
    }

    /// `((1-p)/p) * c_fa`, the defender's cost per unit of flagged non-attacker mass.
    pub fn false_alarm_scale(&self) -> f64 {
        (1.0 - self.prior) / self.prior * self.false_alarm_cost
    }

    /// `((1-p)/p) * (c_fa/c_d)`: the attacker's equilibrium weight per unit of
    /// non-attacker mass on reward levels detected with probability in (0, 1).
    pub fn mimicry_factor(&self) -> f64 {
        self.false_alarm_scale() / self.detection_cost
    }
}

/// One attack vector together with its reward and non-attacker probability.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorEntry {
    pub vector: AttackVector,
    pub reward: f64,
    pub noise: f64,
}

/// The full game: attack vectors, reward function, non-attacker distribution,
/// costs and prior. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct GameSpec {
    vectors: Vec<AttackVector>,
    rewards: Vec<f64>,
    noise: Vec<f64>,
    params: GameParams,
    index: HashMap<String, usize>,
}

impl GameSpec {
    pub fn new(entries: Vec<VectorEntry>, params: GameParams) -> Result<Self> {
        params.validate()?;
        if entries.is_empty() {
            return Err(Error::InvalidInput("a game needs at least one attack vector".into()));
        }
        let dim = entries[0].vector.features.len();
        if dim == 0 {
            return Err(Error::InvalidInput("feature vectors must have dimension >= 1".into()));
        }
        let mut index = HashMap::with_capacity(entries.len());
        let mut vectors = Vec::with_capacity(entries.len());
        let mut rewards = Vec::with_capacity(entries.len());
        let mut noise = Vec::with_capacity(entries.len());
        for (i, e) in entries.into_iter().enumerate() {
            if e.vector.features.len() != dim {
                return Err(Error::InvalidInput(format!(
                    "vector `{}` has {} features, expected {dim}",
                    e.vector.id,
                    e.vector.features.len()
                )));
            }
            if !e.reward.is_finite() || e.reward < 0.0 {
                return Err(Error::InvalidInput(format!(
                    "reward of `{}` must be finite and nonnegative (got {})",
                    e.vector.id, e.reward
                )));
            }
            if index.insert(e.vector.id.clone(), i).is_some() {
                return Err(Error::InvalidInput(format!("duplicate vector id `{}`", e.vector.id)));
            }
            rewards.push(e.reward);
            noise.push(e.noise);
            vectors.push(e.vector);
        }
        check_simplex("non-attacker distribution", &noise)?;
        Ok(Self { vectors, rewards, noise, params, index })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[AttackVector] {
        &self.vectors
    }

    pub fn rewards(&self) -> &[f64] {
        &self.rewards
    }

    pub fn noise(&self) -> &[f64] {
        &self.noise
    }

    pub fn params(&self) -> &GameParams {
        &self.params
    }

    /// Same vectors and distribution under different costs or prior.
    pub fn with_params(&self, params: GameParams) -> Result<Self> {
        params.validate()?;
        Ok(Self { params, ..self.clone() })
    }

    pub fn entries(&self) -> Vec<VectorEntry> {
        (0..self.len())
            .map(|i| VectorEntry {
                vector: self.vectors[i].clone(),
                reward: self.rewards[i],
                noise: self.noise[i],
            })
            .collect()
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownVector(id.to_string()))
    }

    /// Maps a strategy labelled by vector ids onto the spec's vector order.
    /// Vectors absent from the strategy get weight zero.
    pub fn align(&self, alpha: &MixedStrategy) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.len()];
        let mut seen = vec![false; self.len()];
        for (label, &w) in alpha.labels().iter().zip(alpha.weights()) {
            let i = self.index_of(label)?;
            if seen[i] {
                return Err(Error::InvalidInput(format!("vector `{label}` listed twice")));
            }
            seen[i] = true;
            out[i] = w;
        }
        Ok(out)
    }

    /// Wraps a weight vector aligned with this spec as a labelled strategy.
    pub fn strategy(&self, weights: Vec<f64>) -> Result<MixedStrategy> {
        MixedStrategy::new(self.vectors.iter().map(|v| v.id.clone()).collect(), weights)
    }

    /// Non-attacker mass flagged by `c`.
    pub fn false_alarm_mass(&self, c: &Classifier) -> f64 {
        self.noise.iter().zip(c.detects()).filter(|(_, &d)| d).map(|(p, _)| p).sum()
    }

    fn check_classifier(&self, c: &Classifier) -> Result<()> {
        if c.len() != self.len() {
            return Err(Error::InvalidInput(format!(
                "classifier covers {} vectors, game has {}",
                c.len(),
                self.len()
            )));
        }
        Ok(())
    }
}

/// A deterministic classifier, stored as its detect-set (the vectors mapped to "attacker").
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Classifier {
    detect: Vec<bool>,
}

impl Classifier {
    pub fn from_flags(detect: Vec<bool>) -> Self {
        Self { detect }
    }

    pub fn detect_all(n: usize) -> Self {
        Self { detect: vec![true; n] }
    }

    pub fn detect_none(n: usize) -> Self {
        Self { detect: vec![false; n] }
    }

    /// Bit `i` of `mask` decides whether vector `i` is flagged.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Self { detect: (0..n).map(|i| mask >> i & 1 == 1).collect() }
    }

    pub fn from_ids(spec: &GameSpec, ids: &[&str]) -> Result<Self> {
        let mut detect = vec![false; spec.len()];
        for id in ids {
            detect[spec.index_of(id)?] = true;
        }
        Ok(Self { detect })
    }

    pub fn len(&self) -> usize {
        self.detect.len()
    }

    pub fn is_empty(&self) -> bool {
        self.detect.is_empty()
    }

    pub fn detects(&self) -> &[bool] {
        &self.detect
    }

    pub fn flags(&self, i: usize) -> bool {
        self.detect[i]
    }

    /// Ids of the flagged vectors, in spec order.
    pub fn detect_ids<'a>(&self, spec: &'a GameSpec) -> Vec<&'a str> {
        spec.vectors()
            .iter()
            .zip(&self.detect)
            .filter(|(_, &d)| d)
            .map(|(v, _)| v.id.as_str())
            .collect()
    }
}

/// A probability vector over a named, ordered strategy set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixedStrategy {
    labels: Vec<String>,
    weights: Vec<f64>,
}

impl MixedStrategy {
    pub fn new(labels: Vec<String>, weights: Vec<f64>) -> Result<Self> {
        if labels.len() != weights.len() {
            return Err(Error::InvalidInput(format!(
                "{} labels but {} weights",
                labels.len(),
                weights.len()
            )));
        }
        check_simplex("mixed strategy", &weights)?;
        Ok(Self { labels, weights })
    }

    pub fn pure(labels: Vec<String>, index: usize) -> Result<Self> {
        if index >= labels.len() {
            return Err(Error::InvalidInput(format!("pure strategy index {index} out of range")));
        }
        let mut weights = vec![0.0; labels.len()];
        weights[index] = 1.0;
        Self::new(labels, weights)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// A defender mixed strategy over arbitrary classifiers.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassifierMix {
    classifiers: Vec<Classifier>,
    weights: Vec<f64>,
}

impl ClassifierMix {
    pub fn new(classifiers: Vec<Classifier>, weights: Vec<f64>) -> Result<Self> {
        if classifiers.len() != weights.len() {
            return Err(Error::InvalidInput(format!(
                "{} classifiers but {} weights",
                classifiers.len(),
                weights.len()
            )));
        }
        check_simplex("classifier mixture", &weights)?;
        let n = classifiers[0].len();
        if classifiers.iter().any(|c| c.len() != n) {
            return Err(Error::InvalidInput("classifiers cover different vector sets".into()));
        }
        Ok(Self { classifiers, weights })
    }

    pub fn pure(c: Classifier) -> Self {
        Self { classifiers: vec![c], weights: vec![1.0] }
    }

    pub fn classifiers(&self) -> &[Classifier] {
        &self.classifiers
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Number of attack vectors the classifiers are defined on.
    pub fn vector_count(&self) -> usize {
        self.classifiers[0].len()
    }

    /// Probability that each vector gets flagged: `sum_c beta_c * 1[c(v) = 1]`.
    pub fn detection_probabilities(&self) -> Vec<f64> {
        let mut pd = vec![0.0; self.vector_count()];
        for (c, &w) in self.classifiers.iter().zip(&self.weights) {
            for (p, &d) in pd.iter_mut().zip(c.detects()) {
                if d {
                    *p += w;
                }
            }
        }
        pd
    }
}

/// `(U^A, U^D)` for a pure strategy pair.
pub fn pure_payoffs(spec: &GameSpec, vector_id: &str, c: &Classifier) -> Result<(f64, f64)> {
    let v = spec.index_of(vector_id)?;
    spec.check_classifier(c)?;
    Ok(pure_payoffs_at(spec, v, c))
}

pub(crate) fn pure_payoffs_at(spec: &GameSpec, v: usize, c: &Classifier) -> (f64, f64) {
    let detected = if c.flags(v) { 1.0 } else { 0.0 };
    let attacker = spec.rewards[v] - spec.params.detection_cost * detected;
    let defender = -attacker - spec.params.false_alarm_scale() * spec.false_alarm_mass(c);
    (attacker, defender)
}

fn check_mix(spec: &GameSpec, beta: &ClassifierMix) -> Result<()> {
    if beta.vector_count() != spec.len() {
        return Err(Error::InvalidInput(format!(
            "defender strategy covers {} vectors, game has {}",
            beta.vector_count(),
            spec.len()
        )));
    }
    Ok(())
}

/// Expected payoffs as the bilinear sum over all pure strategy pairs.
pub fn mixed_payoffs_bilinear(spec: &GameSpec, alpha: &MixedStrategy, beta: &ClassifierMix) -> Result<(f64, f64)> {
    let a = spec.align(alpha)?;
    check_mix(spec, beta)?;
    let (mut ua, mut ud) = (0.0, 0.0);
    for (v, &av) in a.iter().enumerate() {
        for (c, &bc) in beta.classifiers().iter().zip(beta.weights()) {
            let (pa, pd) = pure_payoffs_at(spec, v, c);
            ua += av * bc * pa;
            ud += av * bc * pd;
        }
    }
    Ok((ua, ud))
}

/// Expected payoffs written through the detection probabilities:
/// `U^A = sum_v alpha_v (R(v) - c_d pi(v))` and
/// `U^D = -U^A - ((1-p)/p) c_fa sum_v P_N(v) pi(v)`.
pub fn mixed_payoffs_via_detection(
    spec: &GameSpec,
    alpha: &MixedStrategy,
    beta: &ClassifierMix,
) -> Result<(f64, f64)> {
    let a = spec.align(alpha)?;
    check_mix(spec, beta)?;
    let pd = beta.detection_probabilities();
    Ok(payoffs_from_detection(spec, &a, &pd))
}

pub(crate) fn payoffs_from_detection(spec: &GameSpec, alpha: &[f64], pd: &[f64]) -> (f64, f64) {
    let c_d = spec.params.detection_cost;
    let ua: f64 = (0..spec.len()).map(|v| alpha[v] * (spec.rewards[v] - c_d * pd[v])).sum();
    let fa: f64 = spec.noise.iter().zip(pd).map(|(p, d)| p * d).sum();
    (ua, -ua - spec.params.false_alarm_scale() * fa)
}

/// Expected payoffs `(U^A, U^D)` of a mixed strategy pair.
///
/// Evaluates the bilinear form and cross-checks it against the
/// detection-probability form; a disagreement beyond 1e-10 (relative to the
/// payoff scale) is reported as an internal error.
pub fn mixed_payoffs(spec: &GameSpec, alpha: &MixedStrategy, beta: &ClassifierMix) -> Result<(f64, f64)> {
    let bilinear = mixed_payoffs_bilinear(spec, alpha, beta)?;
    let via_pd = mixed_payoffs_via_detection(spec, alpha, beta)?;
    let scale = spec
        .rewards
        .iter()
        .fold(1f64.max(spec.params.detection_cost), |m, r| m.max(*r))
        + spec.params.false_alarm_scale();
    if (bilinear.0 - via_pd.0).abs() > 1e-10 * scale || (bilinear.1 - via_pd.1).abs() > 1e-10 * scale {
        return Err(Error::Internal(format!(
            "payoff evaluations disagree: bilinear {bilinear:?}, detection form {via_pd:?}"
        )));
    }
    Ok(bilinear)
}

/// Defender's pure best response to `alpha`.
///
/// `U^D` is linear in each `pi(v)` with coefficient `c_d alpha_v - ((1-p)/p) c_fa P_N(v)`,
/// so the best classifier flags exactly the vectors with a positive coefficient.
/// A zero coefficient (within 1e-12) is classified as non-attacker.
pub fn defender_best_response(spec: &GameSpec, alpha: &MixedStrategy) -> Result<Classifier> {
    let a = spec.align(alpha)?;
    check_simplex("attacker strategy", &a)?;
    Ok(defender_best_response_weights(spec, &a))
}

pub(crate) fn defender_best_response_weights(spec: &GameSpec, alpha: &[f64]) -> Classifier {
    let c_d = spec.params.detection_cost;
    let scale = spec.params.false_alarm_scale();
    let detect = alpha
        .iter()
        .zip(&spec.noise)
        .map(|(&a, &p)| {
            let gain = c_d * a;
            let cost = scale * p;
            gain > cost && !nearly_equal(gain, cost)
        })
        .collect();
    Classifier { detect }
}

/// Attacker's pure best response to `beta`, as an index into `spec.vectors()`.
///
/// Maximizes `R(v) - c_d pi(v)`; ties go to the lowest reward, then the lowest id.
pub fn attacker_best_response(spec: &GameSpec, beta: &ClassifierMix) -> Result<usize> {
    check_mix(spec, beta)?;
    Ok(attacker_best_response_pd(spec, &beta.detection_probabilities()))
}

pub(crate) fn attacker_best_response_pd(spec: &GameSpec, pd: &[f64]) -> usize {
    let c_d = spec.params.detection_cost;
    let payoff = |v: usize| spec.rewards[v] - c_d * pd[v];
    let mut best = 0;
    for v in 1..spec.len() {
        let (pv, pb) = (payoff(v), payoff(best));
        let better = if nearly_equal(pv, pb) {
            (spec.rewards[v], spec.vectors[v].id.as_str()) < (spec.rewards[best], spec.vectors[best].id.as_str())
        } else {
            pv > pb
        };
        if better {
            best = v;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn spec(rewards: &[f64], noise: &[f64], p: f64, c_d: f64, c_fa: f64) -> GameSpec {
        let entries = rewards
            .iter()
            .zip(noise)
            .enumerate()
            .map(|(i, (&r, &n))| VectorEntry {
                vector: AttackVector::new(format!("v{}", i + 1), vec![i as i64]),
                reward: r,
                noise: n,
            })
            .collect();
        GameSpec::new(entries, GameParams::new(p, c_d, c_fa).unwrap()).unwrap()
    }

    #[test]
    fn detected_vector_payoffs() {
        let g = spec(&[1.0], &[1.0], 0.5, 2.0, 1.0);
        let (ua, ud) = pure_payoffs(&g, "v1", &Classifier::detect_all(1)).unwrap();
        assert_eq!(ua, -1.0);
        assert_eq!(ud, 0.0);
    }

    #[test]
    fn undetected_vector_payoffs() {
        let g = spec(&[3.0, 5.0], &[0.5, 0.5], 0.3, 2.0, 1.0);
        let (ua, ud) = pure_payoffs(&g, "v2", &Classifier::detect_none(2)).unwrap();
        assert_eq!(ua, 5.0);
        assert_eq!(ud, -5.0);
    }

    #[test]
    fn reference_parameters_full_detect() {
        let g = spec(&[50.0, 10.0], &[0.25, 0.75], 0.2, 120.0, 140.0);
        let (ua, ud) = pure_payoffs(&g, "v1", &Classifier::detect_all(2)).unwrap();
        assert_abs_diff_eq!(ua, -70.0, epsilon = 1e-12);
        assert_abs_diff_eq!(g.params().false_alarm_scale(), 560.0, epsilon = 1e-9);
        // recomputed by hand: -(-70) - 560 * 1
        assert_abs_diff_eq!(ud, 70.0 - 560.0, epsilon = 1e-9);
    }

    #[test]
    fn unknown_vector_is_rejected() {
        let g = spec(&[1.0], &[1.0], 0.5, 2.0, 1.0);
        assert!(matches!(
            pure_payoffs(&g, "nope", &Classifier::detect_all(1)),
            Err(Error::UnknownVector(_))
        ));
    }

    #[test]
    fn degenerate_mixtures_match_pure_payoffs() {
        let g = spec(&[1.0, 4.0, 2.5], &[0.2, 0.3, 0.5], 0.4, 1.5, 2.0);
        let c = Classifier::from_mask(3, 0b101);
        let alpha = MixedStrategy::pure(vec!["v1".into(), "v2".into(), "v3".into()], 2).unwrap();
        let mixed = mixed_payoffs(&g, &alpha, &ClassifierMix::pure(c.clone())).unwrap();
        let pure = pure_payoffs(&g, "v3", &c).unwrap();
        assert_abs_diff_eq!(mixed.0, pure.0, epsilon = 1e-14);
        assert_abs_diff_eq!(mixed.1, pure.1, epsilon = 1e-14);
    }

    #[test]
    fn half_detect_everything() {
        let g = spec(&[1.0, 4.0, 2.5], &[0.2, 0.3, 0.5], 0.4, 1.5, 2.0);
        let beta = ClassifierMix::new(vec![Classifier::detect_all(3), Classifier::detect_none(3)], vec![0.5, 0.5])
            .unwrap();
        let alpha = g.strategy(vec![0.2, 0.5, 0.3]).unwrap();
        let (ua, _) = mixed_payoffs(&g, &alpha, &beta).unwrap();
        let expected = 0.2 * 1.0 + 0.5 * 4.0 + 0.3 * 2.5 - 0.5 * 1.5;
        assert_abs_diff_eq!(ua, expected, epsilon = 1e-12);
        assert!(beta.detection_probabilities().iter().all(|&p| p == 0.5));
    }

    #[test]
    fn mismatched_strategy_space_is_rejected() {
        let g = spec(&[1.0, 2.0], &[0.5, 0.5], 0.5, 1.0, 1.0);
        let beta = ClassifierMix::pure(Classifier::detect_all(3));
        let alpha = g.strategy(vec![0.5, 0.5]).unwrap();
        assert!(mixed_payoffs(&g, &alpha, &beta).is_err());
    }

    #[test]
    fn defender_detects_only_positive_coefficients() {
        // c_d = 1, (1-p)/p c_fa = 1
        let g = spec(&[1.0, 2.0], &[0.9, 0.1], 0.5, 1.0, 1.0);
        let alpha = g.strategy(vec![0.5, 0.5]).unwrap();
        let c = defender_best_response(&g, &alpha).unwrap();
        assert_eq!(c.detect_ids(&g), vec!["v2"]);
    }

    #[test]
    fn false_alarms_dominate() {
        let g = spec(&[1.0, 2.0], &[1.0, 0.0], 0.5, 0.5, 1.0);
        let alpha = g.strategy(vec![1.0, 0.0]).unwrap();
        let c = defender_best_response(&g, &alpha).unwrap();
        assert!(c.detect_ids(&g).is_empty());
    }

    #[test]
    fn defender_tie_is_not_detected() {
        // c_d * alpha = 1 * 0.5 equals scale * P_N = 1 * 0.5
        let g = spec(&[1.0, 2.0], &[0.5, 0.5], 0.5, 1.0, 1.0);
        let alpha = g.strategy(vec![0.5, 0.5]).unwrap();
        assert!(defender_best_response(&g, &alpha).unwrap().detect_ids(&g).is_empty());
    }

    #[test]
    fn attacker_maximizes_reward_under_constant_detection() {
        let g = spec(&[1.0, 4.0, 2.5, 4.0], &[0.25; 4], 0.4, 1.5, 2.0);
        for c in [Classifier::detect_none(4), Classifier::detect_all(4)] {
            let v = attacker_best_response(&g, &ClassifierMix::pure(c)).unwrap();
            // v2 and v4 tie on reward; lowest id wins
            assert_eq!(g.vectors()[v].id, "v2");
        }
    }

    #[test]
    fn attacker_tie_prefers_lower_reward() {
        // v1: 1 - 0 = 1, v2: 3 - 2*1 = 1
        let g = spec(&[1.0, 3.0], &[0.5, 0.5], 0.4, 2.0, 2.0);
        let beta = ClassifierMix::pure(Classifier::from_mask(2, 0b10));
        assert_eq!(attacker_best_response(&g, &beta).unwrap(), 0);
    }

    #[test]
    fn construction_rejects_bad_inputs() {
        let e = |id: &str, f: Vec<i64>, r: f64, n: f64| VectorEntry { vector: AttackVector::new(id, f), reward: r, noise: n };
        let params = GameParams::new(0.5, 1.0, 1.0).unwrap();
        assert!(matches!(
            GameSpec::new(vec![e("a", vec![1], 1.0, 0.5), e("b", vec![2], 2.0, 0.4)], params),
            Err(Error::NotNormalized { .. })
        ));
        assert!(GameSpec::new(vec![e("a", vec![1], 1.0, 0.5), e("a", vec![2], 2.0, 0.5)], params).is_err());
        assert!(GameSpec::new(vec![e("a", vec![1], 1.0, 0.5), e("b", vec![2, 3], 2.0, 0.5)], params).is_err());
        assert!(GameSpec::new(vec![e("a", vec![1], -1.0, 1.0)], params).is_err());
        assert!(matches!(GameParams::new(0.0, 1.0, 1.0), Err(Error::DegeneratePrior(_))));
        assert!(matches!(GameParams::new(1.0, 1.0, 1.0), Err(Error::DegeneratePrior(_))));
    }
}
