//! Strategy-space reductions.
//!
//! The defender only needs threshold classifiers on the attack reward, and
//! once she uses them every vector sharing a reward is detected with the same
//! probability. Attack vectors can then be collapsed into reward levels with
//! the non-attacker mass summed per level. This module builds that reduced
//! game, moves detection probabilities back and forth between mixtures and
//! profiles, and expands reward-level strategies back onto attack vectors.

use crate::error::{Error, Result};
use crate::game::{check_simplex, Classifier, ClassifierMix, GameParams, GameSpec, MixedStrategy, PROB_TOL};

/// Rewards closer than this (relative to `max(1, |r|)`) share a level.
pub const REWARD_GROUP_TOL: f64 = 1e-9;

/// Weights and detection probabilities below this are treated as zero.
pub const WEIGHT_TOL: f64 = 1e-12;

/// Flags a vector iff its reward is at least `threshold`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdClassifier {
    threshold: f64,
}

impl ThresholdClassifier {
    pub fn new(threshold: f64) -> Self {
        Self { threshold }
    }

    /// The "always classify as non-attacker" classifier.
    pub fn never() -> Self {
        Self { threshold: f64::INFINITY }
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn detects(&self, reward: f64) -> bool {
        reward >= self.threshold
    }

    pub fn to_classifier(&self, spec: &GameSpec) -> Classifier {
        Classifier::from_flags(spec.rewards().iter().map(|&r| self.detects(r)).collect())
    }
}

/// Probability of detection per vector (or per reward level).
#[derive(Debug, Clone, PartialEq)]
pub struct DetectionProfile {
    values: Vec<f64>,
}

impl DetectionProfile {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() || !(-PROB_TOL..=1.0 + PROB_TOL).contains(&v) {
                return Err(Error::InvalidInput(format!("detection probability [{i}] = {v} outside [0, 1]")));
            }
        }
        Ok(Self { values: values.into_iter().map(|v| v.clamp(0.0, 1.0)).collect() })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Detection profile of a mixture over arbitrary classifiers.
pub fn detection_profile(beta: &ClassifierMix) -> DetectionProfile {
    DetectionProfile { values: beta.detection_probabilities() }
}

/// Detection profile over reward levels of a threshold mixture.
///
/// `beta[j]` is the weight of the threshold at level `j`; the final entry is
/// the never-classify classifier. Level `i` is flagged by every threshold at
/// or below it, so its probability is the prefix sum `beta[0] + .. + beta[i]`.
pub fn threshold_detection_profile(beta: &[f64]) -> DetectionProfile {
    let levels = beta.len().saturating_sub(1);
    let mut values = Vec::with_capacity(levels);
    let mut acc = 0.0;
    for &b in &beta[..levels] {
        acc += b;
        values.push(acc.clamp(0.0, 1.0));
    }
    DetectionProfile { values }
}

/// Builds a classifier mixture realizing `target` exactly.
///
/// Vectors are sorted by target value; the smallest value goes on detect-all,
/// each successive increment on the nested classifier that flags the vectors
/// from that position on, and the leftover mass on detect-none. The result
/// always has `len + 1` classifiers, some possibly with zero weight.
pub fn mixture_from_profile(target: &DetectionProfile) -> Result<ClassifierMix> {
    let f = target.values();
    let n = f.len();
    if n == 0 {
        return Err(Error::InvalidInput("empty detection profile".into()));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| f[a].total_cmp(&f[b]));

    let mut classifiers = Vec::with_capacity(n + 1);
    let mut weights = Vec::with_capacity(n + 1);
    let mut prev = 0.0;
    for pos in 0..n {
        let mut flags = vec![false; n];
        for &v in &order[pos..] {
            flags[v] = true;
        }
        classifiers.push(Classifier::from_flags(flags));
        let value = f[order[pos]];
        weights.push(value - prev);
        prev = value;
    }
    classifiers.push(Classifier::detect_none(n));
    weights.push(1.0 - prev);
    ClassifierMix::new(classifiers, weights)
}

/// An attack vector that was folded into a reward level.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelMember {
    pub vector: usize,
    pub id: String,
    pub noise: f64,
}

/// The game on distinct reward levels with threshold classifiers.
///
/// Levels are indexed `0..n` in increasing reward order. Defender strategies
/// have `n + 1` entries: thresholds at each level followed by never-classify.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedGame {
    rewards: Vec<f64>,
    noise: Vec<f64>,
    params: GameParams,
    members: Option<Vec<Vec<LevelMember>>>,
    vector_levels: Option<Vec<usize>>,
}

impl ReducedGame {
    /// A reduced game given directly by its levels (no originating vectors).
    pub fn new(rewards: Vec<f64>, noise: Vec<f64>, params: GameParams) -> Result<Self> {
        params.validate()?;
        if rewards.is_empty() {
            return Err(Error::InvalidInput("a reduced game needs at least one reward level".into()));
        }
        if rewards.len() != noise.len() {
            return Err(Error::InvalidInput(format!(
                "{} rewards but {} noise entries",
                rewards.len(),
                noise.len()
            )));
        }
        if rewards.iter().any(|r| !r.is_finite() || *r < 0.0) {
            return Err(Error::InvalidInput("rewards must be finite and nonnegative".into()));
        }
        if rewards.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput("reward levels must be strictly increasing".into()));
        }
        check_simplex("non-attacker distribution over reward levels", &noise)?;
        Ok(Self { rewards, noise, params, members: None, vector_levels: None })
    }

    pub fn len(&self) -> usize {
        self.rewards.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rewards.is_empty()
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

    pub fn with_params(&self, params: GameParams) -> Result<Self> {
        params.validate()?;
        Ok(Self { params, ..self.clone() })
    }

    /// Originating vectors per level, when the game came from [`reduce`].
    pub fn members(&self) -> Option<&[Vec<LevelMember>]> {
        self.members.as_deref()
    }

    /// Level index of each originating vector.
    pub fn vector_levels(&self) -> Option<&[usize]> {
        self.vector_levels.as_deref()
    }

    pub fn level_labels(&self) -> Vec<String> {
        self.rewards.iter().map(|r| format!("r={r}")).collect()
    }

    pub fn threshold_labels(&self) -> Vec<String> {
        self.rewards.iter().map(|r| format!(">={r}")).chain(std::iter::once("never".to_string())).collect()
    }

    pub fn threshold(&self, j: usize) -> ThresholdClassifier {
        match self.rewards.get(j) {
            Some(&r) => ThresholdClassifier::new(r),
            None => ThresholdClassifier::never(),
        }
    }

    /// Expected `(U^A, U^D)` for `alpha` over levels and `beta` over thresholds.
    pub fn payoffs(&self, alpha: &[f64], beta: &[f64]) -> (f64, f64) {
        let pd = threshold_detection_profile(beta);
        self.payoffs_with_profile(alpha, pd.values())
    }

    pub(crate) fn payoffs_with_profile(&self, alpha: &[f64], pd: &[f64]) -> (f64, f64) {
        let c_d = self.params.detection_cost;
        let ua: f64 = alpha.iter().zip(&self.rewards).zip(pd).map(|((a, r), p)| a * (r - c_d * p)).sum();
        let fa: f64 = self.noise.iter().zip(pd).map(|(n, p)| n * p).sum();
        (ua, -ua - self.params.false_alarm_scale() * fa)
    }

    /// Threshold mixture over levels mapped onto classifiers of the originating spec.
    pub fn expand_beta(&self, beta: &[f64]) -> Result<ClassifierMix> {
        let levels = self
            .vector_levels
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("reduced game has no originating vectors".into()))?;
        if beta.len() != self.len() + 1 {
            return Err(Error::InvalidInput(format!(
                "defender strategy has {} entries, expected {}",
                beta.len(),
                self.len() + 1
            )));
        }
        let classifiers =
            (0..=self.len()).map(|j| Classifier::from_flags(levels.iter().map(|&l| l >= j).collect())).collect();
        ClassifierMix::new(classifiers, beta.to_vec())
    }
}

/// Collapses equal-reward vectors into levels using [`REWARD_GROUP_TOL`].
pub fn reduce(spec: &GameSpec) -> ReducedGame {
    reduce_with_tolerance(spec, REWARD_GROUP_TOL)
}

/// Collapses vectors whose rewards lie within `tol * max(1, |r|)` of the
/// smallest reward in their level. The level reward is that smallest reward,
/// so a threshold at the level flags every member.
pub fn reduce_with_tolerance(spec: &GameSpec, tol: f64) -> ReducedGame {
    let rewards = spec.rewards();
    let mut order: Vec<usize> = (0..spec.len()).collect();
    order.sort_by(|&a, &b| rewards[a].total_cmp(&rewards[b]).then(a.cmp(&b)));

    let mut level_rewards: Vec<f64> = Vec::new();
    let mut level_noise: Vec<f64> = Vec::new();
    let mut members: Vec<Vec<LevelMember>> = Vec::new();
    let mut vector_levels = vec![0; spec.len()];
    for v in order {
        let r = rewards[v];
        let joins = level_rewards.last().is_some_and(|&base| r - base <= tol * 1f64.max(r.abs()));
        if !joins {
            level_rewards.push(r);
            level_noise.push(0.0);
            members.push(Vec::new());
        }
        let l = level_rewards.len() - 1;
        level_noise[l] += spec.noise()[v];
        members[l].push(LevelMember { vector: v, id: spec.vectors()[v].id.clone(), noise: spec.noise()[v] });
        vector_levels[v] = l;
    }
    ReducedGame {
        rewards: level_rewards,
        noise: level_noise,
        params: *spec.params(),
        members: Some(members),
        vector_levels: Some(vector_levels),
    }
}

/// Spreads a reward-level attacker strategy back over the originating vectors.
///
/// On levels detected with probability strictly inside (0, 1) every member
/// gets `((1-p)/p) (c_fa/c_d) P_N(v)`, and the members must add up to the
/// level's weight. On levels detected with probability 0 or 1 the level's
/// weight is split in proportion to `P_N` (uniformly if the level carries no
/// non-attacker mass).
pub fn expand_alpha(reduced: &ReducedGame, alpha_r: &[f64], profile: &DetectionProfile) -> Result<MixedStrategy> {
    let members = reduced
        .members()
        .ok_or_else(|| Error::InvalidInput("reduced game has no originating vectors".into()))?;
    if alpha_r.len() != reduced.len() || profile.len() != reduced.len() {
        return Err(Error::InvalidInput(format!(
            "expected {} level weights and detection probabilities, got {} and {}",
            reduced.len(),
            alpha_r.len(),
            profile.len()
        )));
    }
    let vector_count: usize = members.iter().map(Vec::len).sum();
    let mut labels = vec![String::new(); vector_count];
    let mut weights = vec![0.0; vector_count];
    let factor = reduced.params().mimicry_factor();
    for (l, level) in members.iter().enumerate() {
        let pd = profile.values()[l];
        let mass = alpha_r[l];
        let interior = pd > WEIGHT_TOL && pd < 1.0 - WEIGHT_TOL;
        if interior {
            let sum: f64 = level.iter().map(|m| factor * m.noise).sum();
            if (sum - mass).abs() > 1e-10 {
                return Err(Error::Consistency(format!(
                    "level {} (reward {}) is detected with probability {pd} but carries weight {mass}, \
                     not the proportional weight {sum}",
                    l + 1,
                    reduced.rewards()[l]
                )));
            }
            for m in level {
                weights[m.vector] = factor * m.noise;
            }
        } else {
            let level_noise: f64 = level.iter().map(|m| m.noise).sum();
            for m in level {
                let share = if level_noise > 0.0 { m.noise / level_noise } else { 1.0 / level.len() as f64 };
                weights[m.vector] = mass * share;
            }
        }
        for m in level {
            labels[m.vector] = m.id.clone();
        }
    }
    MixedStrategy::new(labels, weights)
}
