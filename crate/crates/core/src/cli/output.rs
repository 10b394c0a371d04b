//! Result documents and CSV tables.
//!
//! Numbers are written in their shortest round-trip form, so every value
//! parses back to the identical `f64`.

use indexmap::IndexMap;
use serde::Serialize;

use crate::error::Result;
use crate::experiments::{GameSource, MultiFeatureParams, ScenarioResult, SweepResult};
use crate::game::ClassifierMix;
use crate::oracle::{certify, verify_ne, VerificationReport};
use crate::reduction::{expand_alpha, threshold_detection_profile};
use crate::solver::compute_all_ne;

use super::spec_file::SpecFile;

pub type WeightMap = IndexMap<String, f64>;

/// Shortest decimal that parses back to `x`, in exponent form for very small or large magnitudes.
pub fn fmt_num(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && a.is_finite() && !(1e-5..1e16).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

impl ToolInfo {
    fn current() -> Self {
        Self { name: env!("CARGO_PKG_NAME"), version: env!("CARGO_PKG_VERSION") }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveInput {
    pub spec: SpecFile,
    pub epsilon: f64,
    pub tol: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReducedEcho {
    pub rewards: Vec<f64>,
    pub noise: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EquilibriumEcho {
    pub beta_vertices: Vec<WeightMap>,
    pub alpha_vertices: Vec<WeightMap>,
    /// Attacker vertices spread over the attack vectors (vector specs only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_vector_vertices: Option<Vec<WeightMap>>,
}

/// A representative equilibrium, in the shape `verify` accepts.
#[derive(Debug, Clone, Serialize)]
pub struct Strategies {
    pub alpha: WeightMap,
    pub beta: WeightMap,
}

#[derive(Debug, Clone, Serialize)]
pub struct Payoffs {
    pub defender: f64,
    /// Midpoint of the range when the equilibrium set is not a singleton.
    pub attacker: f64,
    pub attacker_range: [f64; 2],
    /// Value of the shifted defender LP.
    pub lp_value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveDocument {
    pub tool: ToolInfo,
    pub input: SolveInput,
    pub case: &'static str,
    pub k: usize,
    pub support_start_reward: f64,
    pub reduced_game: ReducedEcho,
    pub equilibrium_set: EquilibriumEcho,
    pub strategies: Strategies,
    /// Detection probability of each reward level under `strategies.beta`.
    pub detection_probability: WeightMap,
    pub payoffs: Payoffs,
    pub verification: VerificationReport,
    /// Check of `strategies` on the full game (vector specs only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub full_game_verification: Option<VerificationReport>,
}

impl SolveDocument {
    pub fn verified(&self) -> bool {
        self.verification.passed && self.full_game_verification.as_ref().is_none_or(|r| r.passed)
    }
}

fn weight_map(labels: &[String], weights: &[f64]) -> WeightMap {
    labels.iter().cloned().zip(weights.iter().copied()).collect()
}

pub fn solve_document(file: &SpecFile, epsilon: f64, tol: f64) -> Result<SolveDocument> {
    let source = file.game()?;
    let reduced = source.reduced()?;
    let set = compute_all_ne(&reduced, epsilon)?;
    let verification = certify(&reduced, &set, tol)?;

    let levels = reduced.level_labels();
    let thresholds = reduced.threshold_labels();
    let beta = set.beta_centroid();
    let profile = threshold_detection_profile(&beta);

    let (alpha, alpha_vector_vertices, full_game_verification) = match &source {
        GameSource::Spec(spec) => {
            let ids: Vec<String> = spec.vectors().iter().map(|v| v.id.clone()).collect();
            let vertices = set
                .alpha_vertices
                .iter()
                .map(|a| expand_alpha(&reduced, a, &profile))
                .collect::<Result<Vec<_>>>()?;
            let centroid = expand_alpha(&reduced, &set.alpha_centroid(), &profile)?;
            let report = verify_ne(spec, &centroid, &reduced.expand_beta(&beta)?, tol)?;
            let maps = vertices.iter().map(|m| weight_map(m.labels(), m.weights())).collect();
            (weight_map(&ids, &spec.align(&centroid)?), Some(maps), Some(report))
        }
        GameSource::Binomial { .. } => (weight_map(&levels, &set.alpha_centroid()), None, None),
    };

    Ok(SolveDocument {
        tool: ToolInfo::current(),
        input: SolveInput { spec: file.clone(), epsilon, tol },
        case: set.case.tag(),
        k: set.k,
        support_start_reward: reduced.rewards()[set.k - 1],
        reduced_game: ReducedEcho { rewards: reduced.rewards().to_vec(), noise: reduced.noise().to_vec() },
        equilibrium_set: EquilibriumEcho {
            beta_vertices: set.beta_vertices.iter().map(|b| weight_map(&thresholds, b)).collect(),
            alpha_vertices: set.alpha_vertices.iter().map(|a| weight_map(&levels, a)).collect(),
            alpha_vector_vertices,
        },
        strategies: Strategies { alpha, beta: weight_map(&thresholds, &beta) },
        detection_probability: weight_map(&levels, profile.values()),
        payoffs: Payoffs {
            defender: set.defender_value,
            attacker: set.attacker_payoff(),
            attacker_range: [set.attacker_payoff_range.0, set.attacker_payoff_range.1],
            lp_value: set.lp_value,
        },
        verification,
        full_game_verification,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyDocument {
    pub tool: ToolInfo,
    pub spec: SpecFile,
    pub tol: f64,
    pub verification: VerificationReport,
}

impl VerifyDocument {
    pub fn new(file: &SpecFile, tol: f64, verification: VerificationReport) -> Self {
        Self { tool: ToolInfo::current(), spec: file.clone(), tol, verification }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRowDocument {
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub attacker_payoff_lo: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub attacker_payoff_hi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defender_payoff: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<f64>>,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepDocument {
    pub tool: ToolInfo,
    pub param: &'static str,
    pub rows: Vec<SweepRowDocument>,
}

impl SweepDocument {
    pub fn new(result: &SweepResult) -> Self {
        let rows = result
            .rows
            .iter()
            .map(|row| match &row.outcome {
                Ok(point) => SweepRowDocument {
                    value: row.value,
                    k: Some(point.k()),
                    case: Some(point.equilibria.case.tag()),
                    attacker_payoff_lo: Some(point.equilibria.attacker_payoff_range.0),
                    attacker_payoff_hi: Some(point.equilibria.attacker_payoff_range.1),
                    defender_payoff: Some(point.defender_payoff()),
                    beta: Some(point.equilibria.beta_centroid()),
                    alpha: Some(point.equilibria.alpha_centroid()),
                    verified: point.verified,
                    error: None,
                },
                Err(e) => SweepRowDocument {
                    value: row.value,
                    k: None,
                    case: None,
                    attacker_payoff_lo: None,
                    attacker_payoff_hi: None,
                    defender_payoff: None,
                    beta: None,
                    alpha: None,
                    verified: false,
                    error: Some(e.to_string()),
                },
            })
            .collect();
        Self { tool: ToolInfo::current(), param: result.param.name(), rows }
    }

    /// Every successfully solved row passed verification.
    pub fn all_verified(&self) -> bool {
        self.rows.iter().all(|r| r.error.is_some() || r.verified)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("param,value,k,attacker_payoff_lo,attacker_payoff_hi,defender_payoff,verified\n");
        for r in &self.rows {
            let line = match (r.k, r.attacker_payoff_lo, r.attacker_payoff_hi, r.defender_payoff) {
                (Some(k), Some(lo), Some(hi), Some(d)) => format!(
                    "{},{},{},{},{},{},{}\n",
                    self.param,
                    fmt_num(r.value),
                    k,
                    fmt_num(lo),
                    fmt_num(hi),
                    fmt_num(d),
                    r.verified
                ),
                _ => format!("{},{},,,,,error\n", self.param, fmt_num(r.value)),
            };
            out.push_str(&line);
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifierWeight {
    pub detect: Vec<String>,
    pub weight: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioRowDocument {
    pub scenario: u8,
    pub defender_payoff: f64,
    pub attacker_payoff: f64,
    pub attacker: WeightMap,
    pub defender: Vec<ClassifierWeight>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioDocument {
    pub tool: ToolInfo,
    pub params: MultiFeatureParams,
    pub scenarios: Vec<ScenarioRowDocument>,
}

fn classifier_weights(mix: &ClassifierMix, ids: &[String]) -> Vec<ClassifierWeight> {
    mix.classifiers()
        .iter()
        .zip(mix.weights())
        .map(|(c, &weight)| ClassifierWeight {
            detect: ids.iter().zip(c.detects()).filter(|(_, &d)| d).map(|(id, _)| id.clone()).collect(),
            weight,
        })
        .collect()
}

impl ScenarioDocument {
    pub fn new(params: &MultiFeatureParams, results: &[ScenarioResult]) -> Self {
        let scenarios = results
            .iter()
            .map(|r| {
                let ids = r.attacker.labels();
                ScenarioRowDocument {
                    scenario: r.scenario,
                    defender_payoff: r.defender_payoff,
                    attacker_payoff: r.attacker_payoff,
                    attacker: weight_map(ids, r.attacker.weights()),
                    defender: classifier_weights(&r.defender, ids),
                }
            })
            .collect();
        Self { tool: ToolInfo::current(), params: *params, scenarios }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("scenario,defender_payoff,attacker_payoff\n");
        for s in &self.scenarios {
            out.push_str(&format!("{},{},{}\n", s.scenario, fmt_num(s.defender_payoff), fmt_num(s.attacker_payoff)));
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FuzzRow {
    pub index: u64,
    pub levels: usize,
    pub case: &'static str,
    pub k: usize,
    pub value_gap: f64,
    pub duality_gap: f64,
    pub attacker_residual: f64,
    pub defender_residual: f64,
    pub passed: bool,
}

impl FuzzRow {
    pub fn csv(rows: &[FuzzRow]) -> String {
        let mut out = String::from(
            "index,levels,case,k,value_gap,duality_gap,attacker_residual,defender_residual,passed\n",
        );
        for r in rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                r.index,
                r.levels,
                r.case,
                r.k,
                fmt_num(r.value_gap),
                fmt_num(r.duality_gap),
                fmt_num(r.attacker_residual),
                fmt_num(r.defender_residual),
                r.passed
            ));
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FuzzDocument {
    pub tool: ToolInfo,
    pub seed: u64,
    pub tol: f64,
    pub games: Vec<FuzzRow>,
}

impl FuzzDocument {
    pub fn new(seed: u64, tol: f64, games: Vec<FuzzRow>) -> Self {
        Self { tool: ToolInfo::current(), seed, tol, games }
    }
}
