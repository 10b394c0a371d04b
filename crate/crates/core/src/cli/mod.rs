//! Command-line front end: `solve`, `verify`, `sweep`, `scenario` and `fuzz`.
//!
//! Exit codes: 0 success, 1 strategies rejected by `verify`, 2 input error,
//! 3 model assumption violated, 4 internal verification failure.

pub mod output;
pub mod spec_file;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use indexmap::IndexMap;
use rayon::prelude::*;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::experiments::{linear_grid, multi_feature_study, sweep, GameSource, MultiFeatureParams, SweepParam};
use crate::game::MixedStrategy;
use crate::oracle::random::{random_reduced_game, stream};
use crate::oracle::verify::DEFAULT_VERIFY_TOL;
use crate::oracle::{certify, solve_attacker_dual, solve_defender_lp, verify_ne, verify_ne_reduced};
use crate::solver::{build_matrices, compute_all_ne, DEFAULT_EPSILON};
use output::{solve_document, FuzzRow, ScenarioDocument, SweepDocument, VerifyDocument};
use spec_file::SpecFile;

pub const THREADS_ENV: &str = "ADVCLASS_NE_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_MODEL: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "advclass-ne", version, about = "Nash equilibria of the adversarial classification game")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct SolveOpts {
    /// Constant added to the cost matrix; does not change the equilibria.
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
    /// Best-response residual tolerance for verification.
    #[arg(long, default_value_t = DEFAULT_VERIFY_TOL)]
    tol: f64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve a game and print its equilibrium set with a verification report.
    Solve {
        spec: PathBuf,
        #[command(flatten)]
        opts: SolveOpts,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a strategy pair (or a `solve` document) against every pure deviation.
    Verify {
        spec: PathBuf,
        strategies: PathBuf,
        #[arg(long, default_value_t = DEFAULT_VERIFY_TOL)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve the game over a grid of values of one parameter.
    Sweep {
        spec: PathBuf,
        /// One of c_a, c_fa, c_d, p, theta0.
        #[arg(long)]
        param: String,
        /// Inclusive grid `lo:hi:step`.
        #[arg(long, conflicts_with = "grid_list", required_unless_present = "grid_list")]
        grid: Option<String>,
        /// Explicit comma-separated values.
        #[arg(long)]
        grid_list: Option<String>,
        #[command(flatten)]
        opts: SolveOpts,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Emit a JSON document instead of CSV.
        #[arg(long)]
        json: bool,
    },
    /// Run the four information scenarios of the two-feature study.
    Scenario {
        #[command(flatten)]
        params: ScenarioOpts,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Cross-check the solver against the LP oracle on seeded random games.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: u64,
        #[arg(long, default_value_t = 2)]
        min_levels: usize,
        #[arg(long, default_value_t = 8)]
        max_levels: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
struct ScenarioOpts {
    /// Time slots in which the server can be accessed.
    #[arg(long = "trials", default_value_t = 2)]
    trials: u32,
    #[arg(long = "c-a", default_value_t = 1.0)]
    c_a: f64,
    #[arg(long = "c-low", default_value_t = 2.0)]
    c_low: f64,
    #[arg(long = "c-high", default_value_t = 4.1)]
    c_high: f64,
    #[arg(long = "p", default_value_t = 0.2)]
    p: f64,
    #[arg(long = "theta0", default_value_t = 0.3)]
    theta0: f64,
    #[arg(long = "theta-low", default_value_t = 0.8)]
    theta_low: f64,
    #[arg(long = "c-d", default_value_t = 1.0)]
    c_d: f64,
    #[arg(long = "c-fa", default_value_t = 1.0)]
    c_fa: f64,
}

impl From<&ScenarioOpts> for MultiFeatureParams {
    fn from(o: &ScenarioOpts) -> Self {
        MultiFeatureParams {
            trials: o.trials,
            reward_unit: o.c_a,
            reward_low: o.c_low,
            reward_high: o.c_high,
            prior: o.p,
            theta0: o.theta0,
            theta_low: o.theta_low,
            detection_cost: o.c_d,
            false_alarm_cost: o.c_fa,
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    configure_threads();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_model_assumption() {
        EXIT_MODEL
    } else if matches!(e, Error::Internal(_) | Error::Lp(_)) {
        EXIT_INTERNAL
    } else {
        EXIT_INPUT
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("--{name} must be positive (got {v})")))
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Internal(format!("serialization: {e}")))?;
    s.push('\n');
    Ok(s)
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Solve { spec, opts, out } => {
            check_positive("epsilon", opts.epsilon)?;
            check_positive("tol", opts.tol)?;
            let file = SpecFile::load(&spec)?;
            let doc = solve_document(&file, opts.epsilon, opts.tol)?;
            emit(out.as_deref(), &to_json(&doc)?)?;
            Ok(if doc.verified() { EXIT_OK } else { EXIT_INTERNAL })
        }
        Command::Verify { spec, strategies, tol, out } => {
            check_positive("tol", tol)?;
            let file = SpecFile::load(&spec)?;
            let doc = verify_strategies(&file, &strategies, tol)?;
            emit(out.as_deref(), &to_json(&doc)?)?;
            Ok(if doc.verification.passed { EXIT_OK } else { EXIT_REJECTED })
        }
        Command::Sweep { spec, param, grid, grid_list, opts, out, json } => {
            check_positive("epsilon", opts.epsilon)?;
            check_positive("tol", opts.tol)?;
            let param: SweepParam = param.parse()?;
            let values = match (grid, grid_list) {
                (Some(g), None) => parse_grid(&g)?,
                (None, Some(l)) => parse_grid_list(&l)?,
                _ => return Err(Error::InvalidInput("give exactly one of --grid and --grid-list".into())),
            };
            let source = SpecFile::load(&spec)?.game()?;
            let result = sweep(&source, param, &values, opts.epsilon, opts.tol);
            let doc = SweepDocument::new(&result);
            let text = if json { to_json(&doc)? } else { doc.to_csv() };
            emit(out.as_deref(), &text)?;
            Ok(if doc.all_verified() { EXIT_OK } else { EXIT_INTERNAL })
        }
        Command::Scenario { params, epsilon, out, json } => {
            check_positive("epsilon", epsilon)?;
            let params = MultiFeatureParams::from(&params);
            let results = multi_feature_study(&params, epsilon)?;
            let doc = ScenarioDocument::new(&params, &results);
            let text = if json { to_json(&doc)? } else { doc.to_csv() };
            emit(out.as_deref(), &text)?;
            Ok(EXIT_OK)
        }
        Command::Fuzz { seed, count, min_levels, max_levels, tol, out, json } => {
            check_positive("tol", tol)?;
            if min_levels == 0 || min_levels > max_levels {
                return Err(Error::InvalidInput(format!("invalid level range {min_levels}..={max_levels}")));
            }
            let rows = (0..count)
                .into_par_iter()
                .map(|i| fuzz_one(seed, i, min_levels, max_levels, tol))
                .collect::<Result<Vec<_>>>()?;
            let passed = rows.iter().all(|r| r.passed);
            let text = if json { to_json(&output::FuzzDocument::new(seed, tol, rows))? } else { FuzzRow::csv(&rows) };
            emit(out.as_deref(), &text)?;
            Ok(if passed { EXIT_OK } else { EXIT_INTERNAL })
        }
    }
}

fn parse_number(s: &str) -> Result<f64> {
    s.trim().parse::<f64>().map_err(|_| Error::InvalidInput(format!("`{s}` is not a number")))
}

/// `lo:hi:step`.
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, step] = parts.as_slice() else {
        return Err(Error::InvalidInput(format!("grid `{s}` is not of the form lo:hi:step")));
    };
    linear_grid(parse_number(lo)?, parse_number(hi)?, parse_number(step)?)
}

pub fn parse_grid_list(s: &str) -> Result<Vec<f64>> {
    let values = s.split(',').map(parse_number).collect::<Result<Vec<_>>>()?;
    if values.is_empty() {
        return Err(Error::InvalidInput("empty grid list".into()));
    }
    Ok(values)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct StrategiesInput {
    alpha: IndexMap<String, f64>,
    beta: IndexMap<String, f64>,
}

fn verify_strategies(file: &SpecFile, path: &Path, tol: f64) -> Result<VerifyDocument> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    let block = value.get("strategies").cloned().unwrap_or(value);
    let input: StrategiesInput = serde_json::from_value(block)
        .map_err(|e| Error::InvalidInput(format!("{}: strategies need `alpha` and `beta` maps: {e}", path.display())))?;

    let source = file.game()?;
    let reduced = source.reduced()?;
    let beta = indexed_weights(&reduced.threshold_labels(), &input.beta, "threshold")?;
    let verification = match &source {
        GameSource::Spec(spec) => {
            let (labels, weights): (Vec<String>, Vec<f64>) = input.alpha.into_iter().unzip();
            let alpha = MixedStrategy::new(labels, weights)?;
            verify_ne(spec, &alpha, &reduced.expand_beta(&beta)?, tol)?
        }
        GameSource::Binomial { .. } => {
            let alpha = indexed_weights(&reduced.level_labels(), &input.alpha, "reward level")?;
            verify_ne_reduced(&reduced, &alpha, &beta, tol)?
        }
    };
    Ok(VerifyDocument::new(file, tol, verification))
}

/// Weights in the order of `labels`; missing labels get zero, unknown labels are errors.
fn indexed_weights(labels: &[String], given: &IndexMap<String, f64>, what: &str) -> Result<Vec<f64>> {
    let mut out = vec![0.0; labels.len()];
    for (label, &w) in given {
        let Some(i) = labels.iter().position(|l| l == label) else {
            let mut known = String::new();
            for l in labels.iter().take(6) {
                let _ = write!(known, " `{l}`");
            }
            return Err(Error::InvalidInput(format!(
                "unknown {what} label `{label}` (expected {} labels such as{known})",
                labels.len()
            )));
        };
        out[i] = w;
    }
    Ok(out)
}

fn fuzz_one(seed: u64, index: u64, min_levels: usize, max_levels: usize, tol: f64) -> Result<FuzzRow> {
    let reduced = random_reduced_game(&mut stream(seed, index), min_levels..=max_levels);
    let set = compute_all_ne(&reduced, DEFAULT_EPSILON)?;
    let report = certify(&reduced, &set, tol)?;
    let m = build_matrices(&reduced, DEFAULT_EPSILON)?;
    let primal = solve_defender_lp(&m)?;
    let dual = solve_attacker_dual(&m)?;
    let duality_gap = (primal.value - dual.value).abs();
    Ok(FuzzRow {
        index,
        levels: reduced.len(),
        case: set.case.tag(),
        k: set.k,
        value_gap: report.oracle_value_gap.unwrap_or(f64::NAN),
        duality_gap,
        attacker_residual: report.attacker_residual,
        defender_residual: report.defender_residual,
        passed: report.passed && duality_gap < 1e-9,
    })
}
