//! C ABI for the equilibrium solver.
//!
//! Games and solutions are opaque handles created by `advne_game_*` and
//! `advne_solve` and released with the matching `*_free` function. Every
//! fallible call returns an [`AdvneStatus`]; on failure a description is
//! available from [`advne_last_error`] on the same thread.
//!
//! Pointer arguments must be null or valid for the access the function
//! documents. Output pointers are written only on success. Strings returned
//! through `char **` are owned by the caller and released with
//! [`advne_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{self, AssertUnwindSafe};
use std::ptr;

use advclass_ne::cli::spec_file::SpecFile;
use advclass_ne::experiments::{binomial_game, BinomialNoiseSpec};
use advclass_ne::oracle::verify::DEFAULT_VERIFY_TOL;
use advclass_ne::oracle::{certify, verify_ne_reduced, VerificationReport};
use advclass_ne::{
    compute_all_ne, reduce, AttackVector, EquilibriumCase, EquilibriumSet, GameParams, GameSpec, ReducedGame, VectorEntry,
};
use serde::Serialize;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdvneStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    /// The game violates a modelling assumption, e.g. a reward level without non-attacker mass.
    ModelAssumption = 3,
    /// The computed equilibrium did not pass its best-response check.
    VerificationFailed = 4,
    Internal = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// A reduced game: sorted reward levels with their non-attacker mass and the cost parameters.
pub struct AdvneGame {
    reduced: ReducedGame,
}

/// The complete equilibrium set of a game together with its verification report.
pub struct AdvneSolution {
    set: EquilibriumSet,
    report: VerificationReport,
    rewards: Vec<f64>,
}

struct Failure {
    status: AdvneStatus,
    message: String,
}

impl Failure {
    fn new(status: AdvneStatus, message: impl Into<String>) -> Self {
        Self { status, message: message.into() }
    }
}

impl From<advclass_ne::Error> for Failure {
    fn from(e: advclass_ne::Error) -> Self {
        let status = if e.is_model_assumption() {
            AdvneStatus::ModelAssumption
        } else if matches!(e, advclass_ne::Error::Internal(_) | advclass_ne::Error::Lp(_)) {
            AdvneStatus::Internal
        } else {
            AdvneStatus::InvalidInput
        };
        Failure::new(status, e.to_string())
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = text);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> AdvneStatus {
    match panic::catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AdvneStatus::Ok,
        Ok(Err(failure)) => {
            set_last_error(&failure.message);
            failure.status
        }
        Err(payload) => {
            let detail = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(&format!("panic: {detail}"));
            AdvneStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure::new(AdvneStatus::NullPointer, format!("`{what}` is null")))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(AdvneStatus::NullPointer, format!("`{what}` is null")));
    }
    out.write(value);
    Ok(())
}

unsafe fn input_slice<'a>(p: *const f64, len: usize, what: &str) -> Result<&'a [f64], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Failure::new(AdvneStatus::NullPointer, format!("`{what}` is null")));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn copy_out(values: &[f64], buf: *mut f64, len: usize) -> Result<(), Failure> {
    if len < values.len() {
        return Err(Failure::new(
            AdvneStatus::BufferTooSmall,
            format!("buffer holds {len} values, {} needed", values.len()),
        ));
    }
    if buf.is_null() {
        return Err(Failure::new(AdvneStatus::NullPointer, "`buf` is null"));
    }
    ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    Ok(())
}

fn into_handle<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn advne_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or an empty string.
///
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn advne_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Builds a game from the JSON document accepted by the command-line tool.
#[no_mangle]
pub unsafe extern "C" fn advne_game_from_json(json: *const c_char, out: *mut *mut AdvneGame) -> AdvneStatus {
    guard(|| {
        let text = borrow(json, "json")?;
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| Failure::new(AdvneStatus::InvalidInput, format!("json is not UTF-8: {e}")))?;
        let reduced = SpecFile::parse(text)?.game()?.reduced()?;
        write(out, into_handle(AdvneGame { reduced }), "out")
    })
}

/// Builds a game from per-vector rewards and non-attacker probabilities.
///
/// Vectors with equal rewards are merged into one reward level.
#[no_mangle]
pub unsafe extern "C" fn advne_game_from_vectors(
    rewards: *const f64,
    noise: *const f64,
    len: usize,
    prior: f64,
    detection_cost: f64,
    false_alarm_cost: f64,
    out: *mut *mut AdvneGame,
) -> AdvneStatus {
    guard(|| {
        let rewards = input_slice(rewards, len, "rewards")?;
        let noise = input_slice(noise, len, "noise")?;
        let entries = rewards
            .iter()
            .zip(noise)
            .enumerate()
            .map(|(i, (&reward, &noise))| VectorEntry {
                vector: AttackVector::new(format!("v{}", i + 1), vec![i as i64]),
                reward,
                noise,
            })
            .collect();
        let params = GameParams::new(prior, detection_cost, false_alarm_cost)?;
        let spec = GameSpec::new(entries, params)?;
        write(out, into_handle(AdvneGame { reduced: reduce(&spec) }), "out")
    })
}

/// Single-feature game with rewards `0, c_a, ..., trials * c_a` and binomial non-attacker mass.
#[no_mangle]
pub unsafe extern "C" fn advne_game_binomial(
    trials: u32,
    theta0: f64,
    reward_unit: f64,
    prior: f64,
    detection_cost: f64,
    false_alarm_cost: f64,
    out: *mut *mut AdvneGame,
) -> AdvneStatus {
    guard(|| {
        let noise = BinomialNoiseSpec::new(trials, theta0, reward_unit)?;
        let params = GameParams::new(prior, detection_cost, false_alarm_cost)?;
        let reduced = binomial_game(&noise, params)?;
        write(out, into_handle(AdvneGame { reduced }), "out")
    })
}

/// Number of distinct reward levels.
#[no_mangle]
pub unsafe extern "C" fn advne_game_levels(game: *const AdvneGame, out: *mut usize) -> AdvneStatus {
    guard(|| write(out, borrow(game, "game")?.reduced.len(), "out"))
}

/// Copies the sorted reward levels into `buf`, which must hold at least `advne_game_levels` values.
#[no_mangle]
pub unsafe extern "C" fn advne_game_rewards(game: *const AdvneGame, buf: *mut f64, len: usize) -> AdvneStatus {
    guard(|| copy_out(borrow(game, "game")?.reduced.rewards(), buf, len))
}

#[no_mangle]
pub unsafe extern "C" fn advne_game_free(game: *mut AdvneGame) {
    if !game.is_null() {
        drop(Box::from_raw(game));
    }
}

/// Computes every equilibrium of `game` and checks it against all pure deviations.
///
/// `epsilon` is the positive shift of the cost matrix; 1.0 is a good default.
/// Returns `ADVNE_STATUS_VERIFICATION_FAILED` without a solution if the check fails.
#[no_mangle]
pub unsafe extern "C" fn advne_solve(game: *const AdvneGame, epsilon: f64, out: *mut *mut AdvneSolution) -> AdvneStatus {
    guard(|| {
        let reduced = &borrow(game, "game")?.reduced;
        if out.is_null() {
            return Err(Failure::new(AdvneStatus::NullPointer, "`out` is null"));
        }
        let set = compute_all_ne(reduced, epsilon)?;
        let report = certify(reduced, &set, DEFAULT_VERIFY_TOL)?;
        if !report.passed {
            return Err(Failure::new(AdvneStatus::VerificationFailed, format!("equilibrium check failed: {report:?}")));
        }
        let solution = AdvneSolution { set, report, rewards: reduced.rewards().to_vec() };
        write(out, into_handle(solution), "out")
    })
}

/// Structural case of the equilibrium set, 1 to 4.
#[no_mangle]
pub unsafe extern "C" fn advne_solution_case(solution: *const AdvneSolution, out: *mut u32) -> AdvneStatus {
    guard(|| {
        let case = match borrow(solution, "solution")?.set.case {
            EquilibriumCase::I => 1,
            EquilibriumCase::II => 2,
            EquilibriumCase::III => 3,
            EquilibriumCase::IV => 4,
        };
        write(out, case, "out")
    })
}

/// 1-based index of the lowest reward level in the equilibrium supports.
#[no_mangle]
pub unsafe extern "C" fn advne_solution_support_start(solution: *const AdvneSolution, out: *mut usize) -> AdvneStatus {
    guard(|| write(out, borrow(solution, "solution")?.set.k, "out"))
}

#[no_mangle]
pub unsafe extern "C" fn advne_solution_defender_payoff(solution: *const AdvneSolution, out: *mut f64) -> AdvneStatus {
    guard(|| write(out, borrow(solution, "solution")?.set.defender_value, "out"))
}

/// Smallest and largest attacker payoff over the equilibrium set.
#[no_mangle]
pub unsafe extern "C" fn advne_solution_attacker_payoff(
    solution: *const AdvneSolution,
    lo: *mut f64,
    hi: *mut f64,
) -> AdvneStatus {
    guard(|| {
        let (a, b) = borrow(solution, "solution")?.set.attacker_payoff_range;
        if lo.is_null() || hi.is_null() {
            return Err(Failure::new(AdvneStatus::NullPointer, "`lo` or `hi` is null"));
        }
        write(lo, a, "lo")?;
        write(hi, b, "hi")
    })
}

/// Number of vertices of the defender and attacker equilibrium polytopes.
#[no_mangle]
pub unsafe extern "C" fn advne_solution_vertex_counts(
    solution: *const AdvneSolution,
    defender: *mut usize,
    attacker: *mut usize,
) -> AdvneStatus {
    guard(|| {
        let set = &borrow(solution, "solution")?.set;
        if defender.is_null() || attacker.is_null() {
            return Err(Failure::new(AdvneStatus::NullPointer, "`defender` or `attacker` is null"));
        }
        write(defender, set.beta_vertices.len(), "defender")?;
        write(attacker, set.alpha_vertices.len(), "attacker")
    })
}

/// Copies defender vertex `index`: one weight per reward threshold followed by never-classify,
/// `levels + 1` values in all.
#[no_mangle]
pub unsafe extern "C" fn advne_solution_defender_vertex(
    solution: *const AdvneSolution,
    index: usize,
    buf: *mut f64,
    len: usize,
) -> AdvneStatus {
    guard(|| {
        let set = &borrow(solution, "solution")?.set;
        let v = set.beta_vertices.get(index).ok_or_else(|| {
            Failure::new(AdvneStatus::InvalidInput, format!("defender vertex {index} of {}", set.beta_vertices.len()))
        })?;
        copy_out(v, buf, len)
    })
}

/// Copies attacker vertex `index`: one weight per reward level.
#[no_mangle]
pub unsafe extern "C" fn advne_solution_attacker_vertex(
    solution: *const AdvneSolution,
    index: usize,
    buf: *mut f64,
    len: usize,
) -> AdvneStatus {
    guard(|| {
        let set = &borrow(solution, "solution")?.set;
        let v = set.alpha_vertices.get(index).ok_or_else(|| {
            Failure::new(AdvneStatus::InvalidInput, format!("attacker vertex {index} of {}", set.alpha_vertices.len()))
        })?;
        copy_out(v, buf, len)
    })
}

#[derive(Serialize)]
struct SolutionJson<'a> {
    rewards: &'a [f64],
    #[serde(flatten)]
    set: &'a EquilibriumSet,
    verification: &'a VerificationReport,
}

/// The solution as a JSON object; release with `advne_string_free`.
#[no_mangle]
pub unsafe extern "C" fn advne_solution_to_json(solution: *const AdvneSolution, out: *mut *mut c_char) -> AdvneStatus {
    guard(|| {
        let s = borrow(solution, "solution")?;
        let doc = SolutionJson { rewards: &s.rewards, set: &s.set, verification: &s.report };
        let text = serde_json::to_string_pretty(&doc).map_err(|e| Failure::new(AdvneStatus::Internal, e.to_string()))?;
        let text = CString::new(text).map_err(|e| Failure::new(AdvneStatus::Internal, e.to_string()))?;
        write(out, text.into_raw(), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn advne_solution_free(solution: *mut AdvneSolution) {
    if !solution.is_null() {
        drop(Box::from_raw(solution));
    }
}

#[no_mangle]
pub unsafe extern "C" fn advne_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Checks a strategy pair of the reduced game against every pure deviation.
///
/// `attacker` holds one weight per reward level and `defender` one per
/// threshold plus never-classify. `passed` receives the verdict; a rejected
/// pair is not an error.
#[no_mangle]
pub unsafe extern "C" fn advne_verify(
    game: *const AdvneGame,
    attacker: *const f64,
    attacker_len: usize,
    defender: *const f64,
    defender_len: usize,
    tol: f64,
    passed: *mut bool,
) -> AdvneStatus {
    guard(|| {
        let reduced = &borrow(game, "game")?.reduced;
        let alpha = input_slice(attacker, attacker_len, "attacker")?;
        let beta = input_slice(defender, defender_len, "defender")?;
        if passed.is_null() {
            return Err(Failure::new(AdvneStatus::NullPointer, "`passed` is null"));
        }
        let report = verify_ne_reduced(reduced, alpha, beta, tol)?;
        write(passed, report.passed, "passed")
    })
}
