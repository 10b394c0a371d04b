use std::ffi::{CStr, CString};
use std::ptr;

use advclass_ne_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(advne_last_error()) }.to_string_lossy().into_owned()
}

fn reference_game() -> *mut AdvneGame {
    let mut game = ptr::null_mut();
    let status = unsafe { advne_game_binomial(100, 0.2, 1.0, 0.2, 120.0, 140.0, &mut game) };
    assert_eq!(status, AdvneStatus::Ok, "{}", last_error());
    game
}

#[test]
fn reference_game_round_trip() {
    let game = reference_game();
    let mut levels = 0;
    assert_eq!(unsafe { advne_game_levels(game, &mut levels) }, AdvneStatus::Ok);
    assert_eq!(levels, 101);

    let mut solution = ptr::null_mut();
    assert_eq!(unsafe { advne_solve(game, 1.0, &mut solution) }, AdvneStatus::Ok);
    let (mut case, mut k, mut value, mut lo, mut hi) = (0u32, 0usize, 0.0, 0.0, 0.0);
    let (mut nb, mut na) = (0usize, 0usize);
    unsafe {
        assert_eq!(advne_solution_case(solution, &mut case), AdvneStatus::Ok);
        assert_eq!(advne_solution_support_start(solution, &mut k), AdvneStatus::Ok);
        assert_eq!(advne_solution_defender_payoff(solution, &mut value), AdvneStatus::Ok);
        assert_eq!(advne_solution_attacker_payoff(solution, &mut lo, &mut hi), AdvneStatus::Ok);
        assert_eq!(advne_solution_vertex_counts(solution, &mut nb, &mut na), AdvneStatus::Ok);
    }
    assert_eq!((case, k, nb, na), (2, 24, 1, 1));
    assert!((lo - 23.0).abs() < 1e-9 && (hi - lo).abs() < 1e-12);
    assert!(value < 0.0);

    let mut beta = vec![0.0; levels + 1];
    let mut alpha = vec![0.0; levels];
    unsafe {
        assert_eq!(advne_solution_defender_vertex(solution, 0, beta.as_mut_ptr(), beta.len()), AdvneStatus::Ok);
        assert_eq!(advne_solution_attacker_vertex(solution, 0, alpha.as_mut_ptr(), alpha.len()), AdvneStatus::Ok);
    }
    assert!((beta[30] - 1.0 / 120.0).abs() < 1e-12);

    let mut passed = false;
    let status = unsafe {
        advne_verify(game, alpha.as_ptr(), alpha.len(), beta.as_ptr(), beta.len(), 1e-9, &mut passed)
    };
    assert_eq!(status, AdvneStatus::Ok);
    assert!(passed);

    let uniform = vec![1.0 / beta.len() as f64; beta.len()];
    let status = unsafe {
        advne_verify(game, alpha.as_ptr(), alpha.len(), uniform.as_ptr(), uniform.len(), 1e-9, &mut passed)
    };
    assert_eq!(status, AdvneStatus::Ok);
    assert!(!passed);

    let mut json = ptr::null_mut();
    assert_eq!(unsafe { advne_solution_to_json(solution, &mut json) }, AdvneStatus::Ok);
    let doc: serde_json::Value = serde_json::from_str(unsafe { CStr::from_ptr(json) }.to_str().unwrap()).unwrap();
    assert_eq!(doc["case"], "ii");
    assert_eq!(doc["verification"]["passed"], true);
    unsafe {
        advne_string_free(json);
        advne_solution_free(solution);
        advne_game_free(game);
    }
}

#[test]
fn small_buffers_and_bad_indices_are_reported() {
    let game = reference_game();
    let mut solution = ptr::null_mut();
    assert_eq!(unsafe { advne_solve(game, 1.0, &mut solution) }, AdvneStatus::Ok);
    let mut buf = [0.0; 4];
    let status = unsafe { advne_solution_defender_vertex(solution, 0, buf.as_mut_ptr(), buf.len()) };
    assert_eq!(status, AdvneStatus::BufferTooSmall);
    assert!(last_error().contains("102"), "{}", last_error());
    let status = unsafe { advne_solution_attacker_vertex(solution, 5, buf.as_mut_ptr(), buf.len()) };
    assert_eq!(status, AdvneStatus::InvalidInput);
    unsafe {
        advne_solution_free(solution);
        advne_game_free(game);
    }
}

#[test]
fn status_codes_follow_error_classes() {
    let mut game = ptr::null_mut();
    let bad = CString::new("{\"p\": 0.2,").unwrap();
    assert_eq!(unsafe { advne_game_from_json(bad.as_ptr(), &mut game) }, AdvneStatus::InvalidInput);
    assert!(game.is_null());
    assert!(last_error().contains("EOF"), "{}", last_error());

    let zero = CString::new(
        r#"{"p": 0.2, "c_d": 1, "c_fa": 1, "vectors": [{"id": "a", "features": [0], "reward": 1, "noise": 1}, {"id": "b", "features": [1], "reward": 2, "noise": 0}]}"#,
    )
    .unwrap();
    assert_eq!(unsafe { advne_game_from_json(zero.as_ptr(), &mut game) }, AdvneStatus::Ok);
    let mut solution = ptr::null_mut();
    assert_eq!(unsafe { advne_solve(game, 1.0, &mut solution) }, AdvneStatus::ModelAssumption);
    assert!(solution.is_null());
    assert_eq!(unsafe { advne_solve(game, -1.0, &mut solution) }, AdvneStatus::InvalidInput);
    unsafe { advne_game_free(game) };

    assert_eq!(unsafe { advne_game_binomial(10, 0.3, 1.0, 1.0, 1.0, 1.0, &mut game) }, AdvneStatus::ModelAssumption);
    assert_eq!(unsafe { advne_game_from_json(ptr::null(), &mut game) }, AdvneStatus::NullPointer);
    assert_eq!(unsafe { advne_game_levels(ptr::null(), ptr::null_mut()) }, AdvneStatus::NullPointer);
    unsafe {
        advne_game_free(ptr::null_mut());
        advne_solution_free(ptr::null_mut());
        advne_string_free(ptr::null_mut());
    }
}

#[test]
fn vectors_with_shared_rewards_merge() {
    let rewards = [1.0, 2.0, 2.0, 4.0];
    let noise = [0.4, 0.3, 0.2, 0.1];
    let mut game = ptr::null_mut();
    let status = unsafe { advne_game_from_vectors(rewards.as_ptr(), noise.as_ptr(), 4, 0.3, 2.0, 1.0, &mut game) };
    assert_eq!(status, AdvneStatus::Ok, "{}", last_error());
    let mut levels = 0;
    let mut out = [0.0; 3];
    unsafe {
        advne_game_levels(game, &mut levels);
        assert_eq!(advne_game_rewards(game, out.as_mut_ptr(), out.len()), AdvneStatus::Ok);
    }
    assert_eq!(levels, 3);
    assert_eq!(out, [1.0, 2.0, 4.0]);
    let mut solution = ptr::null_mut();
    assert_eq!(unsafe { advne_solve(game, 1.0, &mut solution) }, AdvneStatus::Ok);
    unsafe {
        advne_solution_free(solution);
        advne_game_free(game);
    }
}

#[test]
fn version_is_the_crate_version() {
    let v = unsafe { CStr::from_ptr(advne_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
