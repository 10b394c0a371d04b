//! Nash equilibria of the adversarial classification game.
//!
//! An attacker picks an attack vector, a defender picks a (possibly
//! randomized) classifier, and non-attacker traffic is drawn from a known
//! distribution over the same vectors. [`reduction`] collapses the game onto
//! reward levels and threshold classifiers, [`solver`] computes every
//! equilibrium of the reduced game in closed form, and [`oracle`] checks the
//! results with an independent LP solver and exhaustive search.

pub mod cli;
pub mod error;
pub mod experiments;
pub mod game;
pub mod oracle;
pub mod reduction;
pub mod solver;

pub use error::{Error, Result};
pub use game::{AttackVector, Classifier, ClassifierMix, GameParams, GameSpec, MixedStrategy, VectorEntry};
pub use reduction::{reduce, DetectionProfile, ReducedGame, ThresholdClassifier};
pub use solver::{compute_all_ne, solve_spec, EquilibriumCase, EquilibriumSet, EquilibriumSolver, GameMatrices};
