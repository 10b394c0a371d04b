use thiserror::Error;

/// Errors raised by model construction, the solver and the oracle.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed or inconsistent input (bad dimensions, unknown ids, out-of-range values).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unknown attack vector id `{0}`")]
    UnknownVector(String),

    #[error("{what} must sum to 1 within 1e-12 (got {sum:.17})")]
    NotNormalized { what: String, sum: f64 },

    /// The prior must lie strictly inside (0, 1) for the false-alarm scaling (1-p)/p.
    #[error("model assumption violated: attacker prior p = {0} must satisfy 0 < p < 1")]
    DegeneratePrior(f64),

    /// Some reward level carries no non-attacker mass, so the false-alarm
    /// penalty vector is not strictly decreasing.
    #[error(
        "model assumption violated: reward level {level} (reward {reward}) has zero non-attacker mass; \
         the false-alarm penalty vector must be strictly decreasing (use the brute-force oracle instead)"
    )]
    ZeroNoiseMass { level: usize, reward: f64 },

    /// An attacker strategy handed to the expansion step is not consistent with an equilibrium.
    #[error("inconsistent equilibrium input: {0}")]
    Consistency(String),

    #[error("problem too large for exhaustive method: {what} = {size} exceeds limit {limit}")]
    SizeLimit { what: &'static str, size: usize, limit: usize },

    #[error("linear program failed: {0}")]
    Lp(String),

    /// Solver invariant broken; indicates a bug rather than bad input.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// True for violations of the model's admissibility conditions (as opposed to malformed input).
    pub fn is_model_assumption(&self) -> bool {
        matches!(self, Error::DegeneratePrior(_) | Error::ZeroNoiseMass { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
