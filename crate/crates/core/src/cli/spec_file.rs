//! JSON game description accepted by every command.
//!
//! ```json
//! { "p": 0.2, "c_d": 120, "c_fa": 140,
//!   "vectors": [ { "id": "v1", "features": [0], "reward": 0, "noise": 0.3 }, ... ] }
//! ```
//!
//! or, for a single-feature binomial game with rewards `0, c_a, ..., N c_a`,
//!
//! ```json
//! { "p": 0.2, "c_d": 120, "c_fa": 140, "binomial": { "N": 100, "theta0": 0.2, "c_a": 1 } }
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experiments::{BinomialNoiseSpec, GameSource};
use crate::game::{AttackVector, GameParams, GameSpec, VectorEntry};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub p: f64,
    pub c_d: f64,
    pub c_fa: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vectors: Option<Vec<VectorRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub binomial: Option<BinomialRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorRecord {
    pub id: String,
    pub features: Vec<i64>,
    pub reward: f64,
    pub noise: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BinomialRecord {
    #[serde(rename = "N")]
    pub trials: u32,
    pub theta0: f64,
    pub c_a: f64,
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("spec file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            Error::InvalidInput(msg) => Error::InvalidInput(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn params(&self) -> Result<GameParams> {
        GameParams::new(self.p, self.c_d, self.c_fa)
    }

    pub fn game(&self) -> Result<GameSource> {
        let params = self.params()?;
        match (&self.vectors, &self.binomial) {
            (Some(vectors), None) => {
                let entries = vectors
                    .iter()
                    .map(|v| VectorEntry {
                        vector: AttackVector::new(v.id.clone(), v.features.clone()),
                        reward: v.reward,
                        noise: v.noise,
                    })
                    .collect();
                Ok(GameSource::Spec(GameSpec::new(entries, params)?))
            }
            (None, Some(b)) => {
                let noise = BinomialNoiseSpec::new(b.trials, b.theta0, b.c_a)?;
                Ok(GameSource::Binomial { noise, params })
            }
            _ => Err(Error::InvalidInput("spec file needs exactly one of `vectors` and `binomial`".into())),
        }
    }
}
