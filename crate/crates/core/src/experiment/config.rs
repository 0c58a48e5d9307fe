//! Experiment configurations.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bogomolov::CorpusSpec;
use crate::error::{Error, Result};

/// One run: what to compute, the seed, and where to write the record.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(flatten)]
    pub inputs: Inputs,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

fn default_k() -> u32 {
    3
}

fn default_pin_u() -> usize {
    2
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Inputs {
    /// Weil height of each coordinate and the canonical height of a point.
    Height { point: String },
    /// Galois orbit of an exact point and its Weyl sums for `0 < ‖k‖∞ ≤ K`.
    Orbit {
        point: String,
        #[serde(rename = "K", default = "default_k")]
        k_max: u32,
    },
    /// Equilibrium-measure sample of a curve and its Weyl sums.
    Equidist {
        curve: String,
        #[serde(rename = "N")]
        n: usize,
        #[serde(rename = "K", default = "default_k")]
        k_max: u32,
        /// Where to write the sample in its text format.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sample_path: Option<PathBuf>,
    },
    /// Stabilizer, coset type and generation test of a hypersurface.
    Stabilizer { curve: String },
    /// Uniform scan over members of a coefficient family; a family without
    /// free coefficients with the single member `[]` scans one curve.
    BogomolovScan {
        family: String,
        members: Vec<Vec<String>>,
        thresholds: Vec<f64>,
        #[serde(default)]
        corpus: CorpusSpec,
    },
    /// Pinning points and the non-degeneracy test for a family.
    Pinning {
        family: String,
        corpus: Vec<String>,
        #[serde(default = "default_pin_u")]
        u: usize,
    },
}

impl Inputs {
    pub fn kind(&self) -> &'static str {
        match self {
            Inputs::Height { .. } => "height",
            Inputs::Orbit { .. } => "orbit",
            Inputs::Equidist { .. } => "equidist",
            Inputs::Stabilizer { .. } => "stabilizer",
            Inputs::BogomolovScan { .. } => "bogomolov-scan",
            Inputs::Pinning { .. } => "pinning",
        }
    }
}

impl ExperimentConfig {
    pub fn new(inputs: Inputs) -> Self {
        ExperimentConfig {
            inputs,
            seed: 0,
            output: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Parses JSON, reporting the offending key on failure.
    pub fn from_json(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::config("<document>", e.to_string()))?;
        Self::from_value(v)
    }

    pub fn from_value(v: Value) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_value(v).map_err(|e| {
            let msg = e.to_string();
            let key = offending_key(&msg).unwrap_or("<document>").to_string();
            Error::config(key, msg)
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Range checks that the type system does not cover.
    pub fn validate(&self) -> Result<()> {
        match &self.inputs {
            Inputs::Orbit { k_max, .. } | Inputs::Equidist { k_max, .. } if *k_max == 0 => {
                Err(Error::config("K", "K must be positive"))
            }
            Inputs::Equidist { n: 0, .. } => Err(Error::config("N", "N must be positive")),
            Inputs::BogomolovScan { thresholds, corpus, .. } => {
                if thresholds.is_empty() || thresholds.iter().any(|t| !(*t > 0.0 && t.is_finite())) {
                    return Err(Error::config("thresholds", "thresholds must be positive numbers"));
                }
                corpus.validate()
            }
            Inputs::Pinning { u: 0, .. } => Err(Error::config("u", "u must be positive")),
            _ => Ok(()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}

/// The key named in a serde diagnostic such as ``missing field `curve` ``.
fn offending_key(msg: &str) -> Option<&str> {
    if msg.starts_with("unknown variant") {
        return Some("kind");
    }
    let rest = msg.strip_prefix("missing field `").or_else(|| msg.strip_prefix("unknown field `"))?;
    Some(&rest[..rest.find('`')?])
}
