use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hurst::Method;
use crate::synthesis::{Ar1Params, FormingKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Scenario {
    SelfPlusWhite,
    SelfPlusAr1,
    SelfPlusSelf,
    MultiStream,
}

impl Scenario {
    pub fn is_pairwise(self) -> bool {
        !matches!(self, Scenario::MultiStream)
    }
}

pub const PAPER_RATIO_GRID: [f64; 5] = [1.0, 0.85, 0.65, 0.5, 0.35];
pub const PAPER_LENGTH: usize = 1000;
pub const PAPER_BASE_CV: f64 = 1.2;
pub const DEFAULT_REPLICATIONS: usize = 100;

/// Every stream is calibrated to this mean intensity.
pub const STREAM_MEAN: f64 = 1.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub scenario: Scenario,
    pub h_values: Vec<f64>,
    #[serde(default = "default_base_cv")]
    pub base_cv: f64,
    #[serde(default = "default_ratio_grid")]
    pub ratio_grid: Vec<f64>,
    #[serde(default = "default_length")]
    pub length: usize,
    #[serde(default = "default_replications")]
    pub replications: usize,
    pub base_seed: u64,
    #[serde(default = "default_estimator")]
    pub estimator: Method,
    #[serde(default = "default_phi")]
    pub ar_phi: f64,
}

fn default_base_cv() -> f64 {
    PAPER_BASE_CV
}
fn default_ratio_grid() -> Vec<f64> {
    PAPER_RATIO_GRID.to_vec()
}
fn default_length() -> usize {
    PAPER_LENGTH
}
fn default_replications() -> usize {
    DEFAULT_REPLICATIONS
}
fn default_estimator() -> Method {
    Method::Dfa
}
fn default_phi() -> f64 {
    Ar1Params::DEFAULT_PHI
}

impl ExperimentConfig {
    /// The defaults for `scenario` with the given component Hurst exponents.
    pub fn new(scenario: Scenario, h_values: Vec<f64>, base_seed: u64) -> Self {
        Self {
            scenario,
            h_values,
            base_cv: PAPER_BASE_CV,
            ratio_grid: PAPER_RATIO_GRID.to_vec(),
            length: PAPER_LENGTH,
            replications: DEFAULT_REPLICATIONS,
            base_seed,
            estimator: Method::Dfa,
            ar_phi: Ar1Params::DEFAULT_PHI,
        }
    }

    /// Self-similar stream (H = 0.8) plus independent values.
    pub fn table1(base_seed: u64) -> Self {
        Self::new(Scenario::SelfPlusWhite, vec![0.8, 0.5], base_seed)
    }

    /// Two self-similar streams, H = 0.8 and 0.6.
    pub fn table2(base_seed: u64) -> Self {
        Self::new(Scenario::SelfPlusSelf, vec![0.8, 0.6], base_seed)
    }

    pub fn validate(&self) -> Result<()> {
        let arity = self.h_values.len();
        match self.scenario {
            s if s.is_pairwise() && arity != 2 => {
                return Err(Error::invalid(format!("{s:?} needs exactly 2 h_values, got {arity}")))
            }
            Scenario::MultiStream if arity < 2 => {
                return Err(Error::invalid(format!("MULTI_STREAM needs at least 2 h_values, got {arity}")))
            }
            _ => {}
        }
        if let Some(h) = self.h_values.iter().find(|h| !(**h > 0.0 && **h < 1.0)) {
            return Err(Error::invalid(format!("h_values must lie in (0, 1), got {h}")));
        }
        if !(self.base_cv > 0.0 && self.base_cv.is_finite()) {
            return Err(Error::invalid(format!("base_cv must be positive, got {}", self.base_cv)));
        }
        if let Some(r) = self.ratio_grid.iter().find(|r| !(**r > 0.0 && **r <= 2.0)) {
            return Err(Error::invalid(format!("ratio_grid values must lie in (0, 2], got {r}")));
        }
        if self.length < 2 {
            return Err(Error::invalid(format!("length must be at least 2, got {}", self.length)));
        }
        if self.replications == 0 {
            return Err(Error::invalid("replications must be at least 1"));
        }
        if self.scenario == Scenario::SelfPlusAr1 && (self.ar_phi.is_nan() || self.ar_phi.abs() >= 1.0) {
            return Err(Error::invalid(format!("ar_phi must satisfy |phi| < 1, got {}", self.ar_phi)));
        }
        if self.scenario == Scenario::MultiStream {
            let max = self.h_values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if self.h_values.iter().filter(|&&h| h == max).count() > 1 {
                return Err(Error::invalid("MULTI_STREAM needs a unique maximum in h_values"));
            }
        }
        Ok(())
    }

    /// Forming process of every stream, in order.
    pub fn forming_kinds(&self) -> Vec<FormingKind> {
        match self.scenario {
            Scenario::SelfPlusWhite => vec![FormingKind::Fgn { hurst: self.h_values[0] }, FormingKind::White],
            Scenario::SelfPlusAr1 => {
                vec![FormingKind::Fgn { hurst: self.h_values[0] }, FormingKind::Ar1 { phi: self.ar_phi }]
            }
            Scenario::SelfPlusSelf | Scenario::MultiStream => {
                self.h_values.iter().map(|&hurst| FormingKind::Fgn { hurst }).collect()
            }
        }
    }

    /// Index of the stream that keeps `base_cv`: the largest nominal Hurst
    /// exponent, lowest index on ties.
    pub fn max_hurst_index(&self) -> usize {
        self.h_values
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, &h)| if h > best.1 { (i, h) } else { best })
            .0
    }

    pub fn from_json(bytes: &[u8]) -> Result<Self> {
        let config: Self = serde_json::from_slice(bytes)?;
        config.validate()?;
        Ok(config)
    }
}
