//! The exponential traffic model `Y(t) = b * exp(k * X(t))`.
//!
//! With a standardized Gaussian forming process `Y` is lognormal, so `(b, k)`
//! follow in closed form from a target mean and coefficient of variation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::synthesis::{FormingKind, GaussianSeries};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelCoefficients {
    /// Intensity scale, in traffic units.
    pub b: f64,
    /// Burst amplitude.
    pub k: f64,
    pub target_mean: f64,
    pub target_cv: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    pub mean: f64,
    pub variance: f64,
    pub cv: f64,
}

impl ModelCoefficients {
    /// Coefficients given directly; the targets are filled in from the
    /// lognormal moments.
    pub fn from_parts(b: f64, k: f64) -> Result<Self> {
        if !(b > 0.0 && b.is_finite()) {
            return Err(Error::invalid(format!("b must be positive, got {b}")));
        }
        if !(k >= 0.0 && k.is_finite()) {
            return Err(Error::invalid(format!("k must be nonnegative, got {k}")));
        }
        let mut coeffs = Self { b, k, target_mean: 0.0, target_cv: 0.0 };
        let m = theoretical_moments(&coeffs);
        coeffs.target_mean = m.mean;
        coeffs.target_cv = m.cv;
        Ok(coeffs)
    }
}

/// `k = sqrt(ln(1 + cv²))`, `b = mean * exp(-k²/2)`.
pub fn calibrate(target_mean: f64, target_cv: f64) -> Result<ModelCoefficients> {
    if !(target_mean > 0.0 && target_mean.is_finite()) {
        return Err(Error::invalid(format!("target mean must be positive, got {target_mean}")));
    }
    if !(target_cv >= 0.0 && target_cv.is_finite()) {
        return Err(Error::invalid(format!("target cv must be nonnegative, got {target_cv}")));
    }
    let k2 = (target_cv * target_cv).ln_1p();
    Ok(ModelCoefficients { b: target_mean * (-0.5 * k2).exp(), k: k2.sqrt(), target_mean, target_cv })
}

pub fn theoretical_moments(coeffs: &ModelCoefficients) -> Moments {
    let k2 = coeffs.k * coeffs.k;
    let growth = k2.exp_m1();
    let mean = coeffs.b * (0.5 * k2).exp();
    Moments { mean, variance: mean * mean * growth, cv: growth.sqrt() }
}

/// Where a trace came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "origin", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TraceOrigin {
    Model { coefficients: ModelCoefficients, forming: FormingKind },
    Sum { components: usize },
    External,
}

/// Traffic intensity per time slot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrafficTrace {
    values: Vec<f64>,
    origin: TraceOrigin,
}

impl TrafficTrace {
    /// Wrap measured or imported values. They must be finite, nonnegative and
    /// there must be at least one.
    pub fn external(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid("trace is empty"));
        }
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::invalid(format!("trace values must be finite and nonnegative, got {v}")));
        }
        Ok(Self { values, origin: TraceOrigin::External })
    }

    pub(crate) fn from_parts(values: Vec<f64>, origin: TraceOrigin) -> Self {
        Self { values, origin }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn origin(&self) -> TraceOrigin {
        self.origin
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

/// Pointwise `b * exp(k * x)`.
pub fn transform(forming: &GaussianSeries, coeffs: &ModelCoefficients) -> Result<TrafficTrace> {
    if !(coeffs.b > 0.0 && coeffs.k >= 0.0) {
        return Err(Error::invalid(format!("invalid coefficients b={}, k={}", coeffs.b, coeffs.k)));
    }
    let x = forming.values();
    if x.is_empty() {
        return Err(Error::invalid("forming series is empty"));
    }
    let max = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exponent = coeffs.k * max + coeffs.b.ln();
    if exponent.is_nan() || exponent >= f64::MAX.ln() {
        return Err(Error::Range { exponent });
    }
    let values = x.iter().map(|&v| coeffs.b * (coeffs.k * v).exp()).collect();
    Ok(TrafficTrace::from_parts(values, TraceOrigin::Model { coefficients: *coeffs, forming: forming.kind() }))
}
