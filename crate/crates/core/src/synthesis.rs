//! Forming processes: exact fractional Gaussian noise by circulant embedding,
//! white noise and AR(1). Every generator returns a standardized series (zero
//! sample mean, unit population variance) so a single `(b, k)` calibration
//! applies to all of them.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Eigenvalues above `-EIGEN_TOLERANCE` are treated as rounding noise and clamped to zero.
pub const EIGEN_TOLERANCE: f64 = 1e-8;

const MIN_BURN_IN: usize = 100;

/// The random source behind every generator. ChaCha8 output is fixed by the
/// seed on every platform.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FgnParams {
    pub hurst: f64,
    pub length: usize,
    pub seed: u64,
}

impl FgnParams {
    pub fn new(hurst: f64, length: usize, seed: u64) -> Result<Self> {
        check_hurst(hurst)?;
        check_length(length)?;
        Ok(Self { hurst, length, seed })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ar1Params {
    pub phi: f64,
    pub length: usize,
    pub seed: u64,
}

impl Ar1Params {
    pub const DEFAULT_PHI: f64 = 0.5;

    pub fn new(phi: f64, length: usize, seed: u64) -> Result<Self> {
        check_phi(phi)?;
        check_length(length)?;
        Ok(Self { phi, length, seed })
    }

    /// Samples discarded before the retained series starts: ten correlation
    /// lengths, never fewer than 100.
    pub fn burn_in(&self) -> usize {
        let corr_len = (1.0 / (1.0 - self.phi.abs())).ceil() as usize;
        (10 * corr_len).max(MIN_BURN_IN)
    }
}

/// Which process produced a [`GaussianSeries`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FormingKind {
    Fgn { hurst: f64 },
    White,
    Ar1 { phi: f64 },
}

impl FormingKind {
    /// Hurst exponent of the process in the long-range sense: `H` for fGn,
    /// 0.5 for the short-memory processes.
    pub fn nominal_hurst(&self) -> f64 {
        match *self {
            FormingKind::Fgn { hurst } => hurst,
            FormingKind::White | FormingKind::Ar1 { .. } => 0.5,
        }
    }

    pub fn generate(&self, length: usize, seed: u64) -> Result<GaussianSeries> {
        match *self {
            FormingKind::Fgn { hurst } => generate_fgn(FgnParams::new(hurst, length, seed)?),
            FormingKind::White => generate_white(length, seed),
            FormingKind::Ar1 { phi } => generate_ar1(Ar1Params::new(phi, length, seed)?),
        }
    }
}

/// A standardized realization of a forming process.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianSeries {
    values: Vec<f64>,
    kind: FormingKind,
    seed: u64,
}

impl GaussianSeries {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn kind(&self) -> FormingKind {
        self.kind
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

fn check_hurst(hurst: f64) -> Result<()> {
    if hurst > 0.0 && hurst < 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("hurst must lie in (0, 1), got {hurst}")))
    }
}

fn check_phi(phi: f64) -> Result<()> {
    if phi.abs() < 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("|phi| must be below 1 for stationarity, got {phi}")))
    }
}

fn check_length(length: usize) -> Result<()> {
    if length >= 2 {
        Ok(())
    } else {
        Err(Error::invalid(format!("series length must be at least 2, got {length}")))
    }
}

/// Autocovariance of unit-variance fGn at `lag`:
/// `½(|k+1|^2H − 2|k|^2H + |k−1|^2H)`.
pub fn fgn_autocovariance(hurst: f64, lag: u64) -> Result<f64> {
    check_hurst(hurst)?;
    Ok(autocov_unchecked(hurst, lag as f64))
}

fn autocov_unchecked(hurst: f64, k: f64) -> f64 {
    let two_h = 2.0 * hurst;
    0.5 * ((k + 1.0).powf(two_h) - 2.0 * k.powf(two_h) + (k - 1.0).abs().powf(two_h))
}

/// Eigenvalues of the circulant matrix whose first row is the autocovariance
/// at lags `0..length-1` mirrored to size `2(length-1)`.
///
/// Values in `[-EIGEN_TOLERANCE, 0)` are clamped to zero; anything lower is an
/// [`Error::EmbeddingFailure`].
pub fn circulant_spectrum(hurst: f64, length: usize) -> Result<Vec<f64>> {
    let raw = raw_spectrum(hurst, length)?;
    let min = raw.iter().copied().fold(f64::INFINITY, f64::min);
    if min < -EIGEN_TOLERANCE {
        return Err(Error::EmbeddingFailure { min_eigenvalue: min });
    }
    Ok(raw.into_iter().map(|v| v.max(0.0)).collect())
}

/// Unclamped eigenvalues, exposed so tests can check nonnegativity before clamping.
pub fn raw_spectrum(hurst: f64, length: usize) -> Result<Vec<f64>> {
    check_hurst(hurst)?;
    check_length(length)?;
    let m = length - 1;
    let size = 2 * m;
    let mut row: Vec<Complex<f64>> =
        (0..size).map(|j| Complex::new(autocov_unchecked(hurst, j.min(size - j) as f64), 0.0)).collect();
    FftPlanner::new().plan_fft_forward(size).process(&mut row);
    Ok(row.into_iter().map(|c| c.re).collect())
}

/// Exact fGn of the requested length. The embedding is sized to the next
/// power of two covering `length - 1` lags and the output truncated.
pub fn generate_fgn(params: FgnParams) -> Result<GaussianSeries> {
    let values = generate_fgn_unstandardized(params)?;
    Ok(GaussianSeries {
        values: standardize(values)?,
        kind: FormingKind::Fgn { hurst: params.hurst },
        seed: params.seed,
    })
}

/// The circulant-embedding draw before standardization: a zero-mean process
/// whose covariance is exactly [`fgn_autocovariance`].
pub fn generate_fgn_unstandardized(params: FgnParams) -> Result<Vec<f64>> {
    check_hurst(params.hurst)?;
    check_length(params.length)?;
    let m = (params.length - 1).next_power_of_two();
    let eigen = circulant_spectrum(params.hurst, m + 1)?;
    let size = eigen.len();

    let mut rng = seeded_rng(params.seed);
    let scale = 1.0 / size as f64;
    let mut w: Vec<Complex<f64>> = eigen
        .iter()
        .map(|&lambda| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex::new(re, im) * (lambda * scale).sqrt()
        })
        .collect();
    FftPlanner::new().plan_fft_forward(size).process(&mut w);
    Ok(w[..params.length].iter().map(|c| c.re).collect())
}

pub fn generate_white(length: usize, seed: u64) -> Result<GaussianSeries> {
    check_length(length)?;
    let mut rng = seeded_rng(seed);
    let values = StandardNormal.sample_iter(&mut rng).take(length).collect();
    Ok(GaussianSeries { values: standardize(values)?, kind: FormingKind::White, seed })
}

/// Stationary AR(1) `X(t) = φX(t−1) + ε(t)`, started from the stationary
/// distribution and run through [`Ar1Params::burn_in`] samples first.
pub fn generate_ar1(params: Ar1Params) -> Result<GaussianSeries> {
    check_phi(params.phi)?;
    check_length(params.length)?;
    let burn = params.burn_in();
    let mut rng = seeded_rng(params.seed);
    let mut driver = StandardNormal.sample_iter(&mut rng).take(burn + params.length);

    let mut x = driver.next().unwrap_or(0.0) / (1.0 - params.phi * params.phi).sqrt();
    let mut values = Vec::with_capacity(params.length);
    for (i, eps) in driver.enumerate() {
        x = params.phi * x + eps;
        if i + 1 >= burn {
            values.push(x);
        }
    }
    Ok(GaussianSeries { values: standardize(values)?, kind: FormingKind::Ar1 { phi: params.phi }, seed: params.seed })
}

/// Shift and scale to zero mean and unit population variance.
pub fn standardize(mut values: Vec<f64>) -> Result<Vec<f64>> {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    if !(var > 0.0 && var.is_finite()) {
        return Err(Error::invalid("cannot standardize a series with zero variance"));
    }
    let sd = var.sqrt();
    for v in &mut values {
        *v = (*v - mean) / sd;
    }
    Ok(values)
}
