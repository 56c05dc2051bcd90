//! Hurst exponent estimators: rescaled range, detrended fluctuation analysis
//! and aggregated variance. Each one computes a statistic per scale and hands
//! the `(scale, statistic)` pairs to [`loglog_fit`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::traffic::TrafficTrace;

pub const MIN_FIT_POINTS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Method {
    Rs,
    Dfa,
    AggVar,
}

impl Method {
    /// Maps the log-log slope onto a Hurst exponent.
    pub fn hurst_from_slope(self, slope: f64) -> f64 {
        match self {
            Method::Rs | Method::Dfa => slope,
            Method::AggVar => 1.0 + slope / 2.0,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Rs => "RS",
            Method::Dfa => "DFA",
            Method::AggVar => "AGGVAR",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rs" | "r/s" => Ok(Method::Rs),
            "dfa" => Ok(Method::Dfa),
            "aggvar" | "agg-var" | "aggregated-variance" => Ok(Method::AggVar),
            _ => Err(Error::invalid(format!("unknown estimation method '{s}'"))),
        }
    }
}

/// Geometrically spaced block sizes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaleGrid {
    pub min_scale: usize,
    /// Largest scale as a fraction of the trace length.
    pub max_scale_fraction: f64,
    pub points_per_decade: usize,
}

impl Default for ScaleGrid {
    fn default() -> Self {
        Self { min_scale: 8, max_scale_fraction: 0.25, points_per_decade: 8 }
    }
}

impl ScaleGrid {
    pub fn validate(&self) -> Result<()> {
        if self.min_scale < 4 {
            return Err(Error::invalid(format!("min_scale must be at least 4, got {}", self.min_scale)));
        }
        if !(self.max_scale_fraction > 0.0 && self.max_scale_fraction <= 1.0) {
            return Err(Error::invalid(format!(
                "max_scale_fraction must lie in (0, 1], got {}",
                self.max_scale_fraction
            )));
        }
        if self.points_per_decade == 0 {
            return Err(Error::invalid("points_per_decade must be positive"));
        }
        Ok(())
    }

    /// Ascending, deduplicated scales for a trace of `length` samples.
    pub fn scales(&self, length: usize) -> Result<Vec<usize>> {
        self.validate()?;
        if length < 4 * self.min_scale {
            return Err(Error::NonEstimable(format!(
                "trace of length {length} is shorter than 4 * min_scale = {}",
                4 * self.min_scale
            )));
        }
        let max_scale = (self.max_scale_fraction * length as f64).floor() as usize;
        let mut scales: Vec<usize> = Vec::new();
        for i in 0.. {
            let s = (self.min_scale as f64 * 10f64.powf(i as f64 / self.points_per_decade as f64)).round() as usize;
            if s > max_scale {
                break;
            }
            if scales.last() != Some(&s) {
                scales.push(s);
            }
        }
        if scales.len() < MIN_FIT_POINTS {
            return Err(Error::NonEstimable(format!(
                "only {} scales fit between {} and {max_scale}",
                scales.len(),
                self.min_scale
            )));
        }
        Ok(scales)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogLogFit {
    pub slope: f64,
    /// Base-10 intercept.
    pub intercept: f64,
    pub r_squared: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HurstEstimate {
    pub hurst: f64,
    pub method: Method,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub scales_used: usize,
}

/// Ordinary least squares of `log10(statistic)` on `log10(scale)`.
pub fn loglog_fit(points: &[(f64, f64)]) -> Result<LogLogFit> {
    if points.len() < MIN_FIT_POINTS {
        return Err(Error::TooFewPoints(points.len()));
    }
    if let Some(&(scale, statistic)) = points.iter().find(|(s, v)| !(*s > 0.0 && *v > 0.0)) {
        return Err(Error::NonPositive { scale, statistic });
    }
    let n = points.len() as f64;
    let logs: Vec<(f64, f64)> = points.iter().map(|&(s, v)| (s.log10(), v.log10())).collect();
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in &logs {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if sxx <= 0.0 {
        return Err(Error::NonEstimable("all scales are identical".into()));
    }
    let slope = sxy / sxx;
    let r_squared = if syy > 0.0 { (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0) } else { 1.0 };
    Ok(LogLogFit { slope, intercept: my - slope * mx, r_squared })
}

/// A method together with its scale grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimator {
    pub method: Method,
    #[serde(default)]
    pub grid: ScaleGrid,
    /// Detrending polynomial order, used by DFA only.
    #[serde(default = "default_dfa_order")]
    pub dfa_order: usize,
}

fn default_dfa_order() -> usize {
    1
}

impl Default for Estimator {
    fn default() -> Self {
        Self::new(Method::Dfa)
    }
}

impl Estimator {
    pub fn new(method: Method) -> Self {
        Self { method, grid: ScaleGrid::default(), dfa_order: 1 }
    }

    pub fn estimate(&self, trace: &TrafficTrace) -> Result<HurstEstimate> {
        self.estimate_values(trace.values())
    }

    pub fn estimate_values(&self, values: &[f64]) -> Result<HurstEstimate> {
        match self.method {
            Method::Rs => rs_values(values, &self.grid),
            Method::Dfa => dfa_values(values, &self.grid, self.dfa_order),
            Method::AggVar => aggvar_values(values, &self.grid),
        }
    }
}

pub fn estimate_rs(trace: &TrafficTrace, grid: &ScaleGrid) -> Result<HurstEstimate> {
    rs_values(trace.values(), grid)
}

pub fn estimate_dfa(trace: &TrafficTrace, grid: &ScaleGrid, order: usize) -> Result<HurstEstimate> {
    dfa_values(trace.values(), grid, order)
}

pub fn estimate_aggvar(trace: &TrafficTrace, grid: &ScaleGrid) -> Result<HurstEstimate> {
    aggvar_values(trace.values(), grid)
}

fn prepare(values: &[f64], grid: &ScaleGrid) -> Result<Vec<usize>> {
    if let Some(v) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::invalid(format!("trace contains non-finite value {v}")));
    }
    let scales = grid.scales(values.len())?;
    if is_constant(values) {
        return Err(Error::NonEstimable("trace is constant".into()));
    }
    Ok(scales)
}

fn is_constant(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[0] == w[1])
}

fn finish(method: Method, points: Vec<(f64, f64)>) -> Result<HurstEstimate> {
    if points.len() < MIN_FIT_POINTS {
        return Err(Error::NonEstimable(format!("only {} non-degenerate scales remain", points.len())));
    }
    let fit = loglog_fit(&points)?;
    Ok(HurstEstimate {
        hurst: method.hurst_from_slope(fit.slope),
        method,
        slope: fit.slope,
        intercept: fit.intercept,
        r_squared: fit.r_squared,
        scales_used: points.len(),
    })
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

fn rs_values(values: &[f64], grid: &ScaleGrid) -> Result<HurstEstimate> {
    let scales = prepare(values, grid)?;
    let mut points = Vec::with_capacity(scales.len());
    for &n in &scales {
        let mut total = 0.0;
        let mut used = 0usize;
        for block in values.chunks_exact(n) {
            // constant blocks have no defined R/S
            if is_constant(block) {
                continue;
            }
            let m = mean(block);
            let (mut z, mut lo, mut hi, mut ss) = (0.0f64, f64::INFINITY, f64::NEG_INFINITY, 0.0);
            for &v in block {
                let d = v - m;
                z += d;
                lo = lo.min(z);
                hi = hi.max(z);
                ss += d * d;
            }
            let sd = (ss / n as f64).sqrt();
            if sd > 0.0 {
                total += (hi - lo) / sd;
                used += 1;
            }
        }
        if used > 0 && total > 0.0 {
            points.push((n as f64, total / used as f64));
        }
    }
    finish(Method::Rs, points)
}

/// Orthonormal basis of polynomials up to `order` sampled on `size` points.
fn polynomial_basis(size: usize, order: usize) -> Vec<Vec<f64>> {
    let t: Vec<f64> = (0..size).map(|j| 2.0 * j as f64 / (size - 1) as f64 - 1.0).collect();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(order + 1);
    for p in 0..=order {
        let mut col: Vec<f64> = t.iter().map(|x| x.powi(p as i32)).collect();
        // modified Gram-Schmidt, twice for stability at higher orders
        for _ in 0..2 {
            for q in &basis {
                let dot: f64 = col.iter().zip(q).map(|(a, b)| a * b).sum();
                col.iter_mut().zip(q).for_each(|(a, b)| *a -= dot * b);
            }
        }
        let norm = col.iter().map(|a| a * a).sum::<f64>().sqrt();
        col.iter_mut().for_each(|a| *a /= norm);
        basis.push(col);
    }
    basis
}

fn dfa_values(values: &[f64], grid: &ScaleGrid, order: usize) -> Result<HurstEstimate> {
    if order == 0 {
        return Err(Error::invalid("DFA order must be positive"));
    }
    if order + 2 > grid.min_scale {
        return Err(Error::invalid(format!("DFA order {order} needs min_scale of at least {}", order + 2)));
    }
    let scales = prepare(values, grid)?;
    let m = mean(values);
    let profile: Vec<f64> = values
        .iter()
        .scan(0.0, |acc, &v| {
            *acc += v - m;
            Some(*acc)
        })
        .collect();

    let mut points = Vec::with_capacity(scales.len());
    let mut residual = Vec::new();
    for &n in &scales {
        let basis = polynomial_basis(n, order);
        let mut sum_sq = 0.0;
        let mut windows = 0usize;
        for window in profile.chunks_exact(n) {
            residual.clear();
            residual.extend_from_slice(window);
            for q in &basis {
                let dot: f64 = residual.iter().zip(q).map(|(a, b)| a * b).sum();
                residual.iter_mut().zip(q).for_each(|(a, b)| *a -= dot * b);
            }
            sum_sq += residual.iter().map(|r| r * r).sum::<f64>() / n as f64;
            windows += 1;
        }
        let fluctuation = (sum_sq / windows as f64).sqrt();
        if fluctuation > 0.0 {
            points.push((n as f64, fluctuation));
        }
    }
    finish(Method::Dfa, points)
}

fn aggvar_values(values: &[f64], grid: &ScaleGrid) -> Result<HurstEstimate> {
    let scales = prepare(values, grid)?;
    let mut points = Vec::with_capacity(scales.len());
    for &m in &scales {
        let block_means: Vec<f64> = values.chunks_exact(m).map(mean).collect();
        if block_means.len() < 2 {
            continue;
        }
        let mu = mean(&block_means);
        let var = block_means.iter().map(|b| (b - mu) * (b - mu)).sum::<f64>() / block_means.len() as f64;
        if var > 0.0 {
            points.push((m as f64, var));
        }
    }
    finish(Method::AggVar, points)
}
