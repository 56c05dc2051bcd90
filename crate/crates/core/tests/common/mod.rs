#![allow(dead_code)]

pub fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

/// Sample standard deviation (n - 1).
pub fn sd(x: &[f64]) -> f64 {
    let m = mean(x);
    (x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (x.len() as f64 - 1.0)).sqrt()
}

/// Monte Carlo standard error of the mean.
pub fn std_err(x: &[f64]) -> f64 {
    sd(x) / (x.len() as f64).sqrt()
}

/// `(1/N) Σ (x_t − x̄)(x_{t+lag} − x̄)`.
pub fn sample_autocov(x: &[f64], lag: usize) -> f64 {
    let m = mean(x);
    x.iter().zip(&x[lag..]).map(|(a, b)| (a - m) * (b - m)).sum::<f64>() / x.len() as f64
}

pub fn population_cv(x: &[f64]) -> f64 {
    let m = mean(x);
    (x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / x.len() as f64).sqrt() / m
}

/// OLS slope of log10(var of block means) on log10(block size).
pub fn aggregated_variance_slope(x: &[f64], sizes: &[usize]) -> f64 {
    let pts: Vec<(f64, f64)> = sizes
        .iter()
        .map(|&m| {
            let means: Vec<f64> = x.chunks_exact(m).map(mean).collect();
            let mu = mean(&means);
            let var = means.iter().map(|b| (b - mu).powi(2)).sum::<f64>() / means.len() as f64;
            ((m as f64).log10(), var.log10())
        })
        .collect();
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / pts.len() as f64;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}
