mod common;

use common::{aggregated_variance_slope, mean, sample_autocov, std_err};
use proptest::prelude::*;
use selfsim::hurst::{Estimator, Method, ScaleGrid};
use selfsim::synthesis::{
    fgn_autocovariance, generate_ar1, generate_fgn, generate_fgn_unstandardized, generate_white, Ar1Params, FgnParams,
    FormingKind,
};

const N16: usize = 1 << 16;
const N14: usize = 1 << 14;

fn fgn(h: f64, n: usize, seed: u64) -> Vec<f64> {
    generate_fgn(FgnParams::new(h, n, seed).unwrap()).unwrap().into_values()
}

fn dfa(x: &[f64], grid: ScaleGrid) -> f64 {
    Estimator { method: Method::Dfa, grid, dfa_order: 1 }.estimate_values(x).unwrap().hurst
}

/// Autocovariance about the known zero mean, normalized by the pair count.
fn zero_mean_autocov(x: &[f64], lag: usize) -> f64 {
    x.iter().zip(&x[lag..]).map(|(a, b)| a * b).sum::<f64>() / (x.len() - lag) as f64
}

#[test]
fn fgn_covariance_matches_theory() {
    // Checked before standardization: removing the sample mean biases the
    // lag covariances down by about N^(2H-2), which is several standard
    // errors at H >= 0.8.
    for h in [0.6, 0.7, 0.8, 0.9] {
        let series: Vec<Vec<f64>> =
            (0..20).map(|s| generate_fgn_unstandardized(FgnParams::new(h, N16, s).unwrap()).unwrap()).collect();
        for lag in 1..=10 {
            let acov: Vec<f64> = series.iter().map(|x| zero_mean_autocov(x, lag)).collect();
            let gamma = fgn_autocovariance(h, lag as u64).unwrap();
            let (m, se) = (mean(&acov), std_err(&acov));
            assert!((m - gamma).abs() <= 3.0 * se, "H={h} lag={lag}: {m} vs {gamma} (se {se})");
        }
    }
}

#[test]
fn aggregated_variance_scaling() {
    let slopes: Vec<f64> = (0..20).map(|s| aggregated_variance_slope(&fgn(0.8, N16, s), &[8, 16, 32, 64])).collect();
    let m = mean(&slopes);
    assert!((m - (-0.4)).abs() <= 0.08, "slope {m}");
}

#[test]
fn white_case_of_fgn_is_uncorrelated() {
    let x = fgn(0.5, N16, 1);
    let rho = sample_autocov(&x, 1);
    assert!(rho.abs() <= 3.0 / (N16 as f64).sqrt(), "rho1 = {rho}");
}

#[test]
fn fgn_lag_one_against_seed_spread() {
    let gamma = fgn_autocovariance(0.8, 1).unwrap();
    let spread: Vec<f64> = (0..20).map(|s| sample_autocov(&fgn(0.8, N16, 100 + s), 1)).collect();
    let se = common::sd(&spread);
    let observed = sample_autocov(&fgn(0.8, N16, 1), 1);
    assert!((observed - gamma).abs() <= 3.0 * se, "{observed} vs {gamma} (se {se})");
}

#[test]
fn white_noise_reads_half_under_dfa() {
    let hs: Vec<f64> =
        (0..50).map(|s| dfa(generate_white(N14, 7 + s).unwrap().values(), ScaleGrid::default())).collect();
    let m = mean(&hs);
    assert!((0.45..=0.55).contains(&m), "mean DFA {m}");
}

#[test]
fn ar1_lag_one_correlation() {
    let phi = 0.5;
    let spread: Vec<f64> = (0..20)
        .map(|s| sample_autocov(generate_ar1(Ar1Params::new(phi, N16, 100 + s).unwrap()).unwrap().values(), 1))
        .collect();
    let se = common::sd(&spread);
    let observed = sample_autocov(generate_ar1(Ar1Params::new(phi, N16, 1).unwrap()).unwrap().values(), 1);
    assert!((observed - phi).abs() <= 3.0 * se, "{observed} (se {se})");
}

#[test]
fn ar1_is_short_range_dependent() {
    let grid = ScaleGrid { min_scale: 32, ..ScaleGrid::default() };
    let hs: Vec<f64> =
        (0..50).map(|s| dfa(generate_ar1(Ar1Params::new(0.5, N14, s).unwrap()).unwrap().values(), grid)).collect();
    let m = mean(&hs);
    assert!((0.45..=0.60).contains(&m), "mean DFA {m}");
}

#[test]
fn forming_kind_dispatch() {
    let a = FormingKind::Fgn { hurst: 0.7 }.generate(100, 4).unwrap();
    assert_eq!(a, generate_fgn(FgnParams::new(0.7, 100, 4).unwrap()).unwrap());
    let b = FormingKind::Ar1 { phi: 0.3 }.generate(100, 4).unwrap();
    assert_eq!(b.kind(), FormingKind::Ar1 { phi: 0.3 });
    assert_eq!(FormingKind::White.nominal_hurst(), 0.5);
}

fn check_standardized(x: &[f64]) -> Result<(), TestCaseError> {
    let n = x.len() as f64;
    let m = x.iter().sum::<f64>() / n;
    let v = x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / n;
    prop_assert!(m.abs() < 1e-9, "mean {}", m);
    prop_assert!((v - 1.0).abs() < 1e-9, "variance {}", v);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generators_are_standardized_and_pure(
        seed in any::<u64>(),
        n in 2usize..3000,
        h in 0.01f64..0.99,
        phi in -0.95f64..0.95,
    ) {
        for kind in [FormingKind::Fgn { hurst: h }, FormingKind::White, FormingKind::Ar1 { phi }] {
            let a = kind.generate(n, seed).unwrap();
            prop_assert_eq!(a.len(), n);
            prop_assert_eq!(a.seed(), seed);
            check_standardized(a.values())?;
            prop_assert_eq!(&a, &kind.generate(n, seed).unwrap());
        }
    }
}
