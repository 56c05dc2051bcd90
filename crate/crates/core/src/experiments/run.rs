use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::experiments::config::{ExperimentConfig, Scenario, STREAM_MEAN};
use crate::experiments::table::{ExperimentRow, ExperimentTable};
use crate::hurst::Estimator;
use crate::multiplex::{mux_report, HurstSource, MuxReport};
use crate::traffic::{calibrate, transform, TrafficTrace};

/// Rows with a larger share of failed replications are flagged.
pub const MAX_FAILURE_FRACTION: f64 = 0.05;

/// `(cv of the max-H stream, cv of every other stream)` so that R1, or each
/// term in the denominator of R2, equals `ratio`.
pub fn realize_ratio(base_cv: f64, ratio: f64) -> (f64, f64) {
    (base_cv, base_cv / ratio)
}

/// Seed of replication `replication` is `base_seed + replication`; each
/// stream gets a seed mixed from that and its index.
///
/// The ratio does not enter: within a replication every row of the grid
/// reuses the same forming realizations and only the calibration changes.
pub fn derive_seed(base_seed: u64, replication: usize, stream: usize) -> u64 {
    let rep_seed = base_seed.wrapping_add(replication as u64);
    splitmix64(splitmix64(rep_seed).wrapping_add(stream as u64))
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Two-stream scenarios.
pub fn run_pairwise(config: &ExperimentConfig) -> Result<ExperimentTable> {
    if !config.scenario.is_pairwise() {
        return Err(Error::invalid(format!("{:?} is not a pairwise scenario", config.scenario)));
    }
    run_campaign(config)
}

/// Several fGn-driven streams; the max-H stream keeps `base_cv`.
pub fn run_multi_stream(config: &ExperimentConfig) -> Result<ExperimentTable> {
    if config.scenario != Scenario::MultiStream {
        return Err(Error::invalid(format!("{:?} is not MULTI_STREAM", config.scenario)));
    }
    run_campaign(config)
}

pub fn run(config: &ExperimentConfig) -> Result<ExperimentTable> {
    match config.scenario {
        Scenario::MultiStream => run_multi_stream(config),
        _ => run_pairwise(config),
    }
}

fn run_campaign(config: &ExperimentConfig) -> Result<ExperimentTable> {
    config.validate()?;
    let mut grid = config.ratio_grid.clone();
    grid.sort_by(|a, b| b.total_cmp(a));
    let rows = grid.iter().map(|&ratio| run_row(config, ratio)).collect();
    Ok(ExperimentTable { config: config.clone(), rows })
}

/// One replication of one cell: synthesize, calibrate, sum, estimate.
pub fn replicate(config: &ExperimentConfig, ratio: f64, replication: usize) -> Result<MuxReport> {
    let kinds = config.forming_kinds();
    let top = config.max_hurst_index();
    let (cv_top, cv_other) = realize_ratio(config.base_cv, ratio);
    let traces = kinds
        .iter()
        .enumerate()
        .map(|(i, kind)| {
            let seed = derive_seed(config.base_seed, replication, i);
            let forming = kind.generate(config.length, seed)?;
            let cv = if i == top { cv_top } else { cv_other };
            transform(&forming, &calibrate(STREAM_MEAN, cv)?)
        })
        .collect::<Result<Vec<TrafficTrace>>>()?;
    let estimator = Estimator::new(config.estimator);
    mux_report(&traces, &HurstSource::Known(config.h_values.clone()), &estimator)
}

fn run_row(config: &ExperimentConfig, ratio: f64) -> ExperimentRow {
    // collect() keeps replication order, so parallel and serial runs aggregate identically
    let outcomes: Vec<Result<MuxReport>> =
        (0..config.replications).into_par_iter().map(|r| replicate(config, ratio, r)).collect();

    let streams = config.h_values.len();
    let reports: Vec<&MuxReport> = outcomes.iter().filter_map(|o| o.as_ref().ok()).collect();
    let failed = outcomes.len() - reports.len();
    let n = reports.len() as f64;

    let mean_over = |f: &dyn Fn(&MuxReport) -> f64| {
        if reports.is_empty() {
            f64::NAN
        } else {
            reports.iter().map(|r| f(r)).sum::<f64>() / n
        }
    };
    let mean_h = (0..streams).map(|i| mean_over(&|r| r.component_hursts[i].hurst)).collect();
    let mean_cv = (0..streams).map(|i| mean_over(&|r| r.component_cvs[i])).collect();
    let mean_h_total = mean_over(&|r| r.total_hurst.hurst);
    let sd_h_total = if reports.len() > 1 {
        let ss: f64 = reports.iter().map(|r| (r.total_hurst.hurst - mean_h_total).powi(2)).sum();
        (ss / (n - 1.0)).sqrt()
    } else if reports.len() == 1 {
        0.0
    } else {
        f64::NAN
    };

    ExperimentRow {
        ratio,
        mean_h,
        mean_h_total,
        sd_h_total,
        reps: reports.len(),
        failed,
        flagged: failed as f64 > MAX_FAILURE_FRACTION * config.replications as f64,
        mean_achieved_ratio: mean_over(&|r| r.ratio),
        mean_cv,
        mean_total_cv: mean_over(&|r| r.total_cv),
    }
}
