//! Statistical multiplexing: summing streams and the variation-coefficient
//! diagnostics used to predict the Hurst exponent of the sum.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hurst::{Estimator, HurstEstimate};
use crate::traffic::{TraceOrigin, TrafficTrace};

/// Population standard deviation over the sample mean.
pub fn coefficient_of_variation(trace: &TrafficTrace) -> Result<f64> {
    cv_of(trace.values())
}

pub(crate) fn cv_of(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::invalid("coefficient of variation of an empty trace"));
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if mean.is_nan() || mean <= 0.0 {
        return Err(Error::invalid(format!("coefficient of variation needs a positive mean, got {mean}")));
    }
    if values.windows(2).all(|w| w[0] == w[1]) {
        return Ok(0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    Ok(var.sqrt() / mean)
}

/// Pointwise sum of equally long traces.
///
/// Addends at each slot are summed in ascending order, so the result does not
/// depend on the order of `traces`.
pub fn sum_streams(traces: &[TrafficTrace]) -> Result<TrafficTrace> {
    if traces.len() < 2 {
        return Err(Error::invalid(format!("need at least 2 streams to multiplex, got {}", traces.len())));
    }
    let len = traces[0].len();
    if let Some(t) = traces.iter().find(|t| t.len() != len) {
        return Err(Error::LengthMismatch { expected: len, found: t.len() });
    }
    let mut slot = Vec::with_capacity(traces.len());
    let values = (0..len)
        .map(|i| {
            slot.clear();
            slot.extend(traces.iter().map(|t| t.values()[i]));
            slot.sort_by(f64::total_cmp);
            slot.iter().sum()
        })
        .collect();
    Ok(TrafficTrace::from_parts(values, TraceOrigin::Sum { components: traces.len() }))
}

/// `CV(self_similar) / CV(other)`. By convention the first argument is the
/// stream with the larger Hurst exponent.
pub fn ratio_r1(self_similar: &TrafficTrace, other: &TrafficTrace) -> Result<f64> {
    let numerator = coefficient_of_variation(self_similar)?;
    let denominator = coefficient_of_variation(other)?;
    if denominator == 0.0 {
        return Err(Error::ZeroDenominator("second stream is constant".into()));
    }
    Ok(numerator / denominator)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioR2 {
    pub value: f64,
    /// Index of the stream in the numerator.
    pub max_index: usize,
    /// Set when more than one stream shares the maximum Hurst exponent.
    pub tie: bool,
}

/// CV of the stream with the largest Hurst exponent over the mean CV of the
/// remaining streams. Ties go to the lowest index and set [`RatioR2::tie`].
pub fn ratio_r2(traces: &[TrafficTrace], hursts: &[f64]) -> Result<RatioR2> {
    let cvs = traces.iter().map(coefficient_of_variation).collect::<Result<Vec<_>>>()?;
    ratio_r2_from_cvs(&cvs, hursts)
}

pub(crate) fn ratio_r2_from_cvs(cvs: &[f64], hursts: &[f64]) -> Result<RatioR2> {
    if cvs.len() < 2 {
        return Err(Error::invalid(format!("need at least 2 streams, got {}", cvs.len())));
    }
    if hursts.len() != cvs.len() {
        return Err(Error::LengthMismatch { expected: cvs.len(), found: hursts.len() });
    }
    let (max_index, max_h) =
        hursts
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, h)| if h > best.1 { (i, h) } else { best });
    let tie = hursts.iter().filter(|&&h| h == max_h).count() > 1;
    let rest =
        cvs.iter().enumerate().filter(|&(i, _)| i != max_index).map(|(_, cv)| cv).sum::<f64>() / (cvs.len() - 1) as f64;
    if rest == 0.0 {
        return Err(Error::ZeroDenominator("all non-maximal streams are constant".into()));
    }
    Ok(RatioR2 { value: cvs[max_index] / rest, max_index, tie })
}

/// Where the Hurst exponents that pick the numerator stream come from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum HurstSource {
    /// Model parameters known in advance.
    Known(Vec<f64>),
    /// Use the component estimates.
    Estimated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MuxReport {
    pub component_hursts: Vec<HurstEstimate>,
    pub component_cvs: Vec<f64>,
    /// R1 for two streams, R2 for more.
    pub ratio: f64,
    pub max_index: usize,
    pub tie: bool,
    pub total_hurst: HurstEstimate,
    pub total_cv: f64,
}

pub fn mux_report(traces: &[TrafficTrace], source: &HurstSource, estimator: &Estimator) -> Result<MuxReport> {
    let component_hursts = traces.iter().map(|t| estimator.estimate(t)).collect::<Result<Vec<_>>>()?;
    let component_cvs = traces.iter().map(coefficient_of_variation).collect::<Result<Vec<_>>>()?;
    let selection: Vec<f64> = match source {
        HurstSource::Known(h) => h.clone(),
        HurstSource::Estimated => component_hursts.iter().map(|e| e.hurst).collect(),
    };
    let r2 = ratio_r2_from_cvs(&component_cvs, &selection)?;
    let total = sum_streams(traces)?;
    Ok(MuxReport {
        total_hurst: estimator.estimate(&total)?,
        total_cv: coefficient_of_variation(&total)?,
        component_hursts,
        component_cvs,
        ratio: r2.value,
        max_index: r2.max_index,
        tie: r2.tie,
    })
}
