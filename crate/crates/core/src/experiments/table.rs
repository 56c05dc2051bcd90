use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::experiments::config::ExperimentConfig;
use crate::experiments::format::format_significant;

/// Digits written per CSV table cell.
pub const TABLE_DIGITS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

/// Aggregate of all replications for one ratio.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub ratio: f64,
    /// Mean component estimate, one per stream.
    #[serde(with = "nan_as_null::vec")]
    pub mean_h: Vec<f64>,
    #[serde(with = "nan_as_null")]
    pub mean_h_total: f64,
    #[serde(with = "nan_as_null")]
    pub sd_h_total: f64,
    /// Successful replications.
    pub reps: usize,
    pub failed: usize,
    pub flagged: bool,
    /// Mean sample R1 (two streams) or R2.
    #[serde(with = "nan_as_null")]
    pub mean_achieved_ratio: f64,
    #[serde(with = "nan_as_null::vec")]
    pub mean_cv: Vec<f64>,
    #[serde(with = "nan_as_null")]
    pub mean_total_cv: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentTable {
    pub config: ExperimentConfig,
    /// Sorted by descending ratio.
    pub rows: Vec<ExperimentRow>,
}

impl ExperimentTable {
    pub fn export(&self, format: TableFormat) -> Result<Vec<u8>> {
        match format {
            TableFormat::Csv => Ok(self.to_csv().into_bytes()),
            TableFormat::Json => self.to_json(),
        }
    }

    /// `ratio,mean_h_1,...,mean_h_n,mean_h_total,sd_h_total,reps`
    pub fn to_csv(&self) -> String {
        let streams = self.config.h_values.len();
        let mut out = String::from("ratio");
        for i in 1..=streams {
            let _ = write!(out, ",mean_h_{i}");
        }
        out.push_str(",mean_h_total,sd_h_total,reps\n");
        for row in &self.rows {
            out.push_str(&format_significant(row.ratio, TABLE_DIGITS));
            for h in &row.mean_h {
                out.push(',');
                out.push_str(&format_significant(*h, TABLE_DIGITS));
            }
            let _ = writeln!(
                out,
                ",{},{},{}",
                format_significant(row.mean_h_total, TABLE_DIGITS),
                format_significant(row.sd_h_total, TABLE_DIGITS),
                row.reps
            );
        }
        out
    }

    pub fn to_json(&self) -> Result<Vec<u8>> {
        let mut bytes = serde_json::to_vec_pretty(self)?;
        bytes.push(b'\n');
        Ok(bytes)
    }

    pub fn from_json(bytes: &[u8]) -> Result<Self> {
        let table: Self = serde_json::from_slice(bytes)?;
        table.config.validate()?;
        Ok(table)
    }
}

/// JSON has no NaN; rows without successful replications store `null`.
mod nan_as_null {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[f64], s: S) -> Result<S::Ok, S::Error> {
            v.iter().map(|x| x.is_finite().then_some(*x)).collect::<Vec<_>>().serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
            Ok(Vec::<Option<f64>>::deserialize(d)?.into_iter().map(|x| x.unwrap_or(f64::NAN)).collect())
        }
    }
}
