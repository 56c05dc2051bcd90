//! Monte Carlo campaigns over grids of variation-coefficient ratios, and the
//! CSV/JSON formats their inputs and outputs travel in.

pub mod config;
mod format;
pub mod run;
pub mod table;
pub mod trace_csv;

pub use config::{ExperimentConfig, Scenario, PAPER_RATIO_GRID};
pub use format::format_significant;
pub use run::{derive_seed, realize_ratio, replicate, run, run_multi_stream, run_pairwise};
pub use table::{ExperimentRow, ExperimentTable, TableFormat};
pub use trace_csv::{export_trace, import_trace};
