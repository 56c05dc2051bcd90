//! Self-similar traffic toolkit.
//!
//! Forming processes (fractional Gaussian noise, white noise, AR(1)) are pushed
//! through the exponential transform `Y(t) = b * exp(k * X(t))` to obtain
//! lognormal traffic intensities with a chosen mean and coefficient of
//! variation. Streams can be summed, their Hurst exponents estimated, and whole
//! Monte Carlo campaigns run over grids of variation-coefficient ratios.

pub mod error;
pub mod experiments;
pub mod hurst;
pub mod multiplex;
pub mod synthesis;
pub mod traffic;

pub use error::{Error, Result};
pub use hurst::{Estimator, HurstEstimate, Method, ScaleGrid};
pub use multiplex::{HurstSource, MuxReport};
pub use synthesis::{Ar1Params, FgnParams, FormingKind, GaussianSeries};
pub use traffic::{ModelCoefficients, Moments, TraceOrigin, TrafficTrace};
