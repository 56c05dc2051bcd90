use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("circulant embedding failed: eigenvalue {min_eigenvalue:e} is below tolerance")]
    EmbeddingFailure { min_eigenvalue: f64 },

    #[error("exponent out of range: k * max(X) + ln(b) = {exponent} overflows f64")]
    Range { exponent: f64 },

    #[error("Hurst exponent not estimable: {0}")]
    NonEstimable(String),

    #[error("log-log fit needs at least 4 points, got {0}")]
    TooFewPoints(usize),

    #[error("log-log fit requires positive values, got ({scale}, {statistic})")]
    NonPositive { scale: f64, statistic: f64 },

    #[error("stream length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("division by zero coefficient of variation: {0}")]
    ZeroDenominator(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: negative traffic value {value}")]
    Negative { line: usize, value: f64 },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
