use thiserror::Error;

use crate::poly::PolyParseError;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] PolyParseError),

    #[error("polynomial degree {degree} exceeds the configured bound {max}")]
    DegreeOverflow { degree: u32, max: u32 },

    #[error("gauges must share an origin, got {a:?} and {b:?}")]
    OriginMismatch { a: [f64; 2], b: [f64; 2] },

    #[error("invalid physical parameters: {0}")]
    InvalidParams(String),

    #[error("unknown observable `{0}`")]
    UnknownObservable(String),

    #[error("truncation margin {margin} is smaller than the required excursion {required}")]
    Truncation { required: usize, margin: usize },

    #[error("integrand has not decayed at the grid boundary (boundary/peak = {ratio:.3e})")]
    SupportOverflow { ratio: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
