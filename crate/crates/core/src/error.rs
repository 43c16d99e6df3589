use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, got {actual}")]
    DimensionMismatch { context: &'static str, expected: String, actual: String },

    #[error("matrix is not Hermitian within tolerance ({0})")]
    NotHermitian(&'static str),

    #[error("indefinite denominator: B is not positive definite (smallest eigenvalue {min_eigenvalue:e})")]
    IndefiniteDenominator { min_eigenvalue: f64 },

    #[error("no AN degrees of freedom: constraint rows span all {0} transmit dimensions")]
    NoAnDegreesOfFreedom(usize),

    #[error("AN cannot reach Eve: Eve's channel lies inside the constraint row space")]
    AnCannotReachEve,

    #[error("distance must be positive, got {0} m")]
    NonPositiveDistance(f64),

    #[error("degenerate MRT direction: h_ai + h_ab has zero norm")]
    DegenerateMrt,

    #[error("negative SINR ({0})")]
    NegativeSinr(f64),

    #[error("grid of {points}^{dimensions} points exceeds the 1e8 evaluation guard")]
    GridTooLarge { points: usize, dimensions: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid config: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn dims(context: &'static str, expected: impl ToString, actual: impl ToString) -> Self {
        Error::DimensionMismatch { context, expected: expected.to_string(), actual: actual.to_string() }
    }
}
