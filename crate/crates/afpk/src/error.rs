//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Structurally invalid parameter set (e.g. exponent outside (0,1]).
    #[error("parameter error: {0}")]
    Param(String),

    /// A grid is too coarse or inconsistent for the requested operation.
    #[error("grid error: {0}")]
    Grid(String),

    /// An iterative or quadrature scheme failed to reach its tolerance.
    #[error("numerical error: {0}")]
    Numerics(String),

    /// Malformed or contradictory experiment configuration.
    #[error("config error: {0}")]
    Config(String),

    /// Not enough data for a statistical test.
    #[error("insufficient samples: {0}")]
    InsufficientSamples(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Param(msg.into())
    }
}
