//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Graph parameters violate handshake parity or degree bounds.
    #[error("invalid graph spec: {0}")]
    InvalidSpec(String),

    /// A caller-supplied value is outside an operation's domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An operation that requires a connected graph saw a disconnected one.
    #[error("disconnected graph: {0}")]
    Disconnected(String),

    /// The QL iteration failed to converge within the sweep cap.
    #[error("eigensolver did not converge for eigenvalue index {index} within {sweeps} sweeps")]
    NonConvergence { index: usize, sweeps: usize },

    /// A configured complexity budget was exceeded.
    #[error("resource budget exceeded: {0}")]
    Budget(String),

    /// A numeric self-check failed (e.g. zero-mode overlap).
    #[error("numeric check failed: {0}")]
    Numeric(String),

    /// Nonlinear fit could not be performed or did not converge.
    #[error("fit failed: {0}")]
    Fit(String),

    /// Run configuration file is malformed.
    #[error("invalid config: {0}")]
    Config(String),

    /// Figure emission is missing a prerequisite statistic.
    #[error("missing figure input: {0}")]
    MissingFigureInput(String),

    /// Figure identifier not in the supported set.
    #[error("unknown figure id: {0}")]
    UnknownFigure(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
