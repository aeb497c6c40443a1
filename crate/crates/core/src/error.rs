use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("pole of the gamma function at {0}")]
    Pole(f64),

    #[error("gamma ratio undefined: numerator pole at {a} with finite denominator at {b}")]
    UndefinedRatio { a: f64, b: f64 },

    #[error("argument outside domain: {0}")]
    Domain(String),

    #[error("series did not converge after {terms} terms (last partial sum {partial})")]
    NoConvergence { terms: usize, partial: f64 },

    #[error("divergent limit: {0}")]
    Divergence(String),

    #[error("quadrature failed: {reason} (best estimate {estimate}, error estimate {err_est})")]
    Quadrature {
        reason: String,
        estimate: f64,
        err_est: f64,
    },

    #[error("invalid family specification: {0}")]
    InvalidSpec(String),

    #[error("epsilon-algorithm breakdown (unaccelerated value {unaccelerated})")]
    AccelerationBreakdown { unaccelerated: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn spec(msg: impl Into<String>) -> Self {
        Error::InvalidSpec(msg.into())
    }
}
