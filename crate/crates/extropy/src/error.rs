//! Crate-wide error type and result alias.

use std::io;

/// Everything that can go wrong while constructing distributions, evaluating
/// measures, ingesting samples, or running simulations.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A constructor or configuration value violates a documented precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An argument lies outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested (distribution, measure) pair has no known closed form.
    #[error("no closed form for {measure} of {dist}")]
    NoClosedForm { dist: String, measure: String },

    /// The request is well-formed but outside what the engine supports.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Adaptive quadrature hit the subdivision limit before converging.
    #[error("quadrature did not converge within depth {max_depth}")]
    QuadratureDepth { max_depth: u32 },

    /// Sample construction rejected the input data.
    #[error("invalid sample: {0}")]
    InvalidSample(String),

    /// Textual input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    /// Process exit code used by the CLI: 1 for I/O and numeric failures,
    /// 2 for parse and validation problems, 3 for unsupported requests.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) | Error::QuadratureDepth { .. } => 1,
            Error::InvalidParameter(_)
            | Error::Domain(_)
            | Error::InvalidSample(_)
            | Error::Parse(_) => 2,
            Error::NoClosedForm { .. } | Error::Unsupported(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
