use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the channel, link and scenario models.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error in {what}: {detail}")]
    Domain { what: &'static str, detail: String },

    /// Quadrature or series evaluation stopped before meeting its tolerance.
    #[error("{what} did not converge (best estimate {best_estimate:e}, error estimate {error_estimate:e})")]
    Convergence {
        what: &'static str,
        best_estimate: f64,
        error_estimate: f64,
    },

    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    #[error("degenerate parameters: {0}")]
    DegenerateParameter(String),

    /// Requested optical output is at or above the VCSEL saturation power.
    #[error("infeasible optical power {requested_w:e} W (saturation {saturation_w:e} W)")]
    InfeasiblePower { requested_w: f64, saturation_w: f64 },

    #[error(
        "frequency {frequency_hz:e} Hz outside absorption model band [{low_hz:e}, {high_hz:e}] Hz"
    )]
    OutOfBand {
        frequency_hz: f64,
        low_hz: f64,
        high_hz: f64,
    },

    #[error("degenerate link: {0}")]
    DegenerateLink(String),

    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },

    #[error("invalid data file {path}: {message}")]
    DataFile { path: PathBuf, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            what,
            detail: detail.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, err: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            message: err.to_string(),
        }
    }
}
