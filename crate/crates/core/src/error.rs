use thiserror::Error;

use crate::algebra::TNormKind;

/// Errors raised by the library layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("value {0} lies outside [0, 1]")]
    Domain(f64),

    #[error("dimension mismatch: {what} (expected {expected}, found {found})")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("empty {0} is not allowed")]
    Empty(&'static str),

    #[error("row index {index} out of bounds for {rows} rows")]
    RowIndex { index: usize, rows: usize },

    #[error("no closed-form Chebyshev distance for the {0} t-norm; use the bisection oracle")]
    UnsupportedKind(TNormKind),

    #[error("grid search is limited to n <= {max_rows} and step >= {min_step} (got n = {rows}, step = {step})")]
    InstanceTooLarge {
        rows: usize,
        step: f64,
        max_rows: usize,
        min_step: f64,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("report invariant violated: {0}")]
    ReportInvariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
