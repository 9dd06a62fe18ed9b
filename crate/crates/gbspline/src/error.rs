//! Error type shared by all modules in this crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("knot vector needs at least {required} knots, got {actual}")]
    TooFewKnots { required: usize, actual: usize },

    #[error("knot vector is not nondecreasing at index {index}: {prev} > {next}")]
    NotNondecreasing { index: usize, prev: f64, next: f64 },

    #[error("knot at index {index} is not finite")]
    NonFiniteKnot { index: usize },

    #[error(
        "a degree {degree} basis needs at least {required} knots, got {actual} (n = m - p - 1 >= 1)"
    )]
    DegreeTooLargeForKnots {
        degree: usize,
        required: usize,
        actual: usize,
    },

    #[error("parameter {t} lies outside the domain [{lo}, {hi}]")]
    OutOfDomain { t: f64, lo: f64, hi: f64 },

    #[error("window width {width} exceeds sequence length {len}")]
    WidthTooLarge { width: usize, len: usize },

    #[error("2x2 matrix is singular or ill-conditioned{}", interval_suffix(.interval))]
    SingularOrIllConditioned { interval: Option<usize> },

    #[error("knot functions do not form a Chebyshev space on interval {interval}: {reason}")]
    ChebyshevViolation { interval: usize, reason: String },

    #[error("quadrature failed to reach tolerance {tol:e} (worst panel estimate {estimate:e})")]
    QuadratureFailure { tol: f64, estimate: f64 },

    #[error("local coordinate {s} outside interval [0, {len}]")]
    OutOfInterval { s: f64, len: f64 },

    #[error("basis function index {index} out of range (basis has {count} functions)")]
    IndexOutOfRange { index: usize, count: usize },

    #[error("derivative evaluation needs a basis built with `retain_ladder`")]
    LadderMissing,

    #[error("curve needs {expected} control points (n = m - p - 1), got {actual}")]
    ControlPointCount { expected: usize, actual: usize },

    #[error("control points must all have the same dimension >= 1")]
    ControlPointDimension,

    #[error("invalid basis data: {0}")]
    InvalidBasisData(String),
}

fn interval_suffix(interval: &Option<usize>) -> String {
    match interval {
        Some(j) => format!(" (interval {j})"),
        None => String::new(),
    }
}
