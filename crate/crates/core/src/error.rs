use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid shape: {0}")]
    InvalidShape(&'static str),
    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is not Hermitian (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("degenerate state: trace {trace:e}")]
    DegenerateState { trace: f64 },
    #[error("parameter `{name}` = {value} out of range: {reason}")]
    Parameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("thermal tail {tail:e} above n_max = {n_max} exceeds tolerance {tolerance:e}")]
    TruncationTail {
        n_max: usize,
        tail: f64,
        tolerance: f64,
    },
    #[error("projection onto |{n}>, |{n}+1> needs n_max > {n}+1, have {n_max}")]
    ProjectionOutOfRange { n: usize, n_max: usize },
    #[error(
        "quadrature unstable: entry ({row}, {col}) moved by {change:e} between orders {order} and {doubled}"
    )]
    OracleUnstable {
        row: usize,
        col: usize,
        change: f64,
        order: usize,
        doubled: usize,
    },
}

impl Error {
    pub(crate) fn parameter(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::Parameter {
            name,
            value,
            reason,
        }
    }
}
