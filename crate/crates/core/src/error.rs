use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("p must be an odd prime, got {0}")]
    NotOddPrime(u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("division by zero: {0}")]
    DivisionByZero(&'static str),

    #[error("quadrature did not converge: error estimate {err_estimate:e} above tolerance {tolerance:e}")]
    QuadratureNonConvergence { err_estimate: f64, tolerance: f64 },

    #[error("root finder failed: {0}")]
    RootFinding(String),

    #[error(
        "enumeration of 4^{j} tuples exceeds the cap J = {cap}; use Monte-Carlo sampling instead"
    )]
    EnumerationCapExceeded { j: usize, cap: usize },

    #[error("least-squares fit is rank deficient: {0}")]
    RankDeficient(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for failures of a numerical method (as opposed to bad input).
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::Overflow(_)
                | Error::DivisionByZero(_)
                | Error::QuadratureNonConvergence { .. }
                | Error::RootFinding(_)
        )
    }
}
