//! Crate-wide error type.

use alloc::string::String;
use core::fmt;

/// Errors shared by all subsystems.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument violated a stated precondition.
    InvalidArgument(String),
    /// A point lies outside the domain an operation is defined on.
    Domain(String),
    /// The operation is restricted to a parameter regime that excludes the
    /// given input (e.g. the two-weight range map requires `k >= -1`).
    UnsupportedCase(String),
    /// A kernel denominator fell below the float-safety floor.
    NearSingular { distance: f64 },
    /// An integral diverges; detected analytically from exponent bookkeeping,
    /// never from numeric overflow.
    DivergentIntegral(String),
    /// A weight factor is not locally integrable on the region in question.
    /// Carries the offending factor and the threshold inequality it violates.
    AnalyticNonIntegrable { factor: String, threshold: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::UnsupportedCase(msg) => write!(f, "unsupported case: {msg}"),
            Error::NearSingular { distance } => {
                write!(f, "near-singular kernel evaluation: |1 - z*conj(zeta)| = {distance:e}")
            }
            Error::DivergentIntegral(msg) => write!(f, "divergent integral: {msg}"),
            Error::AnalyticNonIntegrable { factor, threshold } => {
                write!(f, "non-integrable weight factor {factor}: requires {threshold}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
