use thiserror::Error;

/// Errors raised by evaluations and verifications.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation (e.g. `x <= 0`).
    #[error("domain error: {0}")]
    Domain(String),

    /// A result would overflow the representable exponent range.
    #[error("range error: {0}")]
    Range(String),

    /// A precision outside the supported range was requested.
    #[error("invalid precision: {bits} bits (supported range is {min}..={max})")]
    InvalidPrecision { bits: u32, min: u32, max: u32 },

    /// The requested accuracy cannot be reached at the working precision.
    #[error("precision error: requested relative width {requested:e}, achievable {achievable:e}")]
    Precision { requested: f64, achievable: f64 },

    /// A documented precondition on an integer parameter was violated.
    #[error("contract error: {0}")]
    Contract(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
