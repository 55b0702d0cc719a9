use alloc::string::String;
use core::fmt;

/// Errors raised by the exact algorithms in this crate.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// An operation that needs a degree was handed the zero polynomial.
    ZeroPolynomial,
    /// `lo < hi` was required.
    EmptyInterval,
    /// Root isolation needs distinct roots; `gcd(f, f')` had this degree.
    NotSquareFree { gcd_degree: usize },
    EmptyLabel,
    /// Digits are positive integers.
    ZeroDigit,
    /// A digit did not fit in a `u64`.
    DigitOverflow,
    /// Digit labels address the forward tree only.
    NoBackwardLabels,
    /// Precondition on a parameter or point failed.
    OutOfDomain(&'static str),
    DivisionByZero,
    Parse(String),
    /// The complex solver did not reach the requested radius.
    NonConvergence { iterations: usize, radius: f64 },
    /// The density construction could not bracket its next pole.
    BracketFailure { step: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroPolynomial => write!(f, "zero polynomial has no degree"),
            Error::EmptyInterval => write!(f, "interval must satisfy lo < hi"),
            Error::NotSquareFree { gcd_degree } => {
                write!(f, "polynomial has repeated roots (gcd with derivative has degree {gcd_degree})")
            }
            Error::EmptyLabel => write!(f, "label must contain at least one digit"),
            Error::ZeroDigit => write!(f, "digits must be positive"),
            Error::DigitOverflow => write!(f, "digit does not fit in 64 bits"),
            Error::NoBackwardLabels => {
                write!(f, "digit labels address the forward tree; use a branch word for the backward tree")
            }
            Error::OutOfDomain(what) => write!(f, "out of domain: {what}"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::NonConvergence { iterations, radius } => write!(
                f,
                "complex root solver did not converge after {iterations} iterations (radius {radius:e})"
            ),
            Error::BracketFailure { step } => write!(f, "could not bracket the pole at step {step}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
