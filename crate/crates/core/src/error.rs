use core::fmt;

use alloc::string::String;

/// Errors raised by the arithmetic kernels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The prime is not prime, or is smaller than 5.
    InvalidPrime(u64),
    /// Precision, extension degree or truncation order out of range.
    InvalidContext(String),
    /// Operands live in different p-adic contexts.
    ContextMismatch,
    /// Division by an exact zero, or by a value that is zero at its precision.
    DivisionByZero,
    /// An operation would leave no p-adic digits.
    PrecisionExhausted,
    /// The argument is outside the domain of the operation.
    Domain(String),
    /// A square root does not exist in the coefficient ring.
    NoSquareRoot,
    /// A rational denominator vanished (e.g. `1 - y^n = 0`).
    SingularDenominator,
    /// Constraint on the parameters of an equation or family is violated.
    Parameter(String),
    /// Parse failure for textual inputs.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidPrime(p) => write!(f, "{p} is not a prime >= 5"),
            Error::InvalidContext(msg) => write!(f, "invalid context: {msg}"),
            Error::ContextMismatch => f.write_str("operands belong to different p-adic contexts"),
            Error::DivisionByZero => f.write_str("division by zero"),
            Error::PrecisionExhausted => f.write_str("p-adic precision exhausted"),
            Error::Domain(msg) => write!(f, "argument outside domain: {msg}"),
            Error::NoSquareRoot => f.write_str("square root does not exist in the coefficient ring"),
            Error::SingularDenominator => f.write_str("denominator vanishes"),
            Error::Parameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
