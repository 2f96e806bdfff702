use alloc::string::String;
use core::fmt;

use crate::poly::RationalPoly;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Division (or inversion) by zero, in any of the arithmetic layers.
    DivisionByZero,
    /// An operation that requires a nonzero polynomial received zero.
    ZeroPolynomial,
    /// Elements of two different number fields were mixed.
    ParentMismatch,
    /// An inversion in `Q[X]/(f)` ran into a zero divisor, proving `f`
    /// reducible. Carries the exact nontrivial factor of `f`.
    ReducibleField { factor: RationalPoly },
    /// An interval refinement hit its precision cap before the question
    /// could be decided. Never silently turned into a guess.
    PrecisionExhausted {
        context: &'static str,
        precision_bits: u32,
    },
    /// The iterative complex root solver failed to converge within its
    /// iteration and precision-doubling budget.
    NonConvergence {
        iterations: u32,
        precision_bits: u32,
    },
    /// A group element or map constructor received invalid data.
    InvalidGroupElement(String),
    /// A point fed to an affine map lies outside `H^s × C^t`.
    DomainViolation(String),
    /// A fixed coordinate of a candidate subspace has unit value 1, so
    /// no fixed point exists there.
    NoFixedPoint { coordinate: usize },
    /// Orbit enumeration would exceed the configured word/point caps.
    EnumerationCap { limit: usize },
    /// Violated operation precondition, with a short description.
    Precondition(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::ZeroPolynomial => write!(f, "zero polynomial not allowed here"),
            Error::ParentMismatch => write!(f, "elements belong to different number fields"),
            Error::ReducibleField { factor } => {
                write!(f, "defining polynomial is reducible; factor: {factor}")
            }
            Error::PrecisionExhausted {
                context,
                precision_bits,
            } => write!(
                f,
                "precision cap of {precision_bits} bits exhausted while {context}"
            ),
            Error::NonConvergence {
                iterations,
                precision_bits,
            } => write!(
                f,
                "root solver failed to converge after {iterations} iterations at {precision_bits} bits"
            ),
            Error::InvalidGroupElement(msg) => write!(f, "invalid group element: {msg}"),
            Error::DomainViolation(msg) => write!(f, "point outside the domain: {msg}"),
            Error::NoFixedPoint { coordinate } => {
                write!(f, "no fixed point: unit value is 1 at coordinate {coordinate}")
            }
            Error::EnumerationCap { limit } => {
                write!(f, "enumeration would exceed the cap of {limit} items")
            }
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
