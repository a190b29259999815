//! Crate-wide error type.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two objects that must share a dimension do not.
    DimensionMismatch { expected: usize, found: usize },
    /// The zero ideal was passed to an operation that needs generators.
    ZeroIdeal,
    /// No pure power of the named variable occurs among the generators,
    /// so the ideal is not primary to the maximal ideal.
    NotMPrimary { var: usize },
    /// A stated hypothesis of the requested operation does not hold.
    Hypothesis(String),
    /// The truncation order of an Artinian quotient is too small for the
    /// requested certificate to be sound.
    TruncationTooSmall { required: usize, actual: usize },
    /// The hypersurface relation is zero or has a non-zero constant term.
    UnitRelation,
    /// A summand of a reduction equation is malformed: an element is zero,
    /// has a constant term, or its products escape the target ideal.
    InvalidSummand(String),
    /// A theorem gate refused the search; carries the failed condition.
    GateRefused(String),
    /// Malformed input data (files, tables, command-line values).
    Input(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::ZeroIdeal => write!(f, "operation undefined for the zero ideal"),
            Error::NotMPrimary { var } => {
                write!(f, "not m-primary: no pure power of variable #{var} among the generators")
            }
            Error::Hypothesis(msg) => write!(f, "hypothesis not satisfied: {msg}"),
            Error::TruncationTooSmall { required, actual } => {
                write!(f, "truncation order {actual} too small, need at least {required}")
            }
            Error::UnitRelation => {
                write!(f, "hypersurface relation must be non-zero with zero constant term")
            }
            Error::InvalidSummand(msg) => write!(f, "invalid summand: {msg}"),
            Error::GateRefused(msg) => write!(f, "gate refused: {msg}"),
            Error::Input(msg) => write!(f, "invalid input: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
