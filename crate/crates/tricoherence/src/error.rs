//! Crate-wide error type.

use thiserror::Error;

/// Shorthand for results carrying [`Error`].
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Every coefficient of a field is zero, so it cannot be normalized.
    #[error("field has zero total intensity")]
    ZeroField,
    /// A projection (or an element transform) left no amplitude behind.
    #[error("projection produced a zero amplitude: {0}")]
    NullProjection(String),
    /// An operand has incompatible dimensions or degree-of-freedom labels.
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    /// A parameter lies outside its admissible range.
    #[error("parameter out of domain: {0}")]
    Domain(String),
    /// A numerical invariant (Hermiticity, positivity, ...) failed beyond tolerance.
    #[error("numerical failure: {0}")]
    Numerical(String),
    /// Malformed textual input (angle literals, CSV rows).
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
