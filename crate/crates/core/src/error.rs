use thiserror::Error;

/// Errors produced by the bicomplex algebra, the gradient oracle, the
/// filters and the experiment harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value supplied to {0}")]
    NonFinite(&'static str),

    /// The argument sits on (or numerically at) the cone of zero divisors.
    #[error("bicomplex number is a zero divisor (min |λ| = {min_modulus:e}, threshold {threshold:e})")]
    ZeroDivisor { min_modulus: f64, threshold: f64 },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("empty vector: a tap vector needs at least one element")]
    Empty,

    #[error("field evaluation failed: {0}")]
    Evaluation(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
