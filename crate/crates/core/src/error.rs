use thiserror::Error;

/// Errors raised by distribution constructors and the information measures.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum InfoError {
    #[error("probabilities sum to {sum}, more than {tolerance:e} away from 1")]
    NotNormalized { sum: f64, tolerance: f64 },
    #[error("probability at cell {index} is {value}; must be finite and nonnegative")]
    InvalidProbability { index: usize, value: f64 },
    #[error("table has {got} cells but alphabets imply {expected}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("duplicate symbol {0:?} in alphabet")]
    DuplicateSymbol(String),
    #[error("empty alphabet")]
    EmptyAlphabet,
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("alphabets differ: {0}")]
    AlphabetMismatch(String),
    #[error("invalid input: {0}")]
    Input(String),
}

/// Errors from the Gaussian closed forms, kernels and Monte Carlo estimators.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("linear interaction requires 0 < a < b (got a = {a}, b = {b})")]
    NotOrdered { a: f64, b: f64 },
    #[error("correlation must satisfy |rho| < 1 (got {0})")]
    Correlation(f64),
    #[error("matrix is singular (|det| = {0:e})")]
    Singular(f64),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("covariance is not positive definite: {0}")]
    NotPositiveDefinite(String),
    #[error("sample count {got} below minimum {min}")]
    TooFewSamples { got: usize, min: usize },
    #[error("excluded {excluded} of {total} samples with vanishing partial derivatives (limit {limit:e})")]
    TooManyExclusions { excluded: usize, total: usize, limit: f64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
}
