//! Error type shared by every module of the crate.

use std::fmt;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes of the numeric and simulation layers.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument is outside its documented domain (non-finite input,
    /// probability outside [0,1], unsupported ADC resolution, ...).
    Domain(String),
    /// Vector/matrix dimensions do not line up.
    Dimension(String),
    /// A matrix expected to be Hermitian is asymmetric beyond tolerance.
    NonHermitian { asymmetry: f64 },
    /// A factorization or solve failed even after jitter regularization.
    Singular(String),
    /// An iterative solver did not reach its tolerance.
    NonConvergence(String),
    /// Zero-forcing precoding failed (rank-deficient quantized channel).
    PrecodingFailure(String),
    /// Unknown experiment preset name.
    UnknownPreset(String),
    /// Experiment config file could not be parsed.
    Config { line: usize, message: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Dimension(msg) => write!(f, "dimension mismatch: {msg}"),
            Error::NonHermitian { asymmetry } => {
                write!(f, "matrix is not Hermitian (asymmetry {asymmetry:.3e})")
            }
            Error::Singular(msg) => write!(f, "singular system: {msg}"),
            Error::NonConvergence(msg) => write!(f, "iteration did not converge: {msg}"),
            Error::PrecodingFailure(msg) => write!(f, "precoding failure: {msg}"),
            Error::UnknownPreset(name) => write!(f, "unknown preset `{name}`"),
            Error::Config { line, message } => write!(f, "config error at line {line}: {message}"),
        }
    }
}

impl std::error::Error for Error {}
