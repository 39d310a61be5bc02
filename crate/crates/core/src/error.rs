use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Arithmetic outside the domain of an operation (inverting zero, non-prime modulus, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Operands that do not belong together (different rings, wrong arity).
    #[error("structural error: {0}")]
    Structural(String),

    /// A configured resource cap was hit. Never accompanied by a partial answer.
    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("exponent overflow: {0}")]
    Overflow(String),

    /// A closure formula was requested outside the hypotheses that justify it.
    #[error("formula not applicable: {0}")]
    FormulaNotApplicable(String),

    #[error("unsupported scenario: {0}")]
    UnsupportedScenario(String),

    /// No closure route or covering theorem exists for the scenario.
    #[error("no route: {0}")]
    NoRoute(String),

    /// The quotient is not finite dimensional.
    #[error("non-Artinian quotient: no pure power of {variable} in the initial ideal")]
    NonArtinian { variable: String },

    #[error("fit error: {0}")]
    Fit(String),

    /// A computed object disagreed with the value it was checked against.
    #[error("verification failure: {0}")]
    Verification(String),

    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("usage error: {0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
