use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid weight {0}: {1}")]
    InvalidWeight(i64, &'static str),

    #[error("insufficient precision: need {needed}, have {have}")]
    Precision { needed: usize, have: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid character: {0}")]
    InvalidCharacter(String),

    #[error("valuation of zero")]
    ValuationOfZero,

    #[error("incomplete input: {0}")]
    IncompleteInput(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("normalization conflict: {0}")]
    NormalizationConflict(String),

    #[error("integrality violation at {0}")]
    IntegralityViolation(String),

    #[error("incomparable eigensystems: {0}")]
    Incomparable(String),

    #[error("invalid orbit: {0}")]
    InvalidOrbit(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("invalid Fontaine-Laffaille object: {0}")]
    InvalidObject(String),

    #[error("inadmissible interval: {0}")]
    Inadmissible(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
