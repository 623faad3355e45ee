use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("d∘d ≠ 0: {0}")]
    NotAComplex(String),
    #[error("structure check failed: {0}")]
    Structure(String),
    #[error("truncation exhausted: {0}")]
    Truncation(String),
    #[error("identity failed: {0}")]
    Identity(String),
    #[error("obstruction system inconsistent at arity {arity}: {detail}")]
    Obstruction { arity: usize, detail: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
