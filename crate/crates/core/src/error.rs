use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid coefficient: {0}")]
    InvalidCoefficient(String),
    #[error("no zero-absorption rewrite applies to {0}")]
    NoRewriteApplies(String),
    #[error("lens parameters ({p}, {q}) are not coprime")]
    NotCoprime { p: String, q: String },
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("magic manifold patterns disagree for ({args}): {left} vs {right}")]
    MagicInconsistency { args: String, left: String, right: String },
    #[error("unsupported parameters: {0}")]
    UnsupportedParameters(String),
    #[error("invalid cusp: {0}")]
    InvalidCusp(String),
    #[error("invalid multislope: {0}")]
    InvalidMultislope(String),
    #[error("invalid manifold data: {0}")]
    InvalidData(String),
    #[error("unknown table id `{0}`")]
    UnknownTable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("undefined arithmetic: {0}")]
    Arithmetic(String),
}

pub type Result<T> = std::result::Result<T, Error>;
