use thiserror::Error;

/// Errors raised by the library.
///
/// The variants map onto the CLI exit codes: input-domain problems exit
/// with 2, parse problems with 3.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid transform: {0}")]
    InvalidTransform(String),

    #[error("empty support")]
    EmptySupport,

    #[error("degenerate polytope: {0}")]
    DegeneratePolytope(String),

    #[error("invalid Ore-Sato data: {0}")]
    InvalidOreSato(String),

    #[error("pole: {0}")]
    Pole(String),

    #[error("root finding failed: {0}")]
    RootFinding(String),

    #[error("point too close to the amoeba: {0}")]
    NeedsDeeperPoint(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Whether this is a malformed-input error as opposed to a
    /// well-formed input outside the mathematical domain.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::InvalidOreSato(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
