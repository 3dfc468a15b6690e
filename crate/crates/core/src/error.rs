use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("non-finite value {0}")]
    NonFinite(f64),
    #[error("cannot parse `{0}`")]
    Parse(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("mismatched algebras: {0}")]
    Mismatch(String),
    #[error("invalid similitude data: {0}")]
    Similitude(String),
    #[error("not positive definite: {0}")]
    NotPositiveDefinite(String),
    #[error("degenerate factor of automorphy")]
    DegenerateAutomorphy,
    #[error("phase undefined: <omega, Z~> vanishes at the evaluation point")]
    PhasePole,
    #[error("bessel argument out of range: {0}")]
    BesselDomain(String),
    #[error("unknown algebra token `{0}`")]
    UnknownAlgebra(String),
    #[error("element not in the span: {0}")]
    NotInSpan(String),
    #[error("unsupported element: {0}")]
    Unsupported(String),
    #[error("inadmissible character: {0}")]
    Inadmissible(String),
}

pub type Result<T> = std::result::Result<T, Error>;
