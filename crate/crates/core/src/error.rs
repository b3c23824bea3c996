use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unsupported radicand: {0}")]
    UnsupportedRadicand(String),
    #[error("unsupported exponent {0}: the radical must be raised to -1/2, -1/3 or -2/3")]
    UnsupportedExponent(String),
    #[error("radicand is not squarefree")]
    NotSquarefree,
    #[error("degenerate pairing: points must be distinct")]
    DegeneratePairing,
    #[error("degenerate Moebius map")]
    DegenerateMap,
    #[error("integrand is not anti-invariant under the involution")]
    NotAntiInvariant,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("integrand has no radical factor")]
    NotARadicalIntegrand,
    #[error("integrand has more than one distinct radical factor")]
    Ambiguous,
    #[error("unsupported integrand: {0}")]
    UnsupportedIntegrand(String),
    #[error("unsupported expression: {0}")]
    UnsupportedExpression(String),
}

impl Error {
    pub(crate) fn invariant(msg: &str) -> Error {
        Error::InvariantViolation(String::from(msg))
    }

    pub(crate) fn unsupported(msg: &str) -> Error {
        Error::Unsupported(String::from(msg))
    }
}
