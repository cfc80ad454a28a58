use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("incompatible rings: {0}")]
    IncompatibleRings(String),
    #[error("not invertible")]
    NotInvertible,
    #[error("not a *-algebra")]
    NotStarAlgebra,
    #[error("Jordan construction requires associative input")]
    JordanRequiresAssociative,
    #[error("not bijective: {0}")]
    NotBijective(String),
    #[error("inner automorphism requires unit")]
    InnerRequiresUnit,
    #[error("does not respect one")]
    DoesNotRespectOne,
    #[error("delta must kill one")]
    DoesNotKillOne,
    #[error("inverse unavailable")]
    InverseUnavailable,
    #[error("cannot decide by basis exhaustion")]
    CannotDecide,
    #[error("order detection unsupported")]
    OrderDetectionUnsupported,
    #[error("zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("order undefined at this precision")]
    OrderUndefined,
    #[error("series is not a unit")]
    NotAUnit,
    #[error("iterated construction requires commuting automorphisms")]
    NonCommutingTwists,
    #[error("finite order hypothesis fails")]
    FiniteOrderHypothesis,
    #[error("proposition hypothesis requires commutative division ring")]
    RequiresCommutativeDivisionRing,
    #[error("left division requires division ring")]
    RequiresDivisionRing,
    #[error("inverse not representable")]
    InverseNotRepresentable,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown suite: {0}")]
    UnknownSuite(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::InvalidConfig(e.to_string())
    }
}
