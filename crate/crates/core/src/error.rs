use thiserror::Error;

/// Errors raised by the class constructors and transfer formulas.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("torus rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("incompatible torus actions")]
    ActionMismatch,

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("inexact division by {divisor}: coefficient {coefficient} at {position}")]
    InexactDivision {
        divisor: String,
        coefficient: String,
        position: String,
    },

    #[error("fractional t-exponent {exponent} in term {term}")]
    FractionalExponent { exponent: String, term: String },

    #[error("class is not invertible: constant coefficient vanishes")]
    NotInvertible,

    #[error("pole at y = {0}")]
    Pole(String),

    #[error("coefficient depends on y: {0}")]
    YDependent(String),

    #[error("zero class has no codimension")]
    ZeroClass,

    #[error("bundle is not a sum of line bundles: {0}")]
    NonSplitBundle(String),

    #[error("empty input: {0}")]
    Empty(String),

    #[error("generator count {count} exceeds cap {cap}")]
    GeneratorCap { count: usize, cap: usize },

    #[error("invalid torus action: {0}")]
    InvalidAction(String),

    #[error("class without the scalar factor must not involve t: {0}")]
    UnexpectedT(String),

    #[error("action has no scalar embedding")]
    MissingScalarEmbedding,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown descriptor: {0}")]
    UnknownDescriptor(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
