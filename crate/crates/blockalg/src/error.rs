//! Error types shared across the crate.

use thiserror::Error;

/// Errors from exact scalar arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithmeticError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero raised to a negative power")]
    ZeroToNegativePower,
}

/// Usage errors raised by algebra and module operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("sector mismatch: {0}")]
    SectorMismatch(String),
    #[error("invalid basis key: {0}")]
    InvalidKey(String),
    #[error("structure parameter q must be nonzero")]
    ZeroQ,
    #[error("module parameter lambda must be nonzero")]
    ZeroLambda,
    #[error("scalar parameter {0} must be nonzero")]
    ZeroParameter(&'static str),
    #[error("key {0} has nonzero grade; rescaled generators require grade 0")]
    GradeNotZero(String),
    #[error("target of an odd-generation witness must be an even key, got {0}")]
    OddTarget(String),
    #[error("sigma^2 = {sigma_squared} does not equal lambda = {lambda}")]
    BadSquareRoot { sigma_squared: String, lambda: String },
    #[error("closure seeds must be nonempty and nonzero")]
    EmptySeeds,
    #[error("seed {index} exceeds the window degree bound {max_degree}")]
    SeedOutOfWindow { index: usize, max_degree: usize },
    #[error("malformed action: {0}")]
    MalformedAction(String),
    #[error("arithmetic error: {0}")]
    Arithmetic(#[from] ArithmeticError),
}

/// Parse failures carry the byte offset of the offending token.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("parse error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("semantic error at byte {offset}: {message}")]
    Semantic { offset: usize, message: String },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. } | ParseError::Semantic { offset, .. } => *offset,
        }
    }
}
