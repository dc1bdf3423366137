use thiserror::Error;

/// Errors raised by the exact field arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not real")]
    NotReal,
    #[error("invalid level {0}: levels must be positive and even")]
    InvalidLevel(u32),
    #[error("exponent {0} is not a unit modulo {1}")]
    NotAUnit(u32, u32),
    #[error("malformed element: {0}")]
    Malformed(String),
}

/// Errors raised while building or testing triangle groups.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangleError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("invalid angle: {0}")]
    InvalidAngle(String),
    #[error("invalid angular invariant: {0}")]
    InvalidPsi(String),
    #[error("invalid reflection order {0}; orders must be at least 2")]
    InvalidOrder(i64),
    #[error("reflection factor exponent {k} is not coprime to order {n}")]
    InvalidFactorExponent { k: i64, n: i64 },
    #[error("the Gram form does not have signature (2,1): no complex hyperbolic triangle")]
    DegenerateTriangle,
    #[error("the angular invariant is irrational; only constraint reporting is available")]
    IrrationalPsi,
    #[error("angles ({0}) do not form a hyperbolic triangle")]
    NotHyperbolic(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = TriangleError> = std::result::Result<T, E>;
