use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cyclotomic order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("branch {branch} is not coprime to the order {order}")]
    InvalidEmbedding { branch: i64, order: usize },

    #[error("n = {n} and m = {m} are not coprime")]
    NotCoprime { n: usize, m: usize },

    #[error("invariant failure: {0}")]
    InvariantFailure(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("term y^{a} d^{b} cannot be written as y^k p(theta)")]
    NotThetaExpressible { a: u32, b: u32 },

    #[error("y-exponent {exponent} is not divisible by {d}")]
    DivisibilityViolation { exponent: u32, d: u32 },

    #[error("coefficient function has a pole at x = {0}")]
    Pole(String),

    #[error("tolerance not met: {what} (error {error:e} > tolerance {tol:e})")]
    ToleranceNotMet { what: String, error: f64, tol: f64 },

    #[error("out of scope: {0}")]
    OutOfScope(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),
}
