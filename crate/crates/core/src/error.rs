use thiserror::Error;

use crate::surface_kernels::{KernelMove, Violation};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(i64),

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Produced by [`crate::riemann_hurwitz::kernel_genus`] when the covering
    /// surface falls below genus 3.
    #[error("covering genus {0} is below 3")]
    GenusBelowThree(i64),

    #[error("not a surface kernel: {0}")]
    Violation(Violation),

    #[error("move {mv} is not valid here: {reason}")]
    InvalidMove { mv: KernelMove, reason: String },

    #[error("state budget of {budget} exceeded")]
    BudgetExceeded { budget: usize },

    #[error("tuple is not normalized: first entry must be 1")]
    Unnormalized,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("cache i/o: {0}")]
    Cache(String),
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::Violation(v)
    }
}
