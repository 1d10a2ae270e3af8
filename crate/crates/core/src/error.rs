use thiserror::Error;

use crate::clifford::Signature;

/// Errors raised by the algebraic layer.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("signature mismatch: {0} vs {1}")]
    SignatureMismatch(Signature, Signature),
    #[error("invalid signature ({p},{q}): dimension must lie in 1..={max}")]
    InvalidSignature { p: usize, q: usize, max: usize },
    #[error("variable count mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("axis {axis} out of range for n = {n}")]
    AxisOutOfRange { axis: usize, n: usize },
    #[error("expected a pure grade-1 multivector")]
    NotVector,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("polynomial is not monogenic (D p != 0)")]
    NotMonogenic,
    #[error("polynomial is not harmonic (Laplacian p != 0)")]
    NotHarmonic,
    #[error("I_s requires s > 0, got {0}")]
    InvalidIs(String),
    #[error("atom {0} has no closed action on Gaussian-weighted functions")]
    UnsupportedOnWeighted(String),
    #[error("envelope mismatch: combined exponent {0} (expected -1)")]
    EnvelopeMismatch(String),
    #[error("exponential operand is not certified degree-lowering: {0}")]
    NotNilpotent(String),
    #[error("truncated exponential operand must be divisible by lambda: {0}")]
    NotLambdaDivisible(String),
    #[error("expression needs the formal variable lambda but the coefficient ring has none")]
    LambdaUnavailable,
    #[error("division by zero")]
    DivisionByZero,
    #[error("divisor is not a constant scalar: {0}")]
    NonScalarDivisor(String),
    #[error("malformed rational literal {0:?}")]
    BadRational(String),
    #[error("malformed data: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
