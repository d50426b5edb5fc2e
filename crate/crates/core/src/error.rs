use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient dimension must be at least 1")]
    ZeroDimension,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cone is not pointed (it contains a line)")]
    NotPointed,
    #[error("cone is not proper (it must be pointed and solid)")]
    NotProper,
    #[error("operation is undefined for the zero cone")]
    ZeroCone,
    #[error("cone is not permutation invariant")]
    NotPermutationInvariant,
    #[error("(a, b) = ({a}, {b}) makes (a-b)I + bE singular for n = {n}")]
    /// `a` and `b` in their text form.
    InvalidAB { n: usize, a: String, b: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("generator and inequality descriptions disagree")]
    Inconsistent,
    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NonConvergence { sweeps: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
