//! Cyclic algebras (K/k, σ, a): elements are n-tuples of K-coordinates, the
//! coefficient of z^i at position i, with z·c = σ(c)·z and z^n = a.

mod algebra;
pub mod catalog;
mod subfield;

pub use algebra::{algebra_mul, AlgebraElement, CyclicAlgebra, DivisionCertificate};
pub use catalog::{AlgebraCatalog, AlgebraSpec, DivisionSpec};
pub use subfield::{generated_subfield, Subfield};

use thiserror::Error;

use crate::exact::ExactError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CsaError {
    #[error("algebra mismatch: {left} vs {right}")]
    AlgebraMismatch { left: String, right: String },
    #[error("reduced norm does not lie in the base field")]
    ResultNotInBaseField,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("generators do not commute")]
    NonCommutative,
    #[error("generated subalgebra has dimension {dim} > degree {n}")]
    DegreeOverflow { dim: usize, n: usize },
    #[error("generated subfield degree {dim} does not divide {n}")]
    DegreeNotDividing { dim: usize, n: usize },
    #[error("expected {expected} coordinates, got {got}")]
    BadLength { expected: usize, got: usize },
    #[error(transparent)]
    Exact(#[from] ExactError),
}
