//! Exact arithmetic in catalog number fields.

mod arith;
pub mod catalog;
pub mod factor;
mod field;
pub mod linalg;
pub mod padic;
pub mod poly;
mod power;
pub mod quadratic;

pub use arith::{q, qf, tower_mul, Arith, ModRing, Rationals, Ring, Q};
pub use catalog::{FieldCatalog, FieldSpec};
pub use field::{eval_poly, field_arith, minimal_polynomial, trace, Field, FieldElement, FieldOp, PowerTestKind};
pub use power::{divisors, is_root_of_unity, power_test, rational_root, SEARCH_BOUND};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },
    #[error("zero input")]
    ZeroInput,
    #[error("exponent must be positive")]
    BadExponent,
    #[error("expected {expected} coordinates, got {got}")]
    BadLength { expected: usize, got: usize },
    #[error("element does not lie in {field}")]
    NotInSubfield { field: String },
    #[error("inconclusive power test in {field}: {detail}")]
    HeuristicInconclusive { field: String, detail: String },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("catalog parse error: {0}")]
    Parse(String),
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("duplicate label {0}")]
    DuplicateLabel(String),
    #[error("{label}: {reason}")]
    Invalid { label: String, reason: String },
}

impl CatalogError {
    pub fn invalid(label: &str, reason: impl Into<String>) -> Self {
        CatalogError::Invalid { label: label.to_string(), reason: reason.into() }
    }
}
