//! Finite subgroups of A*/k*: canonical units, closure, N_G and its finite
//! lift, the commutator pairing and invariant subfields.

mod galois;
mod lift;
mod pairing;
mod spec;
mod subfield;
mod unit;

pub use galois::{verify_galois, GaloisReport};
pub use lift::{compute_ng, finite_order_lift, lift_ng, scalar_power, FiniteLift, LiftDecision, LiftedGroup, NgResult, ScalarPower};
pub use pairing::{beta, gamma_of, paired_group_of, GammaResult, PairedGroup};
pub use spec::{GroupReport, GroupSpec};
pub use subfield::{invariant_subfield, InvariantSubfield, SubfieldCase};
pub use unit::{closure, normalize, project, ProjectiveGroup, ProjectiveUnit, DEFAULT_CLOSURE_BOUND};

use thiserror::Error;

use crate::csa::CsaError;
use crate::exact::{CatalogError, ExactError};
use crate::groups::GroupError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProjectiveError {
    #[error("element is not a unit")]
    NotAUnit,
    #[error("closure exceeded {bound} elements")]
    BoundExceeded { bound: usize },
    #[error("elements do not commute modulo scalars")]
    NotCentral,
    #[error("group is not abelian")]
    NotAbelian,
    #[error("group of order {order} is not a p-group")]
    NotPGroup { order: usize },
    #[error("pairing value is not a root of unity")]
    NonTorsionPairingValue,
    #[error("finite-lift routes disagree on element {element}")]
    RouteDisagreement { element: usize },
    #[error("stability check failed: {0}")]
    StabilityCheckFailed(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("inconclusive power test in {field}: {detail}")]
    Inconclusive { field: String, detail: String },
    #[error("bad input: {0}")]
    BadInput(String),
    #[error(transparent)]
    Exact(ExactError),
    #[error(transparent)]
    Csa(CsaError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

impl From<ExactError> for ProjectiveError {
    fn from(e: ExactError) -> Self {
        match e {
            ExactError::HeuristicInconclusive { field, detail } => ProjectiveError::Inconclusive { field, detail },
            e => ProjectiveError::Exact(e),
        }
    }
}

impl From<CsaError> for ProjectiveError {
    fn from(e: CsaError) -> Self {
        match e {
            CsaError::Exact(e) => e.into(),
            e => ProjectiveError::Csa(e),
        }
    }
}
