//! Finite groups: multiplication tables, abelian groups with pairings,
//! balanced semidirect products, recognizers and embedding search.

mod abelian;
mod balanced;
mod hom;
mod icosahedral;
mod recognize;
pub mod smith;
mod table;

pub use abelian::{
    complement_of_cyclic, coord_cmp, decompose, gamma_subgroup, AbelianPairedGroup, Decomposition, GammaSubgroup,
};
pub use balanced::{
    actions, balanced_build, balanced_exists, balanced_multipliers, pow_mod, prime_factors, sdp_table, BalancedSdpDescriptor, Sdp,
    TheoremShape,
};
pub use hom::{
    embeds_theorem_shape, find_homomorphism, find_isomorphism, verify_homomorphism, GroupLike, ShapeEmbedding,
    MAX_EMBED_ORDER,
};
pub use icosahedral::{binary_icosahedral, icosians, quaternion_element};
pub use recognize::{has_normal_cyclic, is_simple, recognize, StructureTag};
pub use table::{FiniteGroupTable, TableJson, ASSOC_SAMPLES, ASSOC_SEED, EXHAUSTIVE_ASSOC_ORDER};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("malformed group table: {0}")]
    BadTable(String),
    #[error("table is not a Latin square")]
    NotLatinSquare,
    #[error("table has no identity element")]
    NoIdentity,
    #[error("table is not associative at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("subset is not a subgroup")]
    NotSubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("no balanced semidirect product for n = {n}, p = {p}")]
    NoBalancedProduct { n: u64, p: u64 },
    #[error("element does not have maximal order")]
    NotMaximalOrder,
    #[error("invalid pairing: {0}")]
    InvalidPairing(String),
    #[error("no embedding found for n up to {bound}")]
    SearchBoundExceeded { bound: u64 },
    #[error("group of order {order} exceeds the supported maximum {max}")]
    TooLarge { order: usize, max: usize },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}
