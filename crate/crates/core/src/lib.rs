//! Exact computations with cyclic division algebras and their finite
//! projective subgroups.

pub mod csa;
pub mod exact;
pub mod groups;
pub mod par;
pub mod projective;
pub mod rational;
pub mod scenarios;
