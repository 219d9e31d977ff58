//! Algebra catalog loading with a sampled division sanity check.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{AlgebraElement, CyclicAlgebra, DivisionCertificate};
use crate::exact::{CatalogError, FieldCatalog, FieldElement};
use crate::par::{self, Exec};
use crate::rational::{list_from, RatValue};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisionSpec {
    pub certified: bool,
    pub citation: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub label: String,
    pub base_field: String,
    pub splitting_field: String,
    pub sigma_index: usize,
    pub a: Vec<RatValue>,
    pub degree: usize,
    pub division: DivisionSpec,
}

pub const BUILTIN_ALGEBRAS: &str = include_str!("../../data/algebras.json");

/// Random nonzero elements checked for nonzero reduced norm at load.
pub const SANITY_SAMPLES: usize = 1000;
const SANITY_SEED: u64 = 0x5EED;

#[derive(Clone, Debug, Default)]
pub struct AlgebraCatalog {
    algebras: BTreeMap<String, Arc<CyclicAlgebra>>,
}

impl AlgebraCatalog {
    pub fn builtin(fields: &FieldCatalog) -> Self {
        Self::from_json(BUILTIN_ALGEBRAS, fields).expect("shipped algebra catalog is valid")
    }

    pub fn from_json(text: &str, fields: &FieldCatalog) -> Result<Self, CatalogError> {
        let specs: Vec<AlgebraSpec> = serde_json::from_str(text).map_err(|e| CatalogError::Parse(e.to_string()))?;
        Self::from_specs(&specs, fields, SANITY_SAMPLES)
    }

    pub fn from_specs(specs: &[AlgebraSpec], fields: &FieldCatalog, samples: usize) -> Result<Self, CatalogError> {
        let mut algebras = BTreeMap::new();
        for s in specs {
            let alg = build(s, fields, samples)?;
            if algebras.insert(s.label.clone(), Arc::new(alg)).is_some() {
                return Err(CatalogError::DuplicateLabel(s.label.clone()));
            }
        }
        Ok(AlgebraCatalog { algebras })
    }

    pub fn get(&self, label: &str) -> Result<Arc<CyclicAlgebra>, CatalogError> {
        self.algebras.get(label).cloned().ok_or_else(|| CatalogError::UnknownLabel(label.to_string()))
    }

    pub fn algebras(&self) -> impl Iterator<Item = &Arc<CyclicAlgebra>> {
        self.algebras.values()
    }
}

fn build(s: &AlgebraSpec, fields: &FieldCatalog, samples: usize) -> Result<CyclicAlgebra, CatalogError> {
    let label = &s.label;
    let base = fields.get(&s.base_field)?;
    let splitting = fields.get(&s.splitting_field)?;
    match splitting.base() {
        Some(b) if b.label() == base.label() => {}
        _ => return Err(CatalogError::invalid(label, "splitting field is not an extension of the base field")),
    }
    if splitting.rel_degree() != s.degree {
        return Err(CatalogError::invalid(label, "degree does not match [K : k]"));
    }
    let a = list_from(&s.a).map_err(|e| CatalogError::invalid(label, e))?;
    let a = FieldElement::new(base, a).map_err(|e| CatalogError::invalid(label, e.to_string()))?;
    let cert = if s.division.certified {
        DivisionCertificate::CertifiedExternal(s.division.citation.clone())
    } else {
        DivisionCertificate::Unverified
    };
    let mut alg =
        CyclicAlgebra::new(label, splitting, s.sigma_index, a, cert).map_err(|e| CatalogError::invalid(label, e))?;
    if alg.is_certified() && !division_sanity_check(&alg, samples) {
        alg.set_certificate(DivisionCertificate::Unverified);
    }
    Ok(alg)
}

/// Nrd ≠ 0 on `samples` seeded random nonzero elements.
pub fn division_sanity_check(alg: &CyclicAlgebra, samples: usize) -> bool {
    let alg = Arc::new(alg.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(SANITY_SEED);
    let xs: Vec<AlgebraElement> = (0..samples).map(|_| AlgebraElement::random(&alg, &mut rng)).collect();
    par::map(Exec::default(), &xs, |x| x.reduced_norm().map(|v| !v.is_zero()).unwrap_or(false))
        .into_iter()
        .all(|ok| ok)
}
