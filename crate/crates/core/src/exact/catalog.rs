//! Field catalog loading and load-time certificates.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::arith::Q;
use super::field::Field;
use super::padic::{alpha_roots_first_prime, unramified};
use super::poly::{primes_up_to, subset_sums, PolyP};
use super::power::divisors;
use super::CatalogError;
use crate::rational::{list_from, RatValue};

pub const RATIONALS: &str = "Q";

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub label: String,
    pub base_label: Option<String>,
    pub defining_polynomial: Vec<i64>,
    pub automorphisms: Vec<Vec<RatValue>>,
    pub torsion_order: u64,
}

#[derive(Clone, Debug, Default)]
pub struct FieldCatalog {
    fields: BTreeMap<String, Arc<Field>>,
}

pub const BUILTIN_FIELDS: &str = include_str!("../../data/fields.json");

impl FieldCatalog {
    /// The shipped field catalog.
    pub fn builtin() -> Self {
        Self::from_json(BUILTIN_FIELDS).expect("shipped field catalog is valid")
    }

    pub fn from_json(text: &str) -> Result<Self, CatalogError> {
        let specs: Vec<FieldSpec> = serde_json::from_str(text).map_err(|e| CatalogError::Parse(e.to_string()))?;
        Self::from_specs(&specs)
    }

    pub fn from_specs(specs: &[FieldSpec]) -> Result<Self, CatalogError> {
        let mut fields: BTreeMap<String, Arc<Field>> = BTreeMap::new();
        let rat_label = specs
            .iter()
            .find(|s| s.base_label.is_none() && s.defining_polynomial.len() == 2)
            .map_or(RATIONALS.to_string(), |s| s.label.clone());
        let rationals = Arc::new(Field::rationals(&rat_label));
        fields.insert(rat_label.clone(), rationals.clone());
        let mut pending: Vec<&FieldSpec> = specs.iter().filter(|s| s.label != rat_label).collect();
        let mut seen = std::collections::BTreeSet::new();
        for s in specs {
            if !seen.insert(&s.label) {
                return Err(CatalogError::DuplicateLabel(s.label.clone()));
            }
        }
        while !pending.is_empty() {
            let before = pending.len();
            let mut rest = Vec::new();
            for spec in pending {
                let base = match &spec.base_label {
                    None => Some(rationals.clone()),
                    Some(b) => fields.get(b).cloned(),
                };
                match base {
                    Some(base) => {
                        let f = build_field(spec, base)?;
                        fields.insert(spec.label.clone(), Arc::new(f));
                    }
                    None => rest.push(spec),
                }
            }
            if rest.len() == before {
                let missing = rest[0].base_label.clone().unwrap_or_default();
                return Err(CatalogError::UnknownLabel(missing));
            }
            pending = rest;
        }
        Ok(FieldCatalog { fields })
    }

    pub fn get(&self, label: &str) -> Result<Arc<Field>, CatalogError> {
        self.fields.get(label).cloned().ok_or_else(|| CatalogError::UnknownLabel(label.to_string()))
    }

    pub fn labels(&self) -> impl Iterator<Item = &String> {
        self.fields.keys()
    }

    pub fn fields(&self) -> impl Iterator<Item = &Arc<Field>> {
        self.fields.values()
    }
}

fn build_field(spec: &FieldSpec, base: Arc<Field>) -> Result<Field, CatalogError> {
    let label = &spec.label;
    let poly = spec.defining_polynomial.clone();
    if poly.len() < 2 || *poly.last().unwrap() != 1 {
        return Err(CatalogError::invalid(label, "defining polynomial must be monic of positive degree"));
    }
    if spec.torsion_order == 0 || spec.torsion_order % 2 == 1 {
        return Err(CatalogError::invalid(label, "torsion order must be even"));
    }
    let degree = base.degree() * (poly.len() - 1);
    let mut autos = Vec::new();
    for a in &spec.automorphisms {
        let v = list_from(a).map_err(|e| CatalogError::invalid(label, e))?;
        if v.len() != degree {
            return Err(CatalogError::invalid(label, "automorphism image has wrong length"));
        }
        autos.push(v);
    }
    let mut f = Field::extension(label, base, poly, autos, spec.torsion_order);
    check_irreducible(&f)?;
    check_automorphisms(&f)?;
    f.root_of_unity = find_primitive_root(&f)?;
    check_torsion_maximal(&f)?;
    Ok(f)
}

/// Certify irreducibility over the base from factorization patterns modulo
/// primes with a degree-one prime in the base.
pub(crate) fn check_irreducible(f: &Field) -> Result<(), CatalogError> {
    let d = f.rel_degree();
    if d == 1 {
        return Ok(());
    }
    let lower = &f.levels[..f.levels.len() - 1];
    let mut possible = vec![true; d + 1];
    for p in primes_up_to(5000) {
        if !unramified(&f.levels, p) {
            continue;
        }
        if lower.iter().any(|l| PolyP::from_ints(l, p).roots().is_empty()) {
            continue;
        }
        let sums = subset_sums(&PolyP::from_ints(&f.poly, p).factor_degrees());
        for (a, b) in possible.iter_mut().zip(sums) {
            *a &= b;
        }
        if possible[1..d].iter().all(|x| !x) {
            return Ok(());
        }
    }
    Err(CatalogError::invalid(&f.label, "could not certify irreducibility of the defining polynomial"))
}

fn check_automorphisms(f: &Field) -> Result<(), CatalogError> {
    let autos = &f.automorphisms;
    if autos.is_empty() || autos.len() > f.rel_degree() {
        return Err(CatalogError::invalid(&f.label, "automorphism count out of range"));
    }
    for (i, img) in autos.iter().enumerate() {
        if f.eval_defining_raw(img).iter().any(|c| !num_traits::Zero::is_zero(c)) {
            return Err(CatalogError::invalid(&f.label, format!("automorphism {i} does not map to a root")));
        }
        if autos[..i].contains(img) {
            return Err(CatalogError::invalid(&f.label, format!("automorphism {i} is repeated")));
        }
    }
    for a in 0..autos.len() {
        for img in autos {
            let comp = f.apply_aut_raw(a, img);
            if !autos.contains(&comp) {
                return Err(CatalogError::invalid(&f.label, "automorphisms not closed under composition"));
            }
        }
    }
    Ok(())
}

fn find_primitive_root(f: &Field) -> Result<Vec<Q>, CatalogError> {
    let w = f.torsion_order;
    let mut minus_one = f.zero_raw();
    minus_one[0] = Q::from_integer((-1).into());
    if w == 2 {
        return Ok(minus_one);
    }
    let one = f.one_raw();
    let search = alpha_roots_first_prime(f, &one, w, 1_000_000);
    let has_order = |x: &Vec<Q>| divisors(w).into_iter().find(|&d| f.pow_raw(x, d) == one) == Some(w);
    search.roots.into_iter().find(has_order).ok_or_else(|| {
        CatalogError::invalid(&f.label, format!("no root of unity of order {w} found"))
    })
}

fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// No root of unity of order w·q lies in the field, for every prime q with
/// φ(wq) dividing the degree. Witness: a degree-one prime p with p ≢ 1 mod wq.
fn check_torsion_maximal(f: &Field) -> Result<(), CatalogError> {
    let w = f.torsion_order;
    let deg = f.degree as u64;
    for q in primes_up_to(deg + 1) {
        let m = w * q;
        if !deg.is_multiple_of(euler_phi(m)) {
            continue;
        }
        let witness = primes_up_to(100_000).into_iter().find(|&p| {
            !m.is_multiple_of(p)
                && p % m != 1
                && unramified(&f.levels, p)
                && f.levels.iter().all(|l| !PolyP::from_ints(l, p).roots().is_empty())
        });
        if witness.is_none() {
            return Err(CatalogError::invalid(
                &f.label,
                format!("could not rule out roots of unity of order {m}"),
            ));
        }
    }
    Ok(())
}
