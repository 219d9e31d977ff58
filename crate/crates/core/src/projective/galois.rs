use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use super::ProjectiveError;
use crate::exact::linalg::Span;
use crate::exact::{power_test, trace, Field, FieldElement};

#[derive(Clone, Debug, Serialize)]
pub struct GaloisReport {
    pub field: String,
    pub base: String,
    /// |𝒜|
    pub order_a: usize,
    /// |ℬ|, the elements admitting a finite-order lift.
    pub order_b: usize,
    /// [L : k]
    pub ext_degree: usize,
    /// [K : k] for K generated by lifts of ℬ.
    pub subfield_degree: usize,
    /// |𝒜/ℬ| divides [L : K].
    pub divides: bool,
    /// When ℬ is trivial: every non-identity element has trace 0 over k.
    pub traces_vanish: Option<bool>,
}

fn normalize(x: &FieldElement, k: &Field) -> FieldElement {
    let blocks = x.blocks(k);
    let first = blocks.iter().find(|b| b.iter().any(|c| !c.is_zero())).expect("nonzero");
    let kf = x.field().base().expect("extension").clone();
    let c = FieldElement::new(kf, first.clone()).expect("k block").inv().expect("nonzero");
    x.mul(&FieldElement::embed(&c, x.field()).expect("subfield"))
}

/// The subgroup 𝒜 of L*/k* generated by `gens`, its finite-lift subgroup ℬ,
/// the field K generated by lifts of ℬ, and the divisibility |𝒜/ℬ| | [L : K].
pub fn verify_galois(l: &Arc<Field>, gens: &[FieldElement], bound: usize) -> Result<GaloisReport, ProjectiveError> {
    let k = l.base().ok_or_else(|| ProjectiveError::BadInput(format!("{} has no base field", l.label())))?.clone();
    for g in gens {
        if g.field().label() != l.label() {
            return Err(ProjectiveError::BadInput(format!("generator lies in {}", g.field().label())));
        }
        if g.is_zero() {
            return Err(ProjectiveError::NotAUnit);
        }
    }
    let gens: Vec<FieldElement> = gens.iter().map(|g| normalize(g, &k)).collect();
    let one = FieldElement::one(l);
    let mut elems = vec![one.clone()];
    let mut index: HashMap<Vec<crate::exact::Q>, usize> = HashMap::from([(one.coords().to_vec(), 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in &gens {
            let y = normalize(&elems[i].mul(g), &k);
            if !index.contains_key(y.coords()) {
                if elems.len() >= bound {
                    return Err(ProjectiveError::BoundExceeded { bound });
                }
                index.insert(y.coords().to_vec(), elems.len());
                queue.push_back(elems.len());
                elems.push(y);
            }
        }
    }
    let mut lifts = Vec::new();
    for x in &elems {
        let mut p = x.clone();
        let mut alpha = 1u64;
        let a = loop {
            if let Ok(a) = p.restrict(&k) {
                break a;
            }
            if alpha as usize >= bound {
                return Err(ProjectiveError::BoundExceeded { bound });
            }
            p = p.mul(x);
            alpha += 1;
        };
        if let Some(c) = power_test(&a, alpha)? {
            lifts.push(x.mul(&FieldElement::embed(&c.inv()?, l)?));
        }
    }
    let order_b = lifts.len();
    let mut span = Span::new();
    let mut basis = vec![one.clone()];
    span.insert(&*k, &one.blocks(&k));
    let mut next = 0;
    while next < basis.len() {
        let b = basis[next].clone();
        next += 1;
        for g in &lifts {
            let p = b.mul(g);
            if span.insert(&*k, &p.blocks(&k)) {
                basis.push(p);
            }
        }
    }
    let ext_degree = l.rel_degree();
    let subfield_degree = basis.len();
    let quotient = elems.len() / order_b;
    let divides = ext_degree.is_multiple_of(subfield_degree) && (ext_degree / subfield_degree).is_multiple_of(quotient);
    let traces_vanish = if order_b == 1 {
        let mut all = true;
        for x in &elems[1..] {
            all &= trace(x, &k)?.is_zero();
        }
        Some(all)
    } else {
        None
    };
    Ok(GaloisReport {
        field: l.label().to_string(),
        base: k.label().to_string(),
        order_a: elems.len(),
        order_b,
        ext_degree,
        subfield_degree,
        divides,
        traces_vanish,
    })
}
