use serde::Serialize;

use super::lift::{compute_ng, NgResult};
use super::unit::ProjectiveGroup;
use super::ProjectiveError;
use crate::csa::{generated_subfield, AlgebraElement, Subfield};
use crate::groups::{recognize, StructureTag};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubfieldCase {
    /// N_G cyclic (including trivial) or p odd: all lifts of N_G.
    AllLifts,
    /// p = 2, N_G dihedral: lifts of a G-stable cyclic subgroup of index 2.
    StableIndexTwo,
}

#[derive(Clone, Debug)]
pub struct InvariantSubfield {
    pub subfield: Subfield,
    pub prime: Option<u64>,
    pub case: SubfieldCase,
    pub ng: NgResult,
    /// Elements of G whose lifts generate the subfield.
    pub chosen: Vec<usize>,
    /// Elements of N_G acting trivially on the subfield by conjugation.
    pub acting_trivially: Vec<usize>,
    /// Elements of N_G whose lifts lie in the subfield.
    pub lifts_inside: Vec<usize>,
}

fn prime_of_power(n: usize) -> Result<Option<u64>, ProjectiveError> {
    if n == 1 {
        return Ok(None);
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d)).unwrap();
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    if m != 1 {
        return Err(ProjectiveError::NotPGroup { order: n });
    }
    Ok(Some(p as u64))
}

/// A subfield stable under conjugation by G, generated by lifts of N_G or of
/// a G-stable index-2 cyclic subgroup of N_G.
pub fn invariant_subfield(g: &ProjectiveGroup, bound: usize) -> Result<InvariantSubfield, ProjectiveError> {
    let prime = prime_of_power(g.order())?;
    let ng = compute_ng(g, bound)?;
    let t = g.table();
    let ng_table = t.subgroup_table(&ng.members)?;
    let tag = recognize(&ng_table);
    let cyclic = matches!(tag, StructureTag::Cyclic { .. }) || ng.members.len() == 1;
    let (case, chosen) = if cyclic || prime != Some(2) {
        (SubfieldCase::AllLifts, ng.members.clone())
    } else if let StructureTag::Dihedral { order } = tag {
        let half = order / 2;
        let mut best: Option<(usize, Vec<usize>)> = None;
        for &x in &ng.members {
            if t.element_order(x) != half {
                continue;
            }
            let sub = t.generated(&[x]);
            let stable = (0..g.order()).all(|h| sub.binary_search(&t.conj(h, x)).is_ok());
            let better = best.as_ref().is_none_or(|(b, _)| g.element(x).sort_key() < g.element(*b).sort_key());
            if stable && better {
                best = Some((x, sub));
            }
        }
        let (_, sub) = best.ok_or_else(|| {
            ProjectiveError::StabilityCheckFailed("no G-stable cyclic subgroup of index 2 in N_G".into())
        })?;
        (SubfieldCase::StableIndexTwo, sub)
    } else {
        return Err(ProjectiveError::StabilityCheckFailed(format!("unexpected N_G structure {tag}")));
    };
    let lift = |i: usize| ng.decisions[i].lift.as_ref().expect("member of N_G").element.clone();
    let lifts: Vec<AlgebraElement> = chosen.iter().map(|&i| lift(i)).collect();
    let subfield = generated_subfield(&lifts)?;
    let inverses: Vec<AlgebraElement> =
        g.elements().iter().map(|u| u.rep().inverse()).collect::<Result<_, _>>()?;
    let conj = |h: usize, b: &AlgebraElement| g.element(h).rep().mul(b).mul(&inverses[h]);
    for h in 0..g.order() {
        if !subfield.basis.iter().all(|b| subfield.contains(&conj(h, b))) {
            return Err(ProjectiveError::StabilityCheckFailed(format!("conjugation by element {h} leaves the subfield")));
        }
    }
    let acting_trivially: Vec<usize> =
        ng.members.iter().copied().filter(|&h| subfield.basis.iter().all(|b| conj(h, b) == *b)).collect();
    let lifts_inside: Vec<usize> = ng.members.iter().copied().filter(|&h| subfield.contains(&lift(h))).collect();
    if acting_trivially != lifts_inside {
        return Err(ProjectiveError::StabilityCheckFailed(
            "elements acting trivially differ from elements with lifts in the subfield".into(),
        ));
    }
    Ok(InvariantSubfield { subfield, prime, case, ng, chosen, acting_trivially, lifts_inside })
}
