use std::collections::HashMap;

use num_traits::Zero;

use super::unit::{ProjectiveGroup, ProjectiveUnit};
use super::ProjectiveError;
use crate::csa::{generated_subfield, Subfield};
use crate::exact::{is_root_of_unity, qf, FieldElement, Q};
use crate::groups::{decompose, gamma_subgroup, AbelianPairedGroup, GammaSubgroup};

/// The scalar c with x̃ỹ = c·ỹx̃, i.e. the commutator x̃ỹx̃⁻¹ỹ⁻¹.
pub fn beta(x: &ProjectiveUnit, y: &ProjectiveUnit) -> Result<FieldElement, ProjectiveError> {
    let xy = x.rep().mul(y.rep());
    let yx = y.rep().mul(x.rep());
    let kf = x.algebra().base().clone();
    let (a, b) = (xy.k_coords(), yx.k_coords());
    let i = b.iter().position(|c| c.iter().any(|v| !v.is_zero())).ok_or(ProjectiveError::NotAUnit)?;
    let c = FieldElement::new(kf.clone(), a[i].clone())?.div(&FieldElement::new(kf, b[i].clone())?)?;
    if yx.scale(&c)? != xy {
        return Err(ProjectiveError::NotCentral);
    }
    Ok(c)
}

#[derive(Clone, Debug)]
pub struct PairedGroup {
    pub paired: AbelianPairedGroup,
    /// Indices in G of the invariant-factor basis.
    pub basis: Vec<usize>,
    /// Invariant-factor coordinates of each element of G.
    pub coords: Vec<Vec<u64>>,
}

/// Discrete log of a root of unity ζ in k as t/w with ζ = ζ_w^t.
fn root_log(z: &FieldElement) -> Result<Q, ProjectiveError> {
    if is_root_of_unity(z)?.is_none() {
        return Err(ProjectiveError::NonTorsionPairingValue);
    }
    let kf = z.field();
    let w = kf.torsion_order();
    let gen = FieldElement::primitive_root_of_unity(kf);
    let mut p = FieldElement::one(kf);
    for t in 0..w {
        if p == *z {
            return Ok(qf(t as i64, w as i64));
        }
        p = p.mul(&gen);
    }
    Err(ProjectiveError::NonTorsionPairingValue)
}

/// Invariant-factor decomposition of an abelian G with β as a ℚ/ℤ-valued pairing.
pub fn paired_group_of(g: &ProjectiveGroup) -> Result<PairedGroup, ProjectiveError> {
    let t = g.table();
    if !t.is_abelian() {
        return Err(ProjectiveError::NotAbelian);
    }
    let dec = decompose(&t.generating_set(), t.identity(), |a, b| t.mul(*a, *b));
    let r = dec.basis.len();
    let mut pairing = vec![vec![Q::zero(); r]; r];
    for i in 0..r {
        for j in 0..r {
            if i != j {
                pairing[i][j] = root_log(&beta(g.element(dec.basis[i]), g.element(dec.basis[j]))?)?;
            }
        }
    }
    let paired = AbelianPairedGroup::new(dec.orders.clone(), pairing)?;
    let coords = (0..g.order()).map(|i| dec.coords[&i].clone()).collect();
    Ok(PairedGroup { paired, basis: dec.basis, coords })
}

#[derive(Clone, Debug)]
pub struct GammaResult {
    pub paired: PairedGroup,
    pub gamma: GammaSubgroup,
    /// Sorted indices in G of Γ.
    pub elements: Vec<usize>,
    /// The subfield generated by representatives of Γ.
    pub subfield: Subfield,
}

/// Γ for an abelian G, mapped back into G, with the subfield its lifts generate.
pub fn gamma_of(g: &ProjectiveGroup) -> Result<GammaResult, ProjectiveError> {
    let paired = paired_group_of(g)?;
    let gamma = gamma_subgroup(&paired.paired);
    let by_coords: HashMap<&Vec<u64>, usize> = paired.coords.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut elements: Vec<usize> = gamma.elements.iter().map(|c| by_coords[c]).collect();
    elements.sort_unstable();
    let reps: Vec<_> = elements.iter().map(|&i| g.element(i).rep().clone()).collect();
    let subfield = generated_subfield(&reps)?;
    Ok(GammaResult { paired, gamma, elements, subfield })
}
