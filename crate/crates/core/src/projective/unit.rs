use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use num_traits::Zero;

use super::ProjectiveError;
use crate::csa::{AlgebraElement, CyclicAlgebra};
use crate::exact::{FieldElement, Q};
use crate::groups::FiniteGroupTable;
use crate::par::{self, Exec};

pub const DEFAULT_CLOSURE_BOUND: usize = 10_000;

/// A class in A*/k*, stored as its normalized representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjectiveUnit {
    rep: AlgebraElement,
}

/// Scale so that the first nonzero coordinate over k equals 1.
pub fn normalize(x: &AlgebraElement) -> AlgebraElement {
    let alg = x.algebra();
    let kc = x.k_coords();
    let first = kc.iter().find(|c| c.iter().any(|v| !v.is_zero())).expect("nonzero element");
    let c = FieldElement::new(alg.base().clone(), first.clone()).expect("k coordinate").inv().expect("nonzero");
    x.scale(&c).expect("scalar lies in k")
}

pub fn project(x: &AlgebraElement) -> Result<ProjectiveUnit, ProjectiveError> {
    if x.is_zero() || x.reduced_norm()?.is_zero() {
        return Err(ProjectiveError::NotAUnit);
    }
    Ok(ProjectiveUnit { rep: normalize(x) })
}

impl ProjectiveUnit {
    pub fn identity(alg: &Arc<CyclicAlgebra>) -> Self {
        ProjectiveUnit { rep: AlgebraElement::one(alg) }
    }

    /// Wrap an already normalized element of a finite group.
    pub(crate) fn from_normalized(rep: AlgebraElement) -> Self {
        ProjectiveUnit { rep }
    }

    pub fn rep(&self) -> &AlgebraElement {
        &self.rep
    }

    pub fn algebra(&self) -> &Arc<CyclicAlgebra> {
        self.rep.algebra()
    }

    pub fn mul(&self, o: &Self) -> Self {
        ProjectiveUnit { rep: normalize(&self.rep.mul(&o.rep)) }
    }

    pub fn is_identity(&self) -> bool {
        self.rep.is_one()
    }

    /// Support-first order: position of the first nonzero rational
    /// coordinate, then the coordinates themselves.
    pub fn sort_key(&self) -> (usize, Vec<Q>) {
        let flat = self.rep.flat_coords();
        let first = flat.iter().position(|c| !c.is_zero()).unwrap_or(flat.len());
        (first, flat)
    }
}

/// A finite subgroup of A*/k* with its multiplication table. Element 0 is
/// the identity; the rest follow in breadth-first order.
#[derive(Clone, Debug)]
pub struct ProjectiveGroup {
    algebra: Arc<CyclicAlgebra>,
    elements: Vec<ProjectiveUnit>,
    index: HashMap<ProjectiveUnit, usize>,
    table: FiniteGroupTable,
    generators: Vec<usize>,
}

/// Breadth-first closure under right multiplication by the generators.
pub fn closure(
    alg: &Arc<CyclicAlgebra>,
    gens: &[ProjectiveUnit],
    bound: usize,
) -> Result<ProjectiveGroup, ProjectiveError> {
    for g in gens {
        if g.algebra().label() != alg.label() {
            return Err(ProjectiveError::BadInput(format!(
                "generator lies in {}, expected {}",
                g.algebra().label(),
                alg.label()
            )));
        }
    }
    let id = ProjectiveUnit::identity(alg);
    let mut elements = vec![id.clone()];
    let mut index: HashMap<ProjectiveUnit, usize> = HashMap::from([(id, 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in gens {
            let y = elements[i].mul(g);
            if !index.contains_key(&y) {
                if elements.len() >= bound {
                    return Err(ProjectiveError::BoundExceeded { bound });
                }
                index.insert(y.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(y);
            }
        }
    }
    let rows: Vec<Option<Vec<usize>>> = par::map(Exec::default(), &elements, |a| {
        elements.iter().map(|b| index.get(&a.mul(b)).copied()).collect()
    });
    let rows: Vec<Vec<usize>> = rows
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| ProjectiveError::CheckFailed("closure is not closed under multiplication".into()))?;
    let table = FiniteGroupTable::new(rows)?;
    let generators = gens.iter().map(|g| index[g]).collect();
    Ok(ProjectiveGroup { algebra: alg.clone(), elements, index, table, generators })
}

impl ProjectiveGroup {
    pub fn algebra(&self) -> &Arc<CyclicAlgebra> {
        &self.algebra
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[ProjectiveUnit] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &ProjectiveUnit {
        &self.elements[i]
    }

    pub fn index_of(&self, x: &ProjectiveUnit) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn table(&self) -> &FiniteGroupTable {
        &self.table
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }
}
