use std::collections::{HashMap, VecDeque};

use super::unit::{normalize, ProjectiveGroup, ProjectiveUnit};
use super::ProjectiveError;
use crate::csa::AlgebraElement;
use crate::exact::{divisors, is_root_of_unity, power_test, FieldElement};
use crate::groups::FiniteGroupTable;
use crate::par::{self, Exec};

#[derive(Clone, Debug)]
pub struct ScalarPower {
    pub alpha: usize,
    pub scalar: FieldElement,
}

/// Minimal α with rep^α = a·1, a ∈ k.
pub fn scalar_power(x: &ProjectiveUnit, bound: usize) -> Result<ScalarPower, ProjectiveError> {
    let mut p = x.rep().clone();
    for alpha in 1..=bound {
        if let Some(a) = p.as_scalar() {
            return Ok(ScalarPower { alpha, scalar: a });
        }
        p = p.mul(x.rep());
    }
    Err(ProjectiveError::BoundExceeded { bound })
}

#[derive(Clone, Debug)]
pub struct FiniteLift {
    pub element: AlgebraElement,
    /// Multiplicative order, verified by exponentiation.
    pub order: u64,
}

#[derive(Clone, Debug)]
pub struct LiftDecision {
    pub alpha: usize,
    pub scalar: FieldElement,
    pub reduced_norm: FieldElement,
    /// Whether Nrd(rep) lies in μ(k)·(k*)^n.
    pub norm_route: bool,
    pub lift: Option<FiniteLift>,
}

/// Decide whether x has a lift of finite order. The scalar-power route
/// (rep^α = a with a ∈ μ(k)·(k*)^α) decides; the reduced-norm route must agree.
pub fn finite_order_lift(x: &ProjectiveUnit, bound: usize) -> Result<LiftDecision, ProjectiveError> {
    decide(x, bound, 0)
}

fn decide(x: &ProjectiveUnit, bound: usize, label: usize) -> Result<LiftDecision, ProjectiveError> {
    let ScalarPower { alpha, scalar } = scalar_power(x, bound)?;
    let c = power_test(&scalar, alpha as u64)?;
    let n = x.algebra().degree() as u64;
    let reduced_norm = x.rep().reduced_norm()?;
    let norm_route = power_test(&reduced_norm, n)?.is_some();
    if c.is_some() != norm_route {
        return Err(ProjectiveError::RouteDisagreement { element: label });
    }
    let lift = match c {
        None => None,
        Some(c) => {
            let g = x.rep().scale(&c.inv()?)?;
            let zeta = scalar.div(&c.pow(alpha as u64))?;
            let o = is_root_of_unity(&zeta)?
                .ok_or_else(|| ProjectiveError::CheckFailed("power test quotient is not a root of unity".into()))?;
            let m = alpha as u64 * o;
            if !g.pow(m).is_one() {
                return Err(ProjectiveError::CheckFailed(format!("lift does not satisfy g^{m} = 1")));
            }
            let order = divisors(m).into_iter().find(|&d| g.pow(d).is_one()).expect("m itself works");
            Some(FiniteLift { element: g, order })
        }
    };
    Ok(LiftDecision { alpha, scalar, reduced_norm, norm_route, lift })
}

#[derive(Clone, Debug)]
pub struct NgResult {
    /// Sorted indices of N_G in G.
    pub members: Vec<usize>,
    pub decisions: Vec<LiftDecision>,
    pub quotient: FiniteGroupTable,
    /// Coset of each element of G in G/N_G.
    pub coset_of: Vec<usize>,
    pub quotient_abelian: bool,
}

impl NgResult {
    pub fn quotient_order(&self) -> usize {
        self.quotient.order()
    }
}

/// N_G = elements admitting a finite-order lift. Any inconclusive membership
/// test aborts the computation.
pub fn compute_ng(g: &ProjectiveGroup, bound: usize) -> Result<NgResult, ProjectiveError> {
    let idx: Vec<usize> = (0..g.order()).collect();
    let decisions = par::map(Exec::default(), &idx, |&i| decide(g.element(i), bound, i))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let members: Vec<usize> = (0..g.order()).filter(|&i| decisions[i].lift.is_some()).collect();
    let t = g.table();
    if !t.is_subgroup(&members) {
        return Err(ProjectiveError::CheckFailed("N_G is not a subgroup".into()));
    }
    if !t.is_normal(&members) {
        return Err(ProjectiveError::CheckFailed("N_G is not normal".into()));
    }
    let (quotient, coset_of) = t.quotient_by(&members)?;
    let quotient_abelian = quotient.is_abelian();
    Ok(NgResult { members, decisions, quotient, coset_of, quotient_abelian })
}

/// A finite subgroup of A* with its table.
#[derive(Clone, Debug)]
pub struct LiftedGroup {
    pub elements: Vec<AlgebraElement>,
    pub table: FiniteGroupTable,
    /// Multiplicative order of each element, verified by exponentiation.
    pub orders: Vec<u64>,
    /// Index in G of the projection of each element.
    pub projection: Vec<usize>,
}

/// Close the chosen finite-order lifts of N_G under multiplication and check
/// that the result projects exactly onto N_G.
pub fn lift_ng(g: &ProjectiveGroup, ng: &NgResult, bound: usize) -> Result<LiftedGroup, ProjectiveError> {
    let alg = g.algebra();
    let mut gens: Vec<AlgebraElement> = Vec::new();
    for &i in &ng.members {
        let l = &ng.decisions[i].lift.as_ref().expect("member has a lift").element;
        if !l.is_one() && !gens.contains(l) {
            gens.push(l.clone());
        }
    }
    let one = AlgebraElement::one(alg);
    let mut elements = vec![one.clone()];
    let mut index: HashMap<AlgebraElement, usize> = HashMap::from([(one, 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for s in &gens {
            let y = elements[i].mul(s);
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
    let rows: Vec<Option<Vec<usize>>> =
        par::map(Exec::default(), &elements, |a| elements.iter().map(|b| index.get(&a.mul(b)).copied()).collect());
    let rows: Vec<Vec<usize>> = rows
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| ProjectiveError::CheckFailed("lifted group is not closed".into()))?;
    let table = FiniteGroupTable::new(rows)?;
    let projection: Vec<usize> = elements
        .iter()
        .map(|e| {
            g.index_of(&project_unchecked(e))
                .ok_or_else(|| ProjectiveError::CheckFailed("lift projects outside G".into()))
        })
        .collect::<Result<_, _>>()?;
    let mut image = projection.clone();
    image.sort_unstable();
    image.dedup();
    if image != ng.members {
        return Err(ProjectiveError::CheckFailed("lifted group does not project onto N_G".into()));
    }
    let orders: Vec<u64> = (0..elements.len()).map(|i| table.element_order(i) as u64).collect();
    for (e, &o) in elements.iter().zip(&orders) {
        if !e.pow(o).is_one() {
            return Err(ProjectiveError::CheckFailed("lifted element order not verified".into()));
        }
    }
    Ok(LiftedGroup { elements, table, orders, projection })
}

fn project_unchecked(x: &AlgebraElement) -> ProjectiveUnit {
    ProjectiveUnit::from_normalized(normalize(x))
}
