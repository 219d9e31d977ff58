use serde::{Deserialize, Serialize};

use super::lift::{compute_ng, lift_ng};
use super::unit::{closure, project, ProjectiveGroup, DEFAULT_CLOSURE_BOUND};
use super::ProjectiveError;
use crate::csa::{AlgebraCatalog, AlgebraElement};
use crate::exact::FieldElement;
use crate::rational::{list_from, RatValue};

fn default_bound() -> usize {
    DEFAULT_CLOSURE_BOUND
}

/// Group specification file: generators as lists of K-coordinate arrays.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub algebra_label: String,
    pub generators: Vec<Vec<Vec<RatValue>>>,
    #[serde(default = "default_bound")]
    pub closure_bound: usize,
}

impl GroupSpec {
    pub fn from_json(text: &str) -> Result<Self, ProjectiveError> {
        serde_json::from_str(text).map_err(|e| ProjectiveError::BadInput(e.to_string()))
    }

    pub fn elements(&self, algs: &AlgebraCatalog) -> Result<Vec<AlgebraElement>, ProjectiveError> {
        let alg = algs.get(&self.algebra_label)?;
        self.generators
            .iter()
            .map(|g| {
                let coords = g
                    .iter()
                    .map(|c| {
                        let v = list_from(c).map_err(ProjectiveError::BadInput)?;
                        Ok(FieldElement::new(alg.splitting().clone(), v)?)
                    })
                    .collect::<Result<Vec<_>, ProjectiveError>>()?;
                Ok(AlgebraElement::new(&alg, coords)?)
            })
            .collect()
    }

    pub fn build(&self, algs: &AlgebraCatalog) -> Result<ProjectiveGroup, ProjectiveError> {
        let alg = algs.get(&self.algebra_label)?;
        let gens = self.elements(algs)?.iter().map(project).collect::<Result<Vec<_>, _>>()?;
        closure(&alg, &gens, self.closure_bound)
    }
}

/// Summary of the N_G pipeline on one group.
#[derive(Clone, Debug, Serialize)]
pub struct GroupReport {
    pub order: usize,
    pub n_g_indices: Vec<usize>,
    pub quotient_order: usize,
    pub quotient_abelian: bool,
    pub divides_n_squared: bool,
    pub lift_order: usize,
}

impl GroupReport {
    pub fn compute(g: &ProjectiveGroup, bound: usize) -> Result<Self, ProjectiveError> {
        let ng = compute_ng(g, bound)?;
        let lifted = lift_ng(g, &ng, bound)?;
        let n = g.algebra().degree();
        Ok(GroupReport {
            order: g.order(),
            n_g_indices: ng.members.clone(),
            quotient_order: ng.quotient_order(),
            quotient_abelian: ng.quotient_abelian,
            divides_n_squared: (n * n).is_multiple_of(ng.quotient_order()),
            lift_order: lifted.elements.len(),
        })
    }
}
