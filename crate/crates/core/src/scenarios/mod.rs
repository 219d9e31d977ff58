//! Verification runners over the bundled group catalog. Each runner returns a
//! [`VerificationReport`] whose checks carry the claim they test, an anchor
//! string quoting that claim, a status, and witness data.

mod balanced_suite;
mod gamma_suite;
pub mod oracle;
mod runners;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::csa::AlgebraCatalog;
use crate::exact::{CatalogError, FieldCatalog};
use crate::par::Exec;
use crate::projective::{GroupSpec, DEFAULT_CLOSURE_BOUND};
use crate::rational::RatValue;

pub use balanced_suite::run_balanced_suite;
pub use gamma_suite::{run_gamma_suite, shapes_up_to, GammaSuiteOptions};
pub use runners::{
    run_a5, run_galois_checks, run_norm_laws, run_quaternion_quotients, run_theorem_main, run_theorem_main_prime,
};

pub const DEFAULT_SEED: u64 = 0x5EED;

/// Where an expected value comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Provenance {
    /// Evident from the generators.
    Immediate,
    /// Recomputed at run time by the named brute-force routine in [`oracle`].
    Computed { oracle: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected<T> {
    pub value: T,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectations {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_order: Option<Expected<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ng_order: Option<Expected<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient_order: Option<Expected<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_order: Option<Expected<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lift_order: Option<Expected<u64>>,
    /// Smallest n with an embedding into (ℤ/n ⋊ ℤ/p) × ℤ/p, p the degree.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding_n: Option<Expected<u64>>,
}

impl Expectations {
    fn provenances(&self) -> Vec<(&'static str, &Provenance)> {
        [
            ("group_order", &self.group_order),
            ("ng_order", &self.ng_order),
            ("quotient_order", &self.quotient_order),
            ("gamma_order", &self.gamma_order),
            ("lift_order", &self.lift_order),
            ("embedding_n", &self.embedding_n),
        ]
        .into_iter()
        .filter_map(|(k, e)| e.as_ref().map(|e| (k, &e.provenance)))
        .collect()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntry {
    pub id: String,
    pub algebra_label: String,
    pub generators: Vec<Vec<Vec<RatValue>>>,
    #[serde(default)]
    pub expect: Expectations,
}

impl CatalogEntry {
    pub fn spec(&self, closure_bound: usize) -> GroupSpec {
        GroupSpec { algebra_label: self.algebra_label.clone(), generators: self.generators.clone(), closure_bound }
    }
}

pub const BUILTIN_CATALOG: &str = include_str!("../../data/catalog.json");

#[derive(Clone, Debug, Default)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn builtin() -> Self {
        Self::from_json(BUILTIN_CATALOG).expect("shipped group catalog is valid")
    }

    /// Parse and check that every computed expectation names a known oracle.
    pub fn from_json(text: &str) -> Result<Self, CatalogError> {
        let entries: Vec<CatalogEntry> = serde_json::from_str(text).map_err(|e| CatalogError::Parse(e.to_string()))?;
        let mut seen = std::collections::BTreeSet::new();
        for e in &entries {
            if !seen.insert(e.id.clone()) {
                return Err(CatalogError::DuplicateLabel(e.id.clone()));
            }
            for (key, p) in e.expect.provenances() {
                if let Provenance::Computed { oracle } = p {
                    if !oracle::ORACLES.contains(&oracle.as_str()) {
                        return Err(CatalogError::invalid(&e.id, format!("{key}: unknown oracle {oracle:?}")));
                    }
                }
            }
        }
        Ok(Catalog { entries })
    }

    pub fn get(&self, id: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.id == id)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub claim: String,
    pub anchor: String,
    pub status: Status,
    pub witness: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub scenario: String,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub overall: Status,
}

impl VerificationReport {
    pub fn new(scenario: impl Into<String>) -> Self {
        VerificationReport { scenario: scenario.into(), checks: Vec::new(), notes: Vec::new(), overall: Status::Pass }
    }

    pub fn check(&mut self, claim: impl Into<String>, anchor: &str, ok: bool, witness: Value) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.push(claim, anchor, status, witness);
    }

    pub fn push(&mut self, claim: impl Into<String>, anchor: &str, status: Status, witness: Value) {
        self.checks.push(Check { claim: claim.into(), anchor: anchor.to_string(), status, witness });
        self.overall = self.compute_overall();
    }

    fn compute_overall(&self) -> Status {
        if self.checks.iter().any(|c| c.status == Status::Fail || c.anchor.trim().is_empty()) {
            Status::Fail
        } else if self.checks.iter().any(|c| c.status == Status::Inconclusive) {
            Status::Inconclusive
        } else {
            Status::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.overall == Status::Pass
    }

    /// Claims of the checks that did not pass.
    pub fn failing(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| c.status != Status::Pass).map(|c| c.claim.as_str()).collect()
    }
}

/// Catalogs and run parameters shared by all runners.
pub struct Context {
    pub fields: FieldCatalog,
    pub algebras: AlgebraCatalog,
    pub catalog: Catalog,
    pub closure_bound: usize,
    pub seed: u64,
    pub exec: Exec,
}

impl Context {
    pub fn builtin() -> Self {
        let fields = FieldCatalog::builtin();
        let algebras = AlgebraCatalog::builtin(&fields);
        Context {
            fields,
            algebras,
            catalog: Catalog::builtin(),
            closure_bound: DEFAULT_CLOSURE_BOUND,
            seed: DEFAULT_SEED,
            exec: Exec::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scenario {
    Main,
    MainPrime,
    A5,
    Gamma,
    Balanced,
    Norms,
    Quaternion,
    Galois,
}

impl Scenario {
    pub const ALL: [Scenario; 8] = [
        Scenario::Norms,
        Scenario::Main,
        Scenario::MainPrime,
        Scenario::A5,
        Scenario::Gamma,
        Scenario::Balanced,
        Scenario::Quaternion,
        Scenario::Galois,
    ];
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub gamma: GammaSuiteOptions,
    pub balanced_n_max: u64,
    pub balanced_primes: Vec<u64>,
    pub norm_samples: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            gamma: GammaSuiteOptions::default(),
            balanced_n_max: 200,
            balanced_primes: vec![3, 5, 7],
            norm_samples: 100,
        }
    }
}

/// Entries whose algebra has odd prime degree.
pub fn prime_degree_entries(ctx: &Context) -> Vec<(&CatalogEntry, u64)> {
    ctx.catalog
        .entries
        .iter()
        .filter_map(|e| {
            let d = ctx.algebras.get(&e.algebra_label).ok()?.degree() as u64;
            (d > 2 && (2..d).all(|q| !d.is_multiple_of(q))).then_some((e, d))
        })
        .collect()
}

/// Run one scenario; catalog-driven scenarios give one report per entry.
pub fn run(ctx: &Context, scenario: Scenario, opts: &SuiteOptions) -> Vec<VerificationReport> {
    match scenario {
        Scenario::Main => ctx.catalog.entries.iter().map(|e| run_theorem_main(ctx, e)).collect(),
        Scenario::MainPrime => {
            prime_degree_entries(ctx).into_iter().map(|(e, p)| run_theorem_main_prime(ctx, e, p)).collect()
        }
        Scenario::A5 => vec![run_a5(ctx)],
        Scenario::Gamma => vec![run_gamma_suite(&opts.gamma, ctx.seed, ctx.exec)],
        Scenario::Balanced => vec![run_balanced_suite(opts.balanced_n_max, &opts.balanced_primes, ctx.exec)],
        Scenario::Norms => vec![run_norm_laws(ctx, opts.norm_samples)],
        Scenario::Quaternion => vec![run_quaternion_quotients(8, 64)],
        Scenario::Galois => vec![run_galois_checks(ctx)],
    }
}
