use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use divalg::csa::{AlgebraCatalog, AlgebraElement, CsaError};
use divalg::exact::{is_root_of_unity, CatalogError, ExactError, FieldCatalog};
use divalg::groups::{
    balanced_build, balanced_exists, embeds_theorem_shape, prime_factors, recognize, FiniteGroupTable, GroupError,
};
use divalg::par::Exec;
use divalg::projective::{
    compute_ng, gamma_of, invariant_subfield, lift_ng, GroupReport, GroupSpec, ProjectiveError, ProjectiveGroup,
    DEFAULT_CLOSURE_BOUND,
};
use divalg::rational::{list_to_json, parse_list};
use divalg::scenarios::{self, Catalog, Context, Scenario, Status, SuiteOptions, DEFAULT_SEED};

#[derive(Parser)]
#[command(name = "divalg", version, about = "Finite subgroups of cyclic division algebras modulo scalars")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Field catalog JSON (default: built-in).
    #[arg(long, global = true)]
    fields: Option<PathBuf>,
    /// Algebra catalog JSON (default: built-in).
    #[arg(long, global = true)]
    algebras: Option<PathBuf>,
    /// Group catalog JSON for `verify` (default: built-in).
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    /// Directory receiving one JSON report per scenario.
    #[arg(long, global = true)]
    report_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED, value_parser = parse_seed)]
    seed: u64,
    /// Overrides the bound of group specification files.
    #[arg(long, global = true)]
    closure_bound: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Output {
    Json,
    Tsv,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced norm of an element given by comma-separated flat coordinates.
    Nrd {
        #[arg(long)]
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Analyze the group generated by a specification file.
    Group {
        #[arg(value_enum)]
        action: GroupAction,
        #[arg(long)]
        spec: PathBuf,
    },
    /// Balanced semidirect products ℤ/n ⋊ ℤ/p.
    Sdp {
        #[command(subcommand)]
        action: SdpAction,
    },
    /// Run verification scenarios; exit 0 iff all pass.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupAction {
    Closure,
    Ng,
    Lift,
    Gamma,
    Subfield,
}

#[derive(Subcommand)]
enum SdpAction {
    Exists { n: u64, p: u64 },
    Build { n: u64, p: u64 },
    /// Search an embedding of a group table into (ℤ/n ⋊ ℤ/p) × ℤ/p.
    Classify {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        bound: Option<u64>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    scenario: VerifyTarget,
    #[arg(long, default_value_t = 200)]
    n_max: u64,
    #[arg(long, value_delimiter = ',', default_values_t = vec![3u64, 5, 7])]
    primes: Vec<u64>,
    #[arg(long, default_value_t = 64)]
    max_order: u64,
    #[arg(long, default_value_t = 100)]
    samples: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyTarget {
    Main,
    MainPrime,
    A5,
    Gamma,
    Balanced,
    Norms,
    Quaternion,
    Galois,
    All,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(h) => u64::from_str_radix(h, 16),
        None => s.parse(),
    }
    .map_err(|e| e.to_string())
}

/// An error with its exit code and one-line prefix.
struct Failure {
    code: u8,
    prefix: &'static str,
    message: String,
}

impl Failure {
    fn input(m: impl ToString) -> Self {
        Failure { code: 2, prefix: "ERR_INPUT", message: m.to_string() }
    }
    fn check(m: impl ToString) -> Self {
        Failure { code: 5, prefix: "ERR_CHECK", message: m.to_string() }
    }
}

impl From<ProjectiveError> for Failure {
    fn from(e: ProjectiveError) -> Self {
        let (code, prefix) = match &e {
            ProjectiveError::BoundExceeded { .. } => (3, "ERR_BOUND"),
            ProjectiveError::Inconclusive { .. } => (4, "ERR_INCONCLUSIVE"),
            ProjectiveError::Group(GroupError::SearchBoundExceeded { .. }) => (4, "ERR_INCONCLUSIVE"),
            ProjectiveError::BadInput(_)
            | ProjectiveError::Catalog(_)
            | ProjectiveError::NotAUnit
            | ProjectiveError::NotAbelian
            | ProjectiveError::NotPGroup { .. }
            | ProjectiveError::Exact(_)
            | ProjectiveError::Csa(_) => (2, "ERR_INPUT"),
            _ => (5, "ERR_CHECK"),
        };
        Failure { code, prefix, message: e.to_string() }
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        ProjectiveError::from(e).into()
    }
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        Failure::input(e)
    }
}

impl From<CsaError> for Failure {
    fn from(e: CsaError) -> Self {
        ProjectiveError::from(e).into()
    }
}

impl From<ExactError> for Failure {
    fn from(e: ExactError) -> Self {
        ProjectiveError::from(e).into()
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_fields(g: &Global) -> Result<FieldCatalog, Failure> {
    match &g.fields {
        Some(p) => Ok(FieldCatalog::from_json(&read(p)?)?),
        None => Ok(FieldCatalog::builtin()),
    }
}

fn load_algebras(g: &Global, fields: &FieldCatalog) -> Result<AlgebraCatalog, Failure> {
    match &g.algebras {
        Some(p) => Ok(AlgebraCatalog::from_json(&read(p)?, fields)?),
        None => Ok(AlgebraCatalog::builtin(fields)),
    }
}

fn load_spec(g: &Global, path: &Path) -> Result<GroupSpec, Failure> {
    let mut spec = GroupSpec::from_json(&read(path)?)?;
    if let Some(b) = g.closure_bound {
        spec.closure_bound = b;
    }
    Ok(spec)
}

fn elements_json(g: &ProjectiveGroup) -> Value {
    Value::Array(g.elements().iter().map(|x| list_to_json(&x.rep().flat_coords())).collect())
}

fn cmd_nrd(g: &Global, algebra: &str, element: &str) -> Result<Value, Failure> {
    let fields = load_fields(g)?;
    let algs = load_algebras(g, &fields)?;
    let alg = algs.get(algebra)?;
    let coords = parse_list(element).map_err(Failure::input)?;
    let x = AlgebraElement::from_flat(&alg, &coords).map_err(Failure::input)?;
    let nrd = x.reduced_norm()?;
    let root = if nrd.is_zero() { None } else { is_root_of_unity(&nrd)? };
    Ok(json!({
        "nrd": list_to_json(nrd.coords()),
        "is_root_of_unity": root.map_or(json!(false), |o| json!(o)),
    }))
}

fn cmd_group(g: &Global, action: GroupAction, spec_path: &Path) -> Result<Value, Failure> {
    let fields = load_fields(g)?;
    let algs = load_algebras(g, &fields)?;
    let spec = load_spec(g, spec_path)?;
    let bound = spec.closure_bound;
    let grp = spec.build(&algs)?;
    let t = grp.table();
    Ok(match action {
        GroupAction::Closure => json!({
            "order": grp.order(),
            "structure": recognize(t),
            "elements": elements_json(&grp),
            "table": t.rows(),
        }),
        GroupAction::Ng => {
            let report = GroupReport::compute(&grp, bound)?;
            let mut v = serde_json::to_value(&report).expect("serializable");
            v["elements"] = elements_json(&grp);
            v["table"] = json!(t.rows());
            v
        }
        GroupAction::Lift => {
            let ng = compute_ng(&grp, bound)?;
            let l = lift_ng(&grp, &ng, bound)?;
            json!({
                "order": l.elements.len(),
                "elements": l.elements.iter().map(|e| list_to_json(&e.flat_coords())).collect::<Vec<_>>(),
                "orders": l.orders,
                "projection": l.projection,
                "table": l.table.rows(),
            })
        }
        GroupAction::Gamma => {
            let gm = gamma_of(&grp)?;
            let pm: Vec<Vec<Value>> =
                gm.paired.paired.pairing_matrix().iter().map(|r| r.iter().map(divalg::rational::to_json).collect()).collect();
            json!({
                "order": grp.order(),
                "factors": gm.paired.paired.factors(),
                "basis": gm.paired.basis,
                "pairing": pm,
                "gamma_order": gm.elements.len(),
                "gamma_indices": gm.elements,
                "subfield_degree": gm.subfield.degree,
                "elements": elements_json(&grp),
            })
        }
        GroupAction::Subfield => {
            let s = invariant_subfield(&grp, bound)?;
            json!({
                "order": grp.order(),
                "prime": s.prime,
                "case": s.case,
                "n_g_indices": s.ng.members,
                "chosen": s.chosen,
                "acting_trivially": s.acting_trivially,
                "lifts_inside": s.lifts_inside,
                "subfield_degree": s.subfield.degree,
                "subfield_basis": s.subfield.basis.iter().map(|b| list_to_json(&b.flat_coords())).collect::<Vec<_>>(),
            })
        }
    })
}

fn cmd_sdp(action: &SdpAction) -> Result<Value, Failure> {
    match action {
        SdpAction::Exists { n, p } => {
            let exists = balanced_exists(*n, *p).map_err(Failure::input)?;
            let factors: Vec<Value> =
                prime_factors(*n).into_iter().map(|q| json!({ "prime": q, "residue_mod_p": q % p })).collect();
            Ok(json!({ "n": n, "p": p, "exists": exists, "prime_factors": factors }))
        }
        SdpAction::Build { n, p } => {
            let (d, t) = balanced_build(*n, *p).map_err(Failure::input)?;
            Ok(json!({ "n": d.n, "p": d.p, "r": d.r, "order": t.order(), "table": t.rows() }))
        }
        SdpAction::Classify { group, p, bound } => {
            let t = FiniteGroupTable::from_json(&read(group)?).map_err(Failure::input)?;
            balanced_exists(1, *p).map_err(Failure::input)?;
            match embeds_theorem_shape(&t, *p, *bound)? {
                Some(e) => Ok(json!({ "order": t.order(), "embeds": true, "n": e.n, "p": e.p, "r": e.r, "images": e.images })),
                None => Ok(json!({ "order": t.order(), "embeds": false, "p": p })),
            }
        }
    }
}

fn scenario_file(id: &str) -> String {
    format!("{}.json", id.replace('/', "__"))
}

fn cmd_verify(g: &Global, a: &VerifyArgs) -> Result<Value, Failure> {
    let fields = load_fields(g)?;
    let algebras = load_algebras(g, &fields)?;
    let catalog = match &g.catalog {
        Some(p) => Catalog::from_json(&read(p)?)?,
        None => Catalog::builtin(),
    };
    let ctx = Context {
        fields,
        algebras,
        catalog,
        closure_bound: g.closure_bound.unwrap_or(DEFAULT_CLOSURE_BOUND),
        seed: g.seed,
        exec: Exec::default(),
    };
    let mut opts = SuiteOptions { balanced_n_max: a.n_max, balanced_primes: a.primes.clone(), norm_samples: a.samples, ..Default::default() };
    opts.gamma.max_order = a.max_order;
    let targets: Vec<Scenario> = match a.scenario {
        VerifyTarget::All => Scenario::ALL.to_vec(),
        VerifyTarget::Main => vec![Scenario::Main],
        VerifyTarget::MainPrime => vec![Scenario::MainPrime],
        VerifyTarget::A5 => vec![Scenario::A5],
        VerifyTarget::Gamma => vec![Scenario::Gamma],
        VerifyTarget::Balanced => vec![Scenario::Balanced],
        VerifyTarget::Norms => vec![Scenario::Norms],
        VerifyTarget::Quaternion => vec![Scenario::Quaternion],
        VerifyTarget::Galois => vec![Scenario::Galois],
    };
    let reports: Vec<_> = targets.into_iter().flat_map(|s| scenarios::run(&ctx, s, &opts)).collect();
    if let Some(dir) = &g.report_dir {
        fs::create_dir_all(dir).map_err(|e| Failure::input(format!("{}: {e}", dir.display())))?;
        for r in &reports {
            let path = dir.join(scenario_file(&r.scenario));
            let text = serde_json::to_string_pretty(r).expect("serializable") + "\n";
            fs::write(&path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        }
    }
    let overall = if reports.iter().any(|r| r.overall == Status::Fail) {
        Status::Fail
    } else if reports.iter().any(|r| r.overall == Status::Inconclusive) {
        Status::Inconclusive
    } else {
        Status::Pass
    };
    let summary: Vec<Value> = reports
        .iter()
        .map(|r| json!({ "scenario": r.scenario, "overall": r.overall, "not_passed": r.failing() }))
        .collect();
    Ok(json!({ "overall": overall, "reports": summary }))
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") }, x, out);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        _ => out.push(format!("{prefix}\t{v}")),
    }
}

fn render(v: &Value, mode: Output) -> String {
    match mode {
        Output::Json => serde_json::to_string(v).expect("serializable"),
        Output::Pretty => serde_json::to_string_pretty(v).expect("serializable"),
        Output::Tsv => {
            let mut lines = Vec::new();
            flatten("", v, &mut lines);
            lines.join("\n")
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                e.exit();
            }
            let msg = e.to_string();
            let line = msg.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments");
            eprintln!("ERR_INPUT: {}", line.trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    let g = &cli.global;
    let result = match &cli.command {
        Command::Nrd { algebra, element } => cmd_nrd(g, algebra, element),
        Command::Group { action, spec } => cmd_group(g, *action, spec),
        Command::Sdp { action } => cmd_sdp(action),
        Command::Verify(a) => cmd_verify(g, a).and_then(|v| {
            let status = v["overall"].as_str().unwrap_or("fail").to_string();
            emit(&render(&v, g.output));
            match status.as_str() {
                "pass" => Ok(Value::Null),
                "inconclusive" => Err(Failure { code: 4, prefix: "ERR_INCONCLUSIVE", message: not_passed(&v) }),
                _ => Err(Failure::check(not_passed(&v))),
            }
        }),
    };
    match result {
        Ok(Value::Null) => ExitCode::SUCCESS,
        Ok(v) => {
            emit(&render(&v, g.output));
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("{}: {}", f.prefix, f.message.replace('\n', " "));
            ExitCode::from(f.code)
        }
    }
}

/// Print to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn not_passed(v: &Value) -> String {
    let ids: Vec<String> = v["reports"]
        .as_array()
        .map(|a| {
            a.iter()
                .filter(|r| r["overall"] != "pass")
                .map(|r| r["scenario"].as_str().unwrap_or("?").to_string())
                .collect()
        })
        .unwrap_or_default();
    format!("scenarios not passing: {}", ids.join(","))
}
