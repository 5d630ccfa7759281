//! Jobs for the `branchlab` command line: argument parsing, dispatch, and
//! rendering as a table or as a structured JSON document.
//!
//! Structured documents keep integers as JSON integers and write rationals
//! and Gaussian rationals as strings such as `"-3/2"` or `"1+2i"`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use branchlab::branching::{
    branch_kostant, branch_oracle, build_k_structure, parity_checks, verify_n_invariants, BranchingReport, KStructure,
    Method,
};
use branchlab::checks::{require_all, Check};
use branchlab::chevalley::LieAlgebra;
use branchlab::hwmodule::{build_irrep, verify_prv_annihilation};
use branchlab::ideal::verify_annihilator;
use branchlab::mstruct::{
    fiber_enumerate, fiber_label, is_spherical, m_structure, minimal_fiber_element, verify_spectrum_domination,
    FiberLabel,
};
use branchlab::psembed::{parameter_checks, ps_ktype_bound, ps_params, verify_borel_weil_annihilation};
use branchlab::realform::{build_real_form, structure_checks, RealFormData, RealFormSummary, ThetaSpec};
use branchlab::rootsys::{CartanMatrix, DominantWeight};
use branchlab::scalar::Rat;
use branchlab::{Error, Result};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Branch,
    Verify,
    Spherical,
    Fiber,
    Minimal,
    Mstructure,
    PsParams,
    Classify,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Table,
    Structured,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum BranchMethod {
    #[default]
    Kostant,
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSpec {
    pub command: Command,
    pub algebra: Option<String>,
    /// Preset name or path of a ThetaSpec JSON document.
    pub realform: String,
    pub weight: Option<Vec<i64>>,
    pub bound: Option<i64>,
    pub zeta: Option<Vec<i8>>,
    pub nu: Option<Vec<Rat>>,
    pub method: BranchMethod,
    pub output: Option<String>,
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: String,
    pub job: JobSpec,
    pub realform_summary: RealFormSummary,
    pub results: Value,
    pub identity_checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.identity_checks.iter().all(|c| c.passed)
    }

    pub fn to_structured(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_structured(text: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("structured report: {e}")))
    }
}

/// Exit status for an error: 2 for input errors, 3 for resource limits, 4 for
/// structure or identity violations.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::NotDominant(_) | Error::NotIntegral(_) | Error::InvalidLabel(_) => 2,
        Error::NotFiniteType(_) => 2,
        Error::ResourceLimit { .. } => 3,
        _ => 4,
    }
}

pub fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    split_list(s)
        .map(|t| t.parse::<i64>().map_err(|_| Error::Parse(format!("{t:?} is not an integer"))))
        .collect()
}

/// Signs `±1`, comma separated; the empty string is the empty list.
pub fn parse_zeta(s: &str) -> Result<Vec<i8>> {
    split_list(s)
        .map(|t| match t {
            "1" | "+1" | "+" => Ok(1),
            "-1" | "-" => Ok(-1),
            _ => Err(Error::Parse(format!("{t:?} is not a sign ±1"))),
        })
        .collect()
}

pub fn parse_rat_list(s: &str) -> Result<Vec<Rat>> {
    split_list(s).map(|t| t.parse::<Rat>().map_err(|_| Error::Parse(format!("{t:?} is not a rational")))).collect()
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty())
}

fn parse_cartan(s: &str) -> Result<CartanMatrix> {
    if let Ok(c) = CartanMatrix::named(s) {
        return Ok(c);
    }
    let rows: Vec<Vec<i64>> = s.split(';').map(parse_int_list).collect::<Result<_>>()?;
    CartanMatrix::new(rows)
}

pub fn load_theta_spec(realform: &str) -> Result<ThetaSpec> {
    if ThetaSpec::preset_names().iter().any(|n| n.eq_ignore_ascii_case(realform)) {
        return ThetaSpec::preset(realform);
    }
    let text = std::fs::read_to_string(realform)
        .map_err(|e| Error::Parse(format!("{realform:?} is neither a preset nor a readable file: {e}")))?;
    ThetaSpec::from_json(&text)
}

struct Context {
    rf: RealFormData,
}

impl Context {
    fn load(job: &JobSpec) -> Result<Context> {
        let spec = load_theta_spec(&job.realform)?;
        let cartan = spec.cartan()?;
        if let Some(a) = &job.algebra {
            let given = parse_cartan(a)?;
            if given != cartan {
                return Err(Error::Parse(format!("algebra {a:?} does not match the Cartan matrix of the real form")));
            }
        }
        let g = LieAlgebra::new(&cartan)?;
        Ok(Context { rf: build_real_form(&g, &spec)? })
    }

    fn k(&self) -> Result<KStructure> {
        build_k_structure(&self.rf)
    }

    fn weight(&self, job: &JobSpec) -> Result<DominantWeight> {
        let w = job.weight.clone().ok_or_else(|| Error::Parse("--weight is required".into()))?;
        if w.len() != self.rf.rank() {
            return Err(Error::Parse(format!("weight has {} entries, rank is {}", w.len(), self.rf.rank())));
        }
        DominantWeight::new(w)
    }

    fn label(&self, job: &JobSpec) -> Result<FiberLabel> {
        match (&job.zeta, &job.nu, &job.weight) {
            (Some(zeta), Some(nu), _) => Ok(FiberLabel { zeta: zeta.clone(), nu: nu.clone() }),
            (None, None, Some(_)) => Ok(fiber_label(&self.weight(job)?, &self.rf)),
            _ => Err(Error::Parse("give --zeta and --nu, or --weight".into())),
        }
    }

    fn bound(job: &JobSpec) -> Result<i64> {
        match job.bound {
            Some(b) if b < 0 => Err(Error::Parse(format!("bound {b} is negative"))),
            Some(b) => Ok(b),
            None => Err(Error::Parse("--bound is required".into())),
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("result serializes")
}

fn check<T>(name: &str, r: Result<T>) -> Check {
    Check::from_result(name, r.map(|_| ()))
}

/// The identity suite run by `verify`.
fn identity_suite(ctx: &Context, lambda: &DominantWeight, bound: i64) -> Result<Vec<Check>> {
    let rf = &ctx.rf;
    let ks = ctx.k()?;
    let v = build_irrep(&rf.g, lambda)?;
    let mut checks = structure_checks(rf);
    checks.push(check("n-invariants of V_λ equal U(m)v_λ", verify_n_invariants(&v, rf)));
    checks.push(check("e_-αi^(ni+1) kills v_λ and e_-αi^ni does not", verify_prv_annihilation(&rf.g, &v)));
    match verify_annihilator(&v, rf) {
        Ok(report) => checks.extend(report.generators),
        Err(e) => checks.push(check::<()>("annihilator generators kill v_λ", Err(e))),
    }
    let equal = (|| {
        let k = branch_kostant(&v, rf, &ks)?;
        let o = branch_oracle(&v, rf, &ks)?;
        if k.same_decomposition(&o) {
            Ok(())
        } else {
            Err(Error::IdentityViolation(format!("kostant {:?}, oracle {:?}", k.entries, o.entries)))
        }
    })();
    checks.push(check("Kostant branching equals the oracle", equal));
    checks.push(check("multiplicities dominate the minimal fiber element", verify_spectrum_domination(lambda, rf, &ks)));
    checks.push(check(
        "fiber is the minimal element plus spherical weights",
        fiber_enumerate(&fiber_label(lambda, rf), bound, rf),
    ));
    let mut grouped = |r: Result<Vec<Check>>, name: &str| match r {
        Ok(cs) => checks.extend(cs),
        Err(e) => checks.push(check::<()>(name, Err(e))),
    };
    grouped(parameter_checks(&v, rf), "principal series parameters");
    grouped(verify_borel_weil_annihilation(lambda, rf), "Borel-Weil annihilation");
    grouped(parity_checks(&v, rf, &ks), "integrality and parity of z_i");
    checks.push(check("k-type bounds from the principal series", ps_ktype_bound(&v, rf, &ks)));
    Ok(checks)
}

/// Runs a job and returns its report.
pub fn run(job: &JobSpec) -> Result<Report> {
    let ctx = Context::load(job)?;
    let rf = &ctx.rf;
    let mut identity_checks = Vec::new();
    let results = match job.command {
        Command::Branch => {
            let lambda = ctx.weight(job)?;
            let ks = ctx.k()?;
            let v = build_irrep(&rf.g, &lambda)?;
            let report = match job.method {
                BranchMethod::Kostant => branch_kostant(&v, rf, &ks)?,
                BranchMethod::Oracle => branch_oracle(&v, rf, &ks)?,
            };
            let sums = report.checksum == v.dim() as u64;
            identity_checks.push(Check::from_result(
                "Σ multiplicity·dim equals dim V_λ",
                if sums { Ok(()) } else { Err(Error::IdentityViolation(format!("{} ≠ {}", report.checksum, v.dim()))) },
            ));
            to_value(&report)
        }
        Command::Verify => {
            let lambda = ctx.weight(job)?;
            let bound = job.bound.map_or(Ok(lambda.level() + 2), |_| Context::bound(job))?;
            identity_checks = identity_suite(&ctx, &lambda, bound)?;
            let failed = identity_checks.iter().filter(|c| !c.passed).count();
            json!({ "weight": lambda.0, "checks": identity_checks.len(), "failed": failed })
        }
        Command::Spherical => {
            let lambda = ctx.weight(job)?;
            json!({ "weight": lambda.0, "spherical": is_spherical(&lambda, rf) })
        }
        Command::Fiber => {
            let label = ctx.label(job)?;
            let bound = Context::bound(job)?;
            let minimal = minimal_fiber_element(&label, rf)?;
            let members = fiber_enumerate(&label, bound, rf)?;
            json!({
                "label": to_value(&label),
                "minimal": minimal.0,
                "bound": bound,
                "members": members.iter().map(|m| m.0.clone()).collect::<Vec<_>>(),
            })
        }
        Command::Minimal => {
            let label = ctx.label(job)?;
            let minimal = minimal_fiber_element(&label, rf)?;
            json!({ "label": to_value(&label), "minimal": minimal.0 })
        }
        Command::Mstructure => to_value(&m_structure(rf)),
        Command::PsParams => {
            let lambda = ctx.weight(job)?;
            let v = build_irrep(&rf.g, &lambda)?;
            identity_checks = parameter_checks(&v, rf)?;
            to_value(&ps_params(&lambda, rf))
        }
        Command::Classify => to_value(&rf.summary()),
    };
    Ok(Report {
        schema_version: SCHEMA_VERSION.to_string(),
        job: job.clone(),
        realform_summary: rf.summary(),
        results,
        identity_checks,
    })
}

/// Fails with the violated checks when the report has any.
pub fn require_passed(report: &Report) -> Result<()> {
    require_all(&report.identity_checks)
}

fn tuple(v: &[i64]) -> String {
    format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

fn one_based(v: &[usize]) -> String {
    format!("{{{}}}", v.iter().map(|i| format!("α{}", i + 1)).collect::<Vec<_>>().join(", "))
}

fn render_branching(out: &mut String, r: &BranchingReport) {
    let method = match r.method {
        Method::Kostant => "kostant",
        Method::Oracle => "oracle",
    };
    let _ = writeln!(out, "V{} restricted to k ({method}), dim {}", tuple(&r.lambda), r.dim);
    let _ = writeln!(out, "{:<20} {:>8} {:>12}", "k-type", "dim", "multiplicity");
    for e in &r.entries {
        let _ = writeln!(out, "{:<20} {:>8} {:>12}", tuple(&e.weight), e.dim, e.multiplicity);
    }
    let _ = writeln!(out, "checksum {}", r.checksum);
}

fn render_summary(out: &mut String, s: &RealFormSummary) {
    let _ = writeln!(out, "real form {}", s.name);
    let _ = writeln!(
        out,
        "dim g {}, k {}, m {}, a {}, n {}; split rank {}, dim Cent m {}",
        s.dim_g, s.dim_k, s.dim_m, s.dim_a, s.dim_n, s.split_rank, s.center_dim
    );
    let _ = writeln!(out, "I_m {}  I_n {}  I_s {}  I_nil {}", one_based(&s.i_m), one_based(&s.i_n), one_based(&s.i_s), one_based(&s.i_nil));
    let _ = writeln!(out, "I_1 {}  I_2 {}", one_based(&s.i_1), one_based(&s.i_2));
    let pairs: Vec<String> = s.pairs.iter().map(|(a, b)| format!("(α{}, α{})", a + 1, b + 1)).collect();
    let _ = writeln!(out, "pairs [{}]", pairs.join(", "));
}

/// Human-readable rendering of a report.
pub fn render_table(report: &Report) -> String {
    let mut out = String::new();
    let r = &report.results;
    match report.job.command {
        Command::Branch => {
            let b: BranchingReport = serde_json::from_value(r.clone()).expect("branching report");
            render_branching(&mut out, &b);
        }
        Command::Spherical => {
            let _ = writeln!(out, "{}", r["spherical"]);
        }
        Command::Minimal => {
            let _ = writeln!(out, "minimal element {}", tuple(&int_list(&r["minimal"])));
        }
        Command::Fiber => {
            let _ = writeln!(out, "minimal element {}", tuple(&int_list(&r["minimal"])));
            let _ = writeln!(out, "members with level at most {}:", r["bound"]);
            for m in r["members"].as_array().into_iter().flatten() {
                let _ = writeln!(out, "  {}", tuple(&int_list(m)));
            }
        }
        Command::Mstructure => {
            let _ = writeln!(out, "{}", r["summary"].as_str().unwrap_or_default());
            for e in r["epsilon_parity"].as_array().into_iter().flatten() {
                let _ = writeln!(out, "ε{} acts on v_λ by {}", e["index"], e["rule"].as_str().unwrap_or_default());
            }
            let _ = writeln!(out, "dim m {}, dim Cent m {}, split rank {}", r["dim_m"], r["center_dim"], r["split_rank"]);
        }
        Command::PsParams => {
            let strs = |v: &Value| {
                v.as_array().into_iter().flatten().map(|x| x.as_str().unwrap_or_default().to_string()).collect::<Vec<_>>()
            };
            let _ = writeln!(out, "λ   {}", tuple(&int_list(&r["lambda"])));
            let _ = writeln!(out, "λ^c {}", tuple(&int_list(&r["lambda_c"])));
            let _ = writeln!(out, "δ   ζ = {} ν = [{}]", r["delta"]["zeta"], strs(&r["delta"]["nu"]).join(", "));
            let _ = writeln!(out, "ν^c [{}]", strs(&r["nu_c"]).join(", "));
            let _ = writeln!(out, "ξ   [{}]", strs(&r["xi"]).join(", "));
        }
        Command::Classify => render_summary(&mut out, &report.realform_summary),
        Command::Verify => {}
    }
    if !report.identity_checks.is_empty() && report.job.command != Command::Branch {
        for c in &report.identity_checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            let _ = writeln!(out, "{mark} {}{}", c.name, if c.detail.is_empty() { String::new() } else { format!(": {}", c.detail) });
        }
    }
    out
}

fn int_list(v: &Value) -> Vec<i64> {
    v.as_array().into_iter().flatten().filter_map(Value::as_i64).collect()
}

pub fn render(report: &Report) -> String {
    match report.job.format {
        Format::Table => render_table(report),
        Format::Structured => report.to_structured(),
    }
}
