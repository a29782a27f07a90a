//! Verification suites and their machine-readable reports.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::exact::{fmt_rational, CstPoly, Rational};
use crate::llv::{
    build_primed_dictionary, build_triple, class_compatibility, verify_fourier_conjugacy, verify_sigma_triples,
    verify_lambda_triple, verify_triple, verify_verbitsky, FourClassModel, FourierOpMap, Generators,
};
use crate::{jacobian, k3};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Refuted,
    Unsupported,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Params {
    pub g: Option<u32>,
    pub c0: Option<i64>,
    pub c1: Option<i64>,
    pub t: Option<String>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub check: String,
    pub status: Status,
    pub params: Params,
    pub assumptions: Vec<String>,
    pub witness: Option<String>,
    pub detail: Option<String>,
    pub elapsed_ms: Option<u64>,
}

impl Report {
    fn from_check(prefix: &str, c: Check, params: &Params) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            check: format!("{prefix}{}", c.name),
            status: if c.passed { Status::Verified } else { Status::Refuted },
            params: params.clone(),
            assumptions: c.assumptions,
            witness: c.witness,
            detail: c.detail,
            elapsed_ms: None,
        }
    }

    fn unsupported(check: String, e: &Error, params: &Params) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            check,
            status: Status::Unsupported,
            params: params.clone(),
            assumptions: Vec::new(),
            witness: None,
            detail: Some(e.to_string()),
            elapsed_ms: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Suite {
    /// Standard quadruple plus `trials` random ones.
    Llv { hdim: usize, t: Rational, trials: u32, seed: u64 },
    Triple { genus: u32, signs: Vec<(i64, i64)> },
    K3Motive,
    ThetaObstruction { genus: u32 },
}

impl Suite {
    pub const ALL_SIGNS: [(i64, i64); 4] = [(1, 1), (1, -1), (-1, 1), (-1, -1)];
}

/// Model genus used by the llv suite; the relations do not depend on it.
const LLV_GENUS: u32 = 2;

fn llv_checks(model: &FourClassModel) -> Result<Vec<Check>> {
    let g = Generators::<CstPoly>::new(model)?;
    let mut out = verify_verbitsky(&g);
    out.extend(verify_sigma_triples(&g));
    out.extend(verify_lambda_triple(&g));
    Ok(out)
}

fn triple_checks(genus: u32, c0: i64, c1: i64) -> Result<Vec<Check>> {
    let model = FourClassModel::standard(genus, &Rational::from_integer(1.into()), 0)?;
    let g = Generators::<CstPoly>::new(&model)?;
    let dict = build_primed_dictionary(&g, c0)?;
    let map = FourierOpMap::new(c0, c1)?;
    let t = build_triple(genus, &dict, &map)?;
    let mut out = verify_triple(&t, &g, &dict);
    out.extend(verify_fourier_conjugacy(&t, &dict, &map));
    out.extend(class_compatibility(genus, c0, c1, &dict, &g)?);
    Ok(out)
}

fn sign(c: i64) -> &'static str {
    if c > 0 {
        "+"
    } else {
        "-"
    }
}

/// One batch: a name prefix, its parameters and the checks it produced.
fn batch(
    out: &mut Vec<Report>,
    prefix: String,
    params: Params,
    timings: bool,
    run: impl FnOnce() -> Result<Vec<Check>>,
) -> Result<()> {
    let start = Instant::now();
    let res = run();
    let ms = timings.then(|| start.elapsed().as_millis() as u64);
    match res {
        Ok(checks) => out.extend(checks.into_iter().map(|c| Report { elapsed_ms: ms, ..Report::from_check(&prefix, c, &params) })),
        Err(e @ (Error::Unsupported(_) | Error::OutsideModel(_))) => {
            out.push(Report { elapsed_ms: ms, ..Report::unsupported(format!("{prefix}error"), &e, &params) })
        }
        Err(e) => return Err(e),
    }
    Ok(())
}

/// Runs the selected suites; reports come back sorted by check name.
pub fn run_suite(selection: &[Suite], timings: bool) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for s in selection {
        match s {
            Suite::Llv { hdim, t, trials, seed } => {
                if !(6..=10).contains(hdim) {
                    return Err(Error::Invalid(format!("model dimension {hdim} outside 6..10")));
                }
                let extra = hdim - 6;
                let tag = format!("llv.dim{hdim}.t={}", fmt_rational(t));
                let base = Params { g: Some(LLV_GENUS), t: Some(fmt_rational(t)), ..Params::default() };
                batch(&mut out, format!("{tag}.std."), base.clone(), timings, || {
                    llv_checks(&FourClassModel::standard(LLV_GENUS, t, extra)?)
                })?;
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                for k in 0..*trials {
                    let model = FourClassModel::random(LLV_GENUS, t, extra, &mut rng)?;
                    let params = Params { seed: Some(*seed), ..base.clone() };
                    batch(&mut out, format!("{tag}.rand{k:03}."), params, timings, || llv_checks(&model))?;
                }
            }
            Suite::Triple { genus, signs } => {
                for &(c0, c1) in signs {
                    let params = Params { g: Some(*genus), c0: Some(c0), c1: Some(c1), ..Params::default() };
                    let prefix = format!("triple.g{genus}.c0{}.c1{}.", sign(c0), sign(c1));
                    batch(&mut out, prefix, params, timings, || triple_checks(*genus, c0, c1))?;
                }
            }
            Suite::K3Motive => batch(&mut out, String::new(), Params::default(), timings, k3::verify_all)?,
            Suite::ThetaObstruction { genus } => {
                let params = Params { g: Some(*genus), ..Params::default() };
                batch(&mut out, String::new(), params, timings, || jacobian::verify_theta_obstruction(*genus))?;
            }
        }
    }
    out.sort_by(|a, b| a.check.cmp(&b.check));
    Ok(out)
}

#[derive(Serialize)]
struct Document<'a> {
    schema_version: u32,
    verified: usize,
    refuted: usize,
    unsupported: usize,
    reports: &'a [Report],
}

pub fn render_json(reports: &[Report]) -> String {
    let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
    let doc = Document {
        schema_version: SCHEMA_VERSION,
        verified: count(Status::Verified),
        refuted: count(Status::Refuted),
        unsupported: count(Status::Unsupported),
        reports,
    };
    serde_json::to_string_pretty(&doc).expect("reports serialize") + "\n"
}

pub fn render_text(reports: &[Report]) -> String {
    let mut s = String::new();
    for r in reports {
        let status = match r.status {
            Status::Verified => "verified",
            Status::Refuted => "REFUTED",
            Status::Unsupported => "unsupported",
        };
        s.push_str(&format!("{status:<11} {}", r.check));
        if let Some(d) = &r.detail {
            s.push_str(&format!("  [{d}]"));
        }
        if let Some(ms) = r.elapsed_ms {
            s.push_str(&format!("  ({ms} ms)"));
        }
        s.push('\n');
        if let Some(w) = &r.witness {
            s.push_str(&format!("    witness: {w}\n"));
        }
        if !r.assumptions.is_empty() {
            s.push_str(&format!("    assumes: {}\n", r.assumptions.join("; ")));
        }
    }
    let bad = reports.iter().filter(|r| r.status != Status::Verified).count();
    s.push_str(&format!("{} checks, {} not verified\n", reports.len(), bad));
    s
}
