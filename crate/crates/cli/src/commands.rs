use std::path::{Path, PathBuf};
use std::time::Instant;

use fpn_core::counting::{pattern_density, Colouring};
use fpn_core::io::{self, fpnc, GenMode, RunReport};
use fpn_core::patterns::{is_partition_regular, Pattern};
use fpn_core::rational::{self, Rational};
use fpn_core::regularity::arl;
use fpn_core::removal::{recolour, verify_colourings, verify_removal, PipelineConfig};
use fpn_core::{Error, PrimeField, Space, Subspace};
use serde::Serialize;
use serde_json::json;

pub const OK: u8 = 0;
pub const NEGATIVE: u8 = 1;
pub const INPUT: u8 = 2;
pub const CAP: u8 = 3;
pub const PIPELINE: u8 = 4;

pub struct Outcome {
    pub report: RunReport,
    pub code: u8,
    pub note: Option<String>,
}

impl Outcome {
    fn new(report: RunReport, code: u8) -> Self {
        Outcome { report, code, note: None }
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CapExceeded { .. } | Error::SearchTooLarge { .. } => CAP,
        Error::SelectionFailed(_) | Error::RegularityNotReached(_) => PIPELINE,
        _ => INPUT,
    }
}

fn epsilon(text: &str) -> Result<Rational, Error> {
    let eps = rational::parse(text)?;
    if eps < rational::integer(0) || eps > rational::integer(1) {
        return Err(Error::InvalidInput(format!("ε = {text} outside [0, 1]")));
    }
    Ok(eps)
}

fn load(pattern: &Path, colourings: &[&Path]) -> Result<(Pattern, Vec<Colouring>), Error> {
    let pat = io::read_pattern(pattern)?;
    let mut out = Vec::new();
    for path in colourings {
        let phi = fpnc::read(path)?;
        if phi.space().p() != pat.system().field().p() || phi.r() != pat.r() {
            return Err(Error::InvalidInput(format!(
                "{} is over F_{} with {} colours, the pattern wants F_{} with {}",
                path.display(),
                phi.space().p(),
                phi.r(),
                pat.system().field().p(),
                pat.r()
            )));
        }
        out.push(phi);
    }
    Ok((pat, out))
}

#[derive(Serialize)]
struct Exact {
    #[serde(with = "rational::serde_str")]
    value: Rational,
    decimal: String,
}

impl Exact {
    fn new(q: &Rational) -> Self {
        Exact {
            value: q.clone(),
            decimal: rational::format_decimal(q, 12),
        }
    }
}

pub fn check_pr(pattern: &Path) -> Result<Outcome, Error> {
    let pat = io::read_pattern(pattern)?;
    let cert = is_partition_regular(&pat)?;
    let regular = cert.is_some();
    let report = RunReport::new(
        "check-pr",
        json!({ "pattern": pattern }),
        json!({ "partition_regular": regular, "certificate": cert }),
        None,
    )?;
    let mut out = Outcome::new(report, if regular { OK } else { NEGATIVE });
    if !regular {
        out.note = Some("not partition-regular".into());
    }
    Ok(out)
}

pub fn gen(p: u32, n: usize, r: u8, seed: u64, mode: &str, output: &Path) -> Result<Outcome, Error> {
    let mode: GenMode = mode.parse()?;
    let space = Space::new(PrimeField::new(p)?, n)?;
    let phi = io::generate(space, r, &mode, seed)?;
    fpnc::write(output, &phi)?;
    let report = RunReport::new(
        "gen",
        json!({ "p": p, "n": n, "r": r, "mode": mode.to_string(), "output": output }),
        json!({ "points": space.size(), "class_sizes": phi.class_sizes() }),
        Some(seed),
    )?;
    Ok(Outcome::new(report, OK))
}

pub fn density(pattern: &Path, colouring: &Path) -> Result<Outcome, Error> {
    let start = Instant::now();
    let (pat, phis) = load(pattern, &[colouring])?;
    let d = pattern_density(&phis[0], &pat)?;
    let report = RunReport::new(
        "density",
        json!({ "pattern": pattern, "colouring": colouring }),
        json!({ "density": Exact::new(&d.value), "count": d.count, "total": d.total }),
        None,
    )?
    .with_timing("total", start.elapsed().as_secs_f64());
    Ok(Outcome::new(report, OK))
}

pub fn arl_cmd(colouring: &Path, eps: &str, max_codim: Option<usize>) -> Result<Outcome, Error> {
    let start = Instant::now();
    let phi = fpnc::read(colouring)?;
    let eps = epsilon(eps)?;
    let space = phi.space();
    let limit = max_codim.unwrap_or(space.n());
    let config = json!({
        "colouring": colouring,
        "epsilon": rational::format(&eps),
        "max_codim": limit,
    });
    let fs = phi.indicators();
    let (part, code) = match arl(&fs, &eps, &Subspace::full(space.field(), space.n()), limit) {
        Ok(part) => (part, OK),
        Err(Error::RegularityNotReached(part)) => (*part, NEGATIVE),
        Err(e) => return Err(e),
    };
    let results = json!({
        "regular": part.is_regular(),
        "codim": part.subspace.codim(),
        "irregular_fraction": Exact::new(&part.irregular_fraction),
        "partition": part,
    });
    let report = RunReport::new("arl", config, results, None)?.with_timing("total", start.elapsed().as_secs_f64());
    let mut out = Outcome::new(report, code);
    if code != OK {
        out.note = Some(format!("no ε-regular partition within codimension {limit}"));
    }
    Ok(out)
}

pub fn recolour_cmd(
    pattern: &Path,
    colouring: &Path,
    eps: &str,
    seed: u64,
    output: &Path,
    report_path: Option<&PathBuf>,
) -> Result<Outcome, Error> {
    let start = Instant::now();
    let (pat, phis) = load(pattern, &[colouring])?;
    let phi = &phis[0];
    let eps = epsilon(eps)?;
    let cfg = PipelineConfig::new(eps.clone(), seed)?;
    let config = json!({
        "pattern": pattern,
        "colouring": colouring,
        "output": output,
        "epsilon": rational::format(&eps),
    });
    let plan = match recolour(phi, &pat, &cfg) {
        Ok(plan) => plan,
        Err(e) => {
            if let Some(path) = report_path {
                let report = RunReport::new("recolour", &config, json!({ "error": e.to_string() }), Some(seed))?;
                std::fs::write(path, report.to_json()?)?;
            }
            return Err(e);
        }
    };
    let planned = start.elapsed().as_secs_f64();
    fpnc::write(output, &plan.result)?;
    let verification = verify_removal(&plan, &pat, &eps)?;
    let pass = verification.pass();
    let results = json!({
        "pass": pass,
        "verification": verification,
        "certificate": plan.certificate,
        "plan": plan.doc(),
        "two_level": plan.two_level,
        "subcosets": plan.multi,
    });
    let report = RunReport::new("recolour", config, results, Some(seed))?
        .with_timing("plan", planned)
        .with_timing("total", start.elapsed().as_secs_f64());
    if let Some(path) = report_path {
        std::fs::write(path, report.to_json()?)?;
    }
    let mut out = Outcome::new(report, if pass { OK } else { NEGATIVE });
    if !pass {
        out.note = Some("recolouring left instances or changed too much".into());
    }
    Ok(out)
}

pub fn verify(pattern: &Path, original: &Path, recoloured: &Path, eps: &str) -> Result<Outcome, Error> {
    let start = Instant::now();
    let (pat, phis) = load(pattern, &[original, recoloured])?;
    let eps = epsilon(eps)?;
    let report = verify_colourings(&phis[0], &phis[1], &pat, &eps)?;
    let pass = report.pass();
    let results = json!({ "pass": pass, "verification": report });
    let run = RunReport::new(
        "verify",
        json!({
            "pattern": pattern,
            "original": original,
            "recoloured": recoloured,
            "epsilon": rational::format(&eps),
        }),
        results,
        None,
    )?
    .with_timing("total", start.elapsed().as_secs_f64());
    let mut out = Outcome::new(run, if pass { OK } else { NEGATIVE });
    if !pass {
        out.note = Some(if report.witness.is_some() {
            "pattern instance remains".into()
        } else {
            "change bound exceeded".into()
        });
    }
    Ok(out)
}
