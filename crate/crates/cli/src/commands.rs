//! Subcommand bodies, callable in-process.

use std::path::Path;
use std::time::Instant;

use gfc_core::rational::{parse, to_decimal};
use gfc_core::{
    classify, expand, run_certificate, scan_perturbations, Check, CheckStatus, ClassifyError, GenFunError,
    GenFunSpec, Knob, Rational,
};
use gfc_core::families::alpha_from_lambdas;
use gfc_core::rational::{frac, int};
use num_traits::Zero;
use sha2::{Digest, Sha256};

use crate::exact::Exact;
use crate::resultdoc::{certificate_doc, polys_doc, ResultDoc, RowDoc};
use crate::specfile::SpecFile;
use crate::{CliError, EXIT_CHECK_FAILED, EXIT_OK};

fn precondition(e: ClassifyError) -> CliError {
    match e {
        ClassifyError::ZeroAlpha(n) => zero_alpha(n),
        other => CliError::Precondition(other.to_string()),
    }
}

fn zero_alpha(n: usize) -> CliError {
    CliError::Precondition(format!("alpha_{n} = 0 at n={n}; P_{n} cannot be made monic"))
}

fn load(path: &Path, order: Option<usize>) -> Result<GenFunSpec, CliError> {
    SpecFile::read(path)?.to_spec(order)
}

pub fn cmd_expand(path: &Path, order: Option<usize>) -> Result<ResultDoc, CliError> {
    let spec = load(path, order)?;
    expand_spec(&spec)
}

pub fn expand_spec(spec: &GenFunSpec) -> Result<ResultDoc, CliError> {
    let ps = expand(spec).map_err(|e| match e {
        GenFunError::ZeroAlpha(n) => zero_alpha(n),
        other => CliError::Precondition(other.to_string()),
    })?;
    let mut doc = ResultDoc::new("expand", spec.order());
    doc.polys = Some(polys_doc(&ps));
    Ok(doc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

pub fn cmd_classify(path: &Path) -> Result<ResultDoc, CliError> {
    let spec = load(path, None)?;
    classify_spec(&spec)
}

pub fn classify_spec(spec: &GenFunSpec) -> Result<ResultDoc, CliError> {
    let c = classify(spec).map_err(precondition)?;
    Ok(ResultDoc::from_classification(spec, &c))
}

/// Per-index table as RFC 4180 CSV; `decimal` appends `*_approx` columns.
pub fn table_csv(rows: &[RowDoc], decimal: Option<usize>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let names = ["beta", "omega", "a", "c"];
    let mut header = vec!["n".to_string()];
    header.extend(names.iter().map(|s| s.to_string()));
    if decimal.is_some() {
        header.extend(names.iter().map(|s| format!("{s}_approx")));
    }
    w.write_record(&header).unwrap();
    for row in rows {
        let cells = [&row.beta, &row.omega, &row.a, &row.c];
        let mut rec = vec![row.n.to_string()];
        rec.extend(cells.iter().map(|c| c.as_ref().map(Exact::to_string).unwrap_or_default()));
        if let Some(k) = decimal {
            rec.extend(cells.iter().map(|c| c.as_ref().map(|e| to_decimal(&e.0, k)).unwrap_or_default()));
        }
        w.write_record(&rec).unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

pub const DEFAULT_CHECKS: [Check; 7] = [
    Check::Gf7,
    Check::Gf9,
    Check::Gf10,
    Check::Gf11,
    Check::Gf12,
    Check::Solricati,
    Check::Symmetry,
];

pub fn parse_checks(list: &str) -> Result<Vec<Check>, CliError> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| Check::from_label(s).ok_or_else(|| CliError::Parse(format!("unknown check {s:?}"))))
        .collect()
}

/// Runs the requested checks; the exit code is 4 when any of them fails.
pub fn cmd_verify(path: &Path, checks: &[Check]) -> Result<(ResultDoc, i32), CliError> {
    let spec = load(path, None)?;
    verify_spec(&spec, checks)
}

pub fn verify_spec(spec: &GenFunSpec, checks: &[Check]) -> Result<(ResultDoc, i32), CliError> {
    let hint = classify(spec).ok().and_then(|c| c.params);
    let bundle = run_certificate(spec, hint.as_ref()).map_err(precondition)?;
    let mut cert = certificate_doc(&bundle);
    let keep: Vec<&str> = checks.iter().map(|c| c.label()).collect();
    cert.checks.retain(|k, _| keep.contains(&k.as_str()));
    cert.witnesses.retain(|k, _| keep.contains(&k.as_str()));
    let failed: Vec<Check> = checks.iter().copied().filter(|c| bundle.status(*c) == CheckStatus::Fail).collect();
    let mut doc = ResultDoc::new("verify", spec.order());
    for c in &failed {
        let w = &bundle.witnesses[c];
        doc.diagnostics.push(format!("{c} failed: {}", w.detail));
    }
    doc.certificate = Some(cert);
    let code = if failed.is_empty() { EXIT_OK } else { EXIT_CHECK_FAILED };
    Ok((doc, code))
}

/// `r3` -> `R_3`, `alpha5` -> scale `alpha_5`.
pub fn parse_knob(s: &str) -> Result<Knob, CliError> {
    let bad = || CliError::Parse(format!("knob must look like r3 or alpha5, got {s:?}"));
    if let Some(i) = s.strip_prefix("alpha") {
        return i.parse().map(Knob::AlphaScale).map_err(|_| bad());
    }
    if let Some(i) = s.strip_prefix('r') {
        return i.parse().map(Knob::R).map_err(|_| bad());
    }
    Err(bad())
}

/// Comma-separated rationals; `double` and `half` are accepted as 2 and 1/2.
pub fn parse_values(s: &str) -> Result<Vec<Rational>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|v| !v.is_empty())
        .map(|v| match v {
            "double" => Ok(int(2)),
            "half" => Ok(frac(1, 2)),
            _ => parse(v).ok_or_else(|| CliError::Parse(format!("invalid value {v:?}"))),
        })
        .collect()
}

pub fn cmd_scan(path: &Path, knob: Knob, values: &[Rational]) -> Result<String, CliError> {
    let spec = load(path, None)?;
    scan_spec(&spec, knob, values)
}

/// CSV columns `knob_value, verdict, first_failure_n`; `-` marks no failure.
pub fn scan_spec(spec: &GenFunSpec, knob: Knob, values: &[Rational]) -> Result<String, CliError> {
    let rows = scan_perturbations(spec, knob, values).map_err(precondition)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["knob_value", "verdict", "first_failure_n"]).unwrap();
    for row in rows {
        let verdict = match &row.outcome {
            Ok(v) => v.label().to_string(),
            Err(ClassifyError::ZeroAlpha(_)) => "zero_alpha".into(),
            Err(_) => "invalid".into(),
        };
        let first = row.first_failure_n.map_or_else(|| "-".to_string(), |n| n.to_string());
        w.write_record([Exact(row.value).to_string(), verdict, first]).unwrap();
    }
    Ok(String::from_utf8(w.into_inner().unwrap()).unwrap())
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub order: usize,
    pub reps: usize,
    pub min_us: u128,
    pub mean_us: u128,
    pub max_us: u128,
    pub hash: String,
    pub identical: bool,
}

/// Fixed workload: ultraspherical coefficients with every `R_n = 1/n` populated.
pub fn bench_spec(order: usize) -> GenFunSpec {
    let alpha = alpha_from_lambdas(&int(1), &int(2), &int(1), order).expect("nonzero alpha1");
    let r = (1..=order as i64)
        .map(|n| if n == 1 { Rational::zero() } else { frac(1, n) })
        .collect();
    GenFunSpec::new(alpha, r, order).expect("valid bench spec")
}

pub fn polys_hash(doc: &ResultDoc) -> String {
    let bytes = serde_json::to_vec(&doc.polys).expect("serializable");
    hex::encode(Sha256::digest(&bytes))
}

pub fn run_bench(order: usize, reps: usize) -> Result<Vec<BenchRow>, CliError> {
    let max = crate::max_order()?;
    if order == 0 || order > max {
        return Err(CliError::Precondition(format!("bench order must be in 1..={max}")));
    }
    if reps == 0 {
        return Err(CliError::Precondition("reps must be at least 1".into()));
    }
    let mut orders = vec![(order / 4).max(1), (order / 2).max(1), order];
    orders.dedup();
    let mut rows = Vec::new();
    for n in orders {
        let spec = bench_spec(n);
        let mut times = Vec::with_capacity(reps);
        let mut hashes = Vec::with_capacity(reps);
        for _ in 0..reps {
            let start = Instant::now();
            let doc = expand_spec(&spec)?;
            times.push(start.elapsed().as_micros());
            hashes.push(polys_hash(&doc));
        }
        let identical = hashes.windows(2).all(|w| w[0] == w[1]);
        rows.push(BenchRow {
            order: n,
            reps,
            min_us: *times.iter().min().unwrap(),
            mean_us: times.iter().sum::<u128>() / reps as u128,
            max_us: *times.iter().max().unwrap(),
            hash: hashes.swap_remove(0),
            identical,
        });
    }
    Ok(rows)
}

pub fn bench_csv(rows: &[BenchRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["order", "reps", "min_us", "mean_us", "max_us", "polys_sha256", "identical"]).unwrap();
    for r in rows {
        w.write_record([
            r.order.to_string(),
            r.reps.to_string(),
            r.min_us.to_string(),
            r.mean_us.to_string(),
            r.max_us.to_string(),
            r.hash.clone(),
            r.identical.to_string(),
        ])
        .unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

/// Bench CSV plus exit code 4 if any repetition disagreed.
pub fn cmd_bench(order: usize, reps: usize) -> Result<(String, i32), CliError> {
    let rows = run_bench(order, reps)?;
    let code = if rows.iter().all(|r| r.identical) { EXIT_OK } else { EXIT_CHECK_FAILED };
    Ok((bench_csv(&rows), code))
}
