//! Batch generation and checking, one JSONL record per case.

use std::fs::OpenOptions;
use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use krein_core::classify::{classify, ClassificationReport};
use krein_core::decompose::{
    certify_family, certify_scalar_commutant, search_decomposition, verify_certificate, verify_verdict, Certificate,
    DecompositionStatus, DecompositionVerdict,
};
use krein_core::indefinite::{is_h_normal, MatrixPair};
use krein_core::io::PairDocument;
use krein_core::witnesses::{Family, WitnessSpec};

use crate::commands::load;
use crate::{AuditArgs, CliError, Format, Outcome};

/// One audited case. Carries the full document so the certificate and
/// verdict can be re-checked from the log alone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditRecord {
    pub input: String,
    pub family: Option<Family>,
    pub k: Option<usize>,
    pub document: PairDocument,
    pub h_normal: bool,
    pub report: Option<ClassificationReport>,
    pub bound_ok: bool,
    pub certificate: Option<Certificate>,
    pub certificate_summary: Option<String>,
    pub certificate_verified: bool,
    pub verdict: Option<DecompositionVerdict>,
    pub seed: u64,
    pub budget: usize,
    pub passed: bool,
    pub failures: Vec<String>,
    pub elapsed_ms: u64,
    pub tool_version: String,
}

impl AuditRecord {
    /// Recomputes the checks that need only the record itself.
    pub fn reverify(&self) -> bool {
        let Ok(pair) = self.document.to_pair() else { return false };
        let cert_ok = self.certificate.as_ref().is_none_or(|c| verify_certificate(&pair, c));
        let verdict_ok = self.verdict.as_ref().is_none_or(|v| verify_verdict(&pair, v));
        cert_ok && verdict_ok && is_h_normal(&pair) == self.h_normal
    }
}

struct Case {
    input: String,
    family: Option<Family>,
    k: Option<usize>,
    doc: PairDocument,
    pair: MatrixPair,
}

fn audit_case(case: &Case, seed: u64, budget: usize) -> AuditRecord {
    let start = Instant::now();
    let mut failures = Vec::new();
    let pair = &case.pair;
    let claims_witness = case.doc.witness_spec().is_some();

    let h_normal = is_h_normal(pair);
    if !h_normal {
        failures.push("not H-normal".to_string());
    }

    let report = if h_normal { classify(pair).ok() } else { None };
    let bound_ok = report.as_ref().is_some_and(|r| r.bound_ok);
    if let Some(r) = &report {
        let in_window = r.bound_window.is_none() || r.bound_ok;
        if (claims_witness && !r.bound_ok) || !in_window {
            failures.push(format!("bound check failed: n = {}, window {:?}", r.n, r.bound_window));
        }
        if let Some(expected) = case.doc.metadata.as_ref().and_then(|m| m.get("expected_case")) {
            if *expected != json!(r.case_label) {
                failures.push(format!("expected case {expected}, classified {}", r.case_label));
            }
        }
    }

    let certificate = if !h_normal {
        None
    } else {
        match case.doc.as_witness(pair) {
            Some(Ok(w)) => match certify_family(&w) {
                Ok(c) => Some(c),
                Err(e) => {
                    failures.push(e.to_string());
                    None
                }
            },
            Some(Err(e)) => {
                failures.push(e.to_string());
                None
            }
            None => certify_scalar_commutant(pair),
        }
    };
    let certificate_verified = certificate.as_ref().is_some_and(|c| verify_certificate(pair, c));
    if claims_witness && !certificate_verified && h_normal {
        failures.push("certificate did not verify".to_string());
    }

    let verdict = h_normal.then(|| search_decomposition(pair, budget, seed));
    if let Some(v) = &verdict {
        if !verify_verdict(pair, v) {
            failures.push("decomposition verdict did not verify".to_string());
        }
        if claims_witness && v.status == DecompositionStatus::Decomposable {
            failures.push("witness decomposed".to_string());
        }
    }

    AuditRecord {
        input: case.input.clone(),
        family: case.family,
        k: case.k,
        document: case.doc.clone(),
        h_normal,
        report,
        bound_ok,
        certificate_summary: certificate.as_ref().map(Certificate::summary),
        certificate,
        certificate_verified,
        verdict,
        seed,
        budget,
        passed: failures.is_empty(),
        failures,
        elapsed_ms: start.elapsed().as_millis() as u64,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
    }
}

fn selected_families(args: &AuditArgs) -> Result<Vec<Family>, CliError> {
    match &args.families {
        None => Ok(Family::ALL.to_vec()),
        Some(names) => names
            .iter()
            .map(|n| n.trim().parse::<Family>().map_err(|e| CliError::Input(e.to_string())))
            .collect(),
    }
}

pub(crate) fn run(
    args: &AuditArgs,
    seed: u64,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let families = selected_families(args)?;
    let mut cases = Vec::new();
    for &family in &families {
        for k in (1..=args.kmax).filter(|&k| family.admits(k)) {
            let w = WitnessSpec::default_for(family, k)
                .build()
                .map_err(|e| CliError::Input(format!("{family} k={k}: {e}")))?;
            cases.push(Case {
                input: format!("{family} k={k}"),
                family: Some(family),
                k: Some(k),
                doc: PairDocument::from_witness(&w),
                pair: w.pair,
            });
        }
    }
    for path in &args.extra {
        let (doc, pair) = load(path)?;
        let spec = doc.witness_spec().and_then(Result::ok);
        cases.push(Case {
            input: path.display().to_string(),
            family: spec.as_ref().map(|s| s.family),
            k: spec.as_ref().map(|s| s.k),
            doc,
            pair,
        });
    }
    if cases.is_empty() {
        let names: Vec<_> = families.iter().map(|f| f.cli_name()).collect();
        writeln!(
            err,
            "warning: no admissible (family, k) with k <= {} for families {}; nothing to audit",
            args.kmax,
            names.join(",")
        )?;
    }

    let records: Vec<AuditRecord> = cases.par_iter().map(|c| audit_case(c, seed, args.budget)).collect();

    if let Some(path) = &args.log {
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        for r in &records {
            writeln!(file, "{}", serde_json::to_string(r).expect("records serialize"))?;
        }
        file.flush()?;
    }

    let failed: Vec<&AuditRecord> = records.iter().filter(|r| !r.passed).collect();
    match format {
        Format::Pretty => {
            for r in &records {
                let case = r.report.as_ref().map_or("-".to_string(), |rep| rep.case_label.to_string());
                let cert = r.certificate_summary.as_deref().unwrap_or("no certificate");
                writeln!(
                    out,
                    "{} {:<16} n={:<3} {:<10} {} ({} ms)",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.input,
                    r.document.n,
                    case,
                    cert,
                    r.elapsed_ms
                )?;
            }
            writeln!(out, "{} cases, {} failed", records.len(), failed.len())?;
        }
        Format::Json => {
            let summary = json!({
                "cases": records.len(),
                "failed": failed.len(),
                "seed": seed,
                "budget": args.budget,
                "log": args.log.as_ref().map(|p| p.display().to_string()),
                "first_failure": failed.first().map(|r| json!({"input": r.input, "failures": r.failures})),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&summary).expect("summary serializes"))?;
        }
    }
    if let Some(first) = failed.first() {
        writeln!(err, "first failing record: {}: {}", first.input, first.failures.join("; "))?;
        return Ok(Outcome::Fail);
    }
    Ok(Outcome::Pass)
}
