use std::io::{Read, Write};
use std::path::Path;

use serde_json::{json, Value};

use krein_core::classify::{classify as classify_pair, reduce_augdec, reduce_pred1, CaseLabel, CanonicalReduction};
use krein_core::decompose::{certify_family, search_decomposition, verify_verdict, DecompositionStatus, DecompositionVerdict};
use krein_core::exact::{parse_rational, GaussianRational, Rational, RootValue};
use krein_core::indefinite::{is_h_normal, MatrixPair};
use krein_core::io::{parse_document, PairDocument};
use krein_core::witnesses::{Family, WitnessSpec};

use crate::{pretty, CliError, DecomposeArgs, Format, GenerateArgs, InputArgs, Outcome, ReduceArgs};

pub(crate) fn load(path: &Path) -> Result<(PairDocument, MatrixPair), CliError> {
    let name = path.display();
    let bytes = if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf)?;
        buf
    } else {
        std::fs::read(path).map_err(|e| CliError::Input(format!("{name}: {e}")))?
    };
    let doc = parse_document(&bytes).map_err(|e| CliError::Input(format!("{name}: {e}")))?;
    let pair = doc.to_pair().map_err(|e| CliError::Input(format!("{name}: {e}")))?;
    Ok((doc, pair))
}

fn scalar(flag: &str, text: &str) -> Result<GaussianRational, CliError> {
    text.parse().map_err(|_| CliError::Input(format!("--{flag} {text:?} is not an exact scalar")))
}

fn emit(out: &mut dyn Write, format: Format, value: &Value, text: impl FnOnce() -> String) -> Result<(), CliError> {
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(value).expect("json values serialize"))?,
        Format::Pretty => write!(out, "{}", text())?,
    }
    Ok(())
}

fn signature_json(sig: (usize, usize)) -> Value {
    json!([sig.0, sig.1])
}

pub(crate) fn generate(args: &GenerateArgs, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> Result<Outcome, CliError> {
    let family: Family = args.family.parse().map_err(|e: krein_core::witnesses::WitnessError| {
        let names: Vec<_> = Family::ALL.iter().map(|f| f.cli_name()).collect();
        CliError::Input(format!("{e}; expected one of {}", names.join(", ")))
    })?;
    let mut spec = WitnessSpec::default_for(family, args.k);
    let names = family.param_names();
    let flags = [
        ("lambda", &args.lambda),
        ("alpha", &args.alpha),
        ("beta", &args.beta),
        ("l1", &args.l1),
        ("l2", &args.l2),
        ("a1", &args.a1),
        ("b1", &args.b1),
        ("a2", &args.a2),
        ("b2", &args.b2),
    ];
    for (flag, value) in flags {
        let Some(text) = value else { continue };
        let Some(slot) = names.iter().position(|n| *n == flag) else {
            return Err(CliError::Input(format!(
                "--{flag} does not apply to family {family} (parameters: {})",
                names.join(", ")
            )));
        };
        spec.eigen_params[slot] = scalar(flag, text)?;
    }
    if let Some(r) = &args.r {
        if family != Family::ComplexAUpper {
            return Err(CliError::Input(format!("--r only applies to family a-upper, not {family}")));
        }
        let parsed = r
            .iter()
            .map(|s| parse_rational(s.trim()).map_err(|_| CliError::Input(format!("--r entry {s:?} is not rational"))))
            .collect::<Result<Vec<_>, _>>()?;
        spec.r_params = Some(parsed);
    }
    let w = spec.build().map_err(|e| CliError::Input(e.to_string()))?;
    let doc = PairDocument::from_witness(&w);
    let text = match format {
        Format::Json => doc.to_json() + "\n",
        Format::Pretty => pretty::document(&doc),
    };
    match &args.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            writeln!(err, "wrote {}", path.display())?;
        }
        None => write!(out, "{text}")?,
    }
    Ok(Outcome::Pass)
}

pub(crate) fn verify(args: &InputArgs, format: Format, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let mut outcome = Outcome::Pass;
    for path in &args.paths {
        let (doc, pair) = load(path)?;
        let sig = pair.space().signature();
        let normal = is_h_normal(&pair);
        let mut checks = vec![("h_normal", normal)];
        if let Some(meta) = &doc.metadata {
            if let Some(n) = meta.get("expected_n").and_then(Value::as_u64) {
                checks.push(("expected_n", n as usize == pair.dim()));
            }
            if let Some(s) = meta.get("expected_signature") {
                checks.push(("expected_signature", *s == signature_json(sig)));
            }
        }
        let passed = checks.iter().all(|(_, ok)| *ok);
        outcome = outcome.and(Outcome::from_bool(passed));
        let value = json!({
            "input": path.display().to_string(),
            "field": pair.field(),
            "n": pair.dim(),
            "signature": signature_json(sig),
            "k": pair.space().rank_v(),
            "checks": checks.iter().map(|(name, ok)| json!({"name": name, "passed": ok})).collect::<Vec<_>>(),
            "passed": passed,
        });
        emit(out, format, &value, || {
            let mut s = format!(
                "{}: n = {}, signature (neg, pos) = ({}, {}), k = {}\n",
                path.display(),
                pair.dim(),
                sig.0,
                sig.1,
                pair.space().rank_v()
            );
            for (name, ok) in &checks {
                s.push_str(&format!("  {} {name}\n", if *ok { "ok  " } else { "FAIL" }));
            }
            s
        })?;
    }
    Ok(outcome)
}

fn root_text(v: &RootValue) -> String {
    match v {
        RootValue::Exact(z) => z.to_string(),
        RootValue::Approx { re, im } => format!("~{re:.12}{im:+.12}i"),
    }
}

pub(crate) fn classify(args: &InputArgs, format: Format, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let mut outcome = Outcome::Pass;
    for path in &args.paths {
        let (doc, pair) = load(path)?;
        let input = path.display().to_string();
        let report = match classify_pair(&pair) {
            Ok(r) => r,
            Err(e) => {
                outcome = Outcome::Fail;
                let value = json!({"input": input, "error": e.to_string(), "passed": false});
                emit(out, format, &value, || format!("{input}: {e}\n"))?;
                continue;
            }
        };
        let mut failures = Vec::new();
        if report.bound_window.is_some() && !report.bound_ok {
            failures.push("n lies outside the size window".to_string());
        }
        let expected = doc.metadata.as_ref().and_then(|m| m.get("expected_case")).cloned();
        if let Some(e) = &expected {
            if *e != json!(report.case_label) {
                failures.push(format!("expected case {e}, found {}", report.case_label));
            }
        }
        let passed = failures.is_empty();
        outcome = outcome.and(Outcome::from_bool(passed));
        let mut value = serde_json::to_value(&report).expect("report serializes");
        value["input"] = json!(input);
        value["failures"] = json!(failures);
        value["passed"] = json!(passed);
        emit(out, format, &value, || {
            let spectrum: Vec<String> = report
                .eigenvalues
                .iter()
                .map(|r| format!("{} (x{})", root_text(&r.value), r.multiplicity))
                .collect();
            let window = report.bound_window.map_or("none".to_string(), |(a, b)| format!("[{a}, {b}]"));
            let mut s = format!(
                "{input}\n  field {:?}, n = {}, k = {}, signature ({}, {})\n  spectrum: {}\n  case: {}\n  window: {window}, bound_ok = {}\n",
                report.field, report.n, report.k, report.signature.0, report.signature.1,
                spectrum.join(", "), report.case_label, report.bound_ok
            );
            for note in report.notes.iter().chain(&failures) {
                s.push_str(&format!("  note: {note}\n"));
            }
            s
        })?;
    }
    Ok(outcome)
}

/// Search first; a pair that carries witness metadata also gets its family
/// certificate when the search is inconclusive.
pub(crate) fn decide(doc: &PairDocument, pair: &MatrixPair, budget: usize, seed: u64) -> DecompositionVerdict {
    let mut verdict = search_decomposition(pair, budget, seed);
    if verdict.status == DecompositionStatus::Unknown {
        if let Some(Ok(w)) = doc.as_witness(pair) {
            if let Ok(cert) = certify_family(&w) {
                verdict.status = DecompositionStatus::Indecomposable;
                verdict.certificate = Some(cert);
            }
        }
    }
    verdict
}

pub(crate) fn decompose(args: &DecomposeArgs, seed: u64, format: Format, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let mut outcome = Outcome::Pass;
    for path in &args.paths {
        let (doc, pair) = load(path)?;
        let input = path.display().to_string();
        if !is_h_normal(&pair) {
            outcome = Outcome::Fail;
            let value = json!({"input": input, "error": "pair is not H-normal", "passed": false});
            emit(out, format, &value, || format!("{input}: pair is not H-normal\n"))?;
            continue;
        }
        let verdict = decide(&doc, &pair, args.budget, seed);
        let verified = verify_verdict(&pair, &verdict);
        let claims_witness = doc.witness_spec().is_some();
        let passed = verified && !(claims_witness && verdict.status == DecompositionStatus::Decomposable);
        outcome = outcome.and(Outcome::from_bool(passed));
        let value = json!({
            "input": input,
            "seed": seed,
            "budget": args.budget,
            "verdict": verdict,
            "certificate_summary": verdict.certificate.as_ref().map(|c| c.summary()),
            "verified": verified,
            "passed": passed,
        });
        emit(out, format, &value, || {
            let mut s = format!("{input}: {:?} after {} samples (seed {seed})\n", verdict.status, verdict.samples);
            if let Some(c) = &verdict.certificate {
                s.push_str(&format!("  certificate: {}\n", c.summary()));
            }
            if let Some(vs) = &verdict.witness_subspace {
                s.push_str("  reducing subspace basis:\n");
                for v in vs {
                    let cells: Vec<String> = v.iter().map(ToString::to_string).collect();
                    s.push_str(&format!("    [{}]\n", cells.join(", ")));
                }
            }
            if claims_witness && verdict.status == DecompositionStatus::Decomposable {
                s.push_str("  FAIL: document claims an indecomposable witness\n");
            }
            s
        })?;
    }
    Ok(outcome)
}

enum Method {
    Single(GaussianRational),
    Rotation(Rational, Rational),
}

/// Eigenvalue parameters for `reduce`: flags first, else a lone exact
/// eigenvalue (or conjugate pair for real case C) from the spectrum.
fn reduce_method(args: &ReduceArgs, pair: &MatrixPair) -> Result<Method, CliError> {
    match (&args.lambda, &args.alpha, &args.beta) {
        (Some(l), None, None) => return Ok(Method::Single(scalar("lambda", l)?)),
        (None, Some(a), Some(b)) => {
            let a = parse_rational(a).map_err(|_| CliError::Input(format!("--alpha {a:?} is not rational")))?;
            let b = parse_rational(b).map_err(|_| CliError::Input(format!("--beta {b:?} is not rational")))?;
            return Ok(Method::Rotation(a, b));
        }
        (None, None, None) => {}
        _ => return Err(CliError::Input("pass either --lambda or both --alpha and --beta".into())),
    }
    let report = classify_pair(pair).map_err(|e| CliError::Input(format!("cannot infer eigenvalue: {e}")))?;
    let exact: Vec<_> = report.eigenvalues.iter().filter_map(|r| r.value.as_exact()).collect();
    match (report.case_label, exact.as_slice()) {
        (CaseLabel::ComplexA | CaseLabel::RealA, [z]) => Ok(Method::Single((*z).clone())),
        (CaseLabel::RealC, [a, b]) => {
            let z = if b.im > a.im { b } else { a };
            Ok(Method::Rotation(z.re.clone(), z.im.clone()))
        }
        _ => Err(CliError::Input(
            "spectrum is not a single exact eigenvalue or conjugate pair; pass --lambda or --alpha/--beta".into(),
        )),
    }
}

fn reduction_text(input: &str, red: &CanonicalReduction) -> String {
    let (s, m, _) = red.block_dims;
    let cuts = [s, s + m];
    let mut text = format!("{input}: block dims (S0, S, S1) = {:?}\n", red.block_dims);
    text.push_str("reduced N =\n");
    text.push_str(&pretty::matrix(&red.reduced_n, &cuts));
    text.push_str("reduced H =\n");
    text.push_str(&pretty::matrix(&red.reduced_h, &cuts));
    text.push_str("transform =\n");
    text.push_str(&pretty::matrix(&red.transform, &[]));
    text
}

pub(crate) fn reduce(args: &ReduceArgs, format: Format, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let mut outcome = Outcome::Pass;
    for path in &args.paths {
        let (_, pair) = load(path)?;
        let input = path.display().to_string();
        let method = reduce_method(args, &pair)?;
        let result = match &method {
            Method::Single(l) => reduce_pred1(&pair, l),
            Method::Rotation(a, b) => reduce_augdec(&pair, a, b),
        };
        match result {
            Ok(red) => {
                let (n, h) = red.round_trip();
                let round_trip = &n == pair.n_op() && &h == pair.h();
                outcome = outcome.and(Outcome::from_bool(round_trip));
                let mut value = serde_json::to_value(&red).expect("reduction serializes");
                value["input"] = json!(input);
                value["round_trip"] = json!(round_trip);
                value["passed"] = json!(round_trip);
                emit(out, format, &value, || reduction_text(&input, &red))?;
            }
            Err(e) => {
                outcome = Outcome::Fail;
                let value = json!({"input": input, "error": e.to_string(), "passed": false});
                emit(out, format, &value, || format!("{input}: {e}\n"))?;
            }
        }
    }
    Ok(outcome)
}
