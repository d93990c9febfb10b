use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

use krein_cli::audit::AuditRecord;
use krein_core::exact::{FieldKind, Matrix};
use krein_core::indefinite::MatrixPair;
use krein_core::io::PairDocument;
use krein_core::witnesses::{witness_complex_b, Family, WitnessSpec};
use krein_core::GaussianRational;

fn krein(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_krein")).args(args).env_remove("KREIN_SEED").output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write_doc(dir: &Path, name: &str, doc: &PairDocument) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, doc.to_json()).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_b_matches_library_witness() {
    let out = krein(&["generate", "--family", "b", "--k", "2", "--l1", "0", "--l2", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: PairDocument = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc.n, 4);
    let pair = doc.to_pair().unwrap();
    let w = witness_complex_b(2, &GaussianRational::zero(), &GaussianRational::one()).unwrap();
    assert_eq!(pair.n_op(), w.pair.n_op());
    assert_eq!(pair.h(), w.pair.h());
}

#[test]
fn generate_rejects_odd_k_for_d() {
    let out = krein(&["generate", "--family", "d", "--k", "3", "--lambda", "0", "--alpha", "0", "--beta", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("possible only if k is even"));
}

#[test]
fn generate_a_upper_default_r() {
    let out = krein(&["generate", "--family", "a-upper", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["metadata"]["r"], serde_json::json!(["4/5"]));
    assert_eq!(v["metadata"]["expected_signature"], serde_json::json!([1, 3]));
}

#[test]
fn generate_flag_errors_exit_two() {
    for args in [
        vec!["generate", "--family", "z", "--k", "1"],
        vec!["generate", "--family", "b", "--k", "1", "--alpha", "0"],
        vec!["generate", "--family", "b", "--k", "1", "--l1", "x"],
        vec!["generate", "--family", "a-upper", "--k", "2", "--r", "4/5,4/5"],
        vec!["generate", "--family", "b", "--k", "1", "--l1", "1", "--l2", "1"],
        vec!["generate", "--family", "b"],
        vec!["frobnicate"],
    ] {
        assert_eq!(krein(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn generate_negative_and_complex_params() {
    let out = krein(&["generate", "--family", "a-lower", "--k", "2", "--lambda", "-1/2+i"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout_json(&out)["metadata"]["params"]["lambda"], "-1/2+i");
}

#[test]
fn generate_to_file_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let out = krein(&["generate", "--family", "c-odd", "--k", "3", "--out", s(&path)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let out = krein(&["verify", s(&path)]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["signature"], serde_json::json!([3, 3]));
    assert_eq!(v["passed"], true);
}

#[test]
fn verify_every_generated_witness() {
    let dir = tempfile::tempdir().unwrap();
    for family in Family::ALL {
        for k in (1..=3).filter(|&k| family.admits(k)) {
            let w = WitnessSpec::default_for(family, k).build().unwrap();
            let p = write_doc(dir.path(), &format!("{family}-{k}.json"), &PairDocument::from_witness(&w));
            assert_eq!(krein(&["verify", s(&p)]).status.code(), Some(0), "{family} k={k}");
        }
    }
}

#[test]
fn verify_fails_on_non_normal_pair() {
    let dir = tempfile::tempdir().unwrap();
    let pair = MatrixPair::new(Matrix::from_ints(&[&[1, 1], &[0, 1]]), Matrix::identity(2, FieldKind::Real)).unwrap();
    let p = write_doc(dir.path(), "jordan.json", &PairDocument::from_pair(&pair, None));
    assert_eq!(krein(&["verify", s(&p)]).status.code(), Some(1));
    assert_eq!(krein(&["classify", s(&p)]).status.code(), Some(1));
    assert_eq!(krein(&["decompose", s(&p)]).status.code(), Some(1));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"schema_version": "1", "field": "real", "n": 2, "N": [["0","1"],["0","0"]], "H": [["0","1"],["2","0"]]}"#,
    )
    .unwrap();
    let out = krein(&["verify", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("H[0][1]"));
    assert_eq!(krein(&["classify", s(&dir.path().join("missing.json"))]).status.code(), Some(2));
}

#[test]
fn classify_three_eigenvalues_definite() {
    let dir = tempfile::tempdir().unwrap();
    let pair = MatrixPair::new(
        Matrix::from_ints(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]),
        Matrix::identity(3, FieldKind::Complex),
    )
    .unwrap();
    let p = write_doc(dir.path(), "diag.json", &PairDocument::from_pair(&pair, None));
    let out = krein(&["classify", s(&p)]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["case_label"], "OutOfTheoremScope");
    assert!(!v["notes"].as_array().unwrap().is_empty());
}

#[test]
fn classify_reports_case_and_window() {
    let dir = tempfile::tempdir().unwrap();
    let w = WitnessSpec::default_for(Family::RealE, 2).build().unwrap();
    let p = write_doc(dir.path(), "e.json", &PairDocument::from_witness(&w));
    let out = krein(&["classify", s(&p)]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["case_label"], "RealE");
    assert_eq!(v["bound_window"], serde_json::json!([4, 4]));
    let out = krein(&["--format", "pretty", "classify", s(&p)]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("case: RealE"));
}

#[test]
fn decompose_glued_b_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let g = GaussianRational::from_int;
    let pair = witness_complex_b(1, &g(0), &g(1)).unwrap().pair.direct_sum(&witness_complex_b(1, &g(2), &g(3)).unwrap().pair);
    let p = write_doc(dir.path(), "glued.json", &PairDocument::from_pair(&pair, None));
    let out = krein(&["decompose", s(&p), "--budget", "200", "--seed", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["verdict"]["status"], "Decomposable");
    assert_eq!(v["verdict"]["witness_subspace"].as_array().unwrap().len(), 2);
    assert_eq!(v["seed"], 5);
}

#[test]
fn decompose_witness_gets_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let w = WitnessSpec::default_for(Family::ComplexALower, 2).build().unwrap();
    let p = write_doc(dir.path(), "a.json", &PairDocument::from_witness(&w));
    let out = krein(&["decompose", s(&p)]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["verdict"]["status"], "Indecomposable");
    assert_eq!(v["verdict"]["certificate"]["kind"], "JordanChainUnique");
}

#[test]
fn seed_env_var_is_used() {
    let dir = tempfile::tempdir().unwrap();
    let pair = MatrixPair::new(Matrix::from_ints(&[&[1, 0], &[0, 2]]), Matrix::identity(2, FieldKind::Real)).unwrap();
    let p = write_doc(dir.path(), "d.json", &PairDocument::from_pair(&pair, None));
    let bin = env!("CARGO_BIN_EXE_krein");
    let out = Command::new(bin).args(["decompose", s(&p)]).env("KREIN_SEED", "77").output().unwrap();
    assert_eq!(stdout_json(&out)["seed"], 77);
    let out = Command::new(bin).args(["decompose", s(&p), "--seed", "3"]).env("KREIN_SEED", "77").output().unwrap();
    assert_eq!(stdout_json(&out)["seed"], 3);
    let out = Command::new(bin).args(["decompose", s(&p)]).env("KREIN_SEED", "abc").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&krein(&["decompose", s(&p)]))["seed"], 20_240_601);
}

#[test]
fn reduce_with_flags_and_inferred() {
    let dir = tempfile::tempdir().unwrap();
    let w = WitnessSpec::default_for(Family::ComplexAUpper, 1).build().unwrap();
    let p = write_doc(dir.path(), "u.json", &PairDocument::from_witness(&w));
    let out = krein(&["reduce", s(&p), "--lambda", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["block_dims"], serde_json::json!([1, 2, 1]));
    assert_eq!(v["round_trip"], true);
    assert_eq!(krein(&["reduce", s(&p)]).status.code(), Some(0));
    assert_eq!(krein(&["reduce", s(&p), "--lambda", "1"]).status.code(), Some(1));
    assert_eq!(krein(&["reduce", s(&p), "--alpha", "1"]).status.code(), Some(2));

    let w = WitnessSpec::default_for(Family::RealCEven, 2).build().unwrap();
    let p = write_doc(dir.path(), "c.json", &PairDocument::from_witness(&w));
    let out = krein(&["--format", "pretty", "reduce", s(&p), "--alpha", "0", "--beta", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("block dims"));
    assert_eq!(krein(&["reduce", s(&p)]).status.code(), Some(0));
}

#[test]
fn audit_empty_admissible_set_warns() {
    let out = krein(&["audit", "--kmax", "1", "--families", "d"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn audit_log_is_reverifiable() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("log.jsonl");
    let out = krein(&["audit", "--kmax", "2", "--families", "b,c-even,e", "--log", s(&log)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&log).unwrap();
    let records: Vec<AuditRecord> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), 4);
    assert!(records.iter().all(|r| r.passed && r.reverify() && r.certificate_verified));
    assert_eq!(stdout_json(&out)["cases"], 4);

    // Appends rather than truncates.
    krein(&["audit", "--kmax", "1", "--families", "b", "--log", s(&log)]);
    assert_eq!(std::fs::read_to_string(&log).unwrap().lines().count(), 5);
}

#[test]
fn audit_tampered_extra_fails() {
    let dir = tempfile::tempdir().unwrap();
    let w = WitnessSpec::default_for(Family::ComplexALower, 2).build().unwrap();
    let mut doc = PairDocument::from_witness(&w);
    doc.n_op[0][1] = "7".to_string();
    let p = write_doc(dir.path(), "tampered.json", &doc);
    let out = krein(&["audit", "--kmax", "1", "--families", "b", "--extra", s(&p)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("tampered.json"));

    let clean = write_doc(dir.path(), "clean.json", &PairDocument::from_witness(&w));
    let out = krein(&["audit", "--kmax", "1", "--families", "b", "--extra", s(&clean)]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn pretty_generate_shows_blocks() {
    let out = krein(&["--format", "pretty", "generate", "--family", "a-lower", "--k", "2"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("N =") && text.contains('|'));
}

#[test]
fn in_process_run_matches_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = krein_cli::run(["krein", "generate", "--family", "b", "--k", "1"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(out, krein(&["generate", "--family", "b", "--k", "1"]).stdout);
}
