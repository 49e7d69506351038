//! Exit codes, reports and golden files of the command-line tool.

use std::path::Path;
use std::process::{Command, Output};

use dyntwist::cli::ReportDocument;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dyntwist"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn p(dir: &Path, f: &str) -> String {
    dir.join(f).display().to_string()
}

fn example(dir: &Path, name: &str) {
    let out = run(&["example", name, "--out-dir", dir.to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

fn twist(dir: &Path, prefix: &str) {
    let out = run(&[
        "compute-twist",
        &p(dir, &format!("{prefix}_datum.json")),
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("tests/golden")
            .join(name),
    )
    .unwrap()
}

#[test]
fn twist_files_match_golden() {
    let dir = tempfile::tempdir().unwrap();
    for (name, prefix) in [("E0", "e0"), ("E1", "e1")] {
        example(dir.path(), name);
        assert_eq!(
            std::fs::read_to_string(dir.path().join(format!("{prefix}_datum.json"))).unwrap(),
            golden(&format!("{prefix}_datum.json"))
        );
        twist(dir.path(), prefix);
        assert_eq!(
            std::fs::read_to_string(dir.path().join(format!("{prefix}_twist.json"))).unwrap(),
            golden(&format!("{prefix}_twist.json"))
        );
    }
}

#[test]
fn golden_datum_reproduces_golden_twist() {
    let dir = tempfile::tempdir().unwrap();
    let datum = dir.path().join("e1_datum.json");
    std::fs::write(&datum, golden("e1_datum.json")).unwrap();
    twist(dir.path(), "e1");
    assert_eq!(
        std::fs::read_to_string(dir.path().join("e1_twist.json")).unwrap(),
        golden("e1_twist.json")
    );
}

#[test]
fn trivial_twist_verifies() {
    let dir = tempfile::tempdir().unwrap();
    example(dir.path(), "E1");
    twist(dir.path(), "e1");
    let text = std::fs::read_to_string(dir.path().join("e1_twist.json")).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    doc["coeffs"] = serde_json::json!([[0, 0, 0, "1"]]);
    std::fs::write(dir.path().join("trivial_twist.json"), doc.to_string()).unwrap();
    let out = run(&[
        "verify",
        "twist",
        &p(dir.path(), "e1_hopf.json"),
        &p(dir.path(), "e1_base.json"),
        &p(dir.path(), "trivial_twist.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn failing_check_exits_one_and_reports_residuals() {
    let dir = tempfile::tempdir().unwrap();
    example(dir.path(), "E1");
    twist(dir.path(), "e1");
    let text = std::fs::read_to_string(dir.path().join("e1_twist.json")).unwrap();
    std::fs::write(
        dir.path().join("bad.json"),
        text.replacen("\"-1/2\"", "\"-1/3\"", 1),
    )
    .unwrap();
    let report = dir.path().join("report.json");
    let out = run(&[
        "verify",
        "twist",
        &p(dir.path(), "e1_hopf.json"),
        &p(dir.path(), "e1_base.json"),
        &p(dir.path(), "bad.json"),
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let doc: ReportDocument =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(doc.command, "verify twist");
    assert_eq!(doc.inputs.len(), 3);
    assert!(doc.checks.iter().any(|c| c.residual_nonzero_count > 0));
    for c in &doc.checks {
        assert_eq!(
            c.residual_nonzero_count == 0,
            c.status == dyntwist::report::Status::Pass,
            "{}",
            c.name
        );
    }
}

#[test]
fn malformed_scalar_is_an_input_error_with_location() {
    let dir = tempfile::tempdir().unwrap();
    example(dir.path(), "E0");
    let text = std::fs::read_to_string(dir.path().join("e0_hopf.json")).unwrap();
    std::fs::write(
        dir.path().join("bad.json"),
        text.replacen("\"-1\"", "\"1/0\"", 1),
    )
    .unwrap();
    let out = run(&["verify", "hopf", &p(dir.path(), "bad.json")]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    // "<path>: hopf: <field>[<entry>]: …"
    let at = err.split("hopf: ").nth(1).unwrap_or("");
    assert!(
        err.contains("bad.json") && at.contains("]:") && at.contains('['),
        "{err}"
    );
}

#[test]
fn malformed_json_reports_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.json"), "{\n  \"order\": 2,\n  oops\n}").unwrap();
    let out = run(&["verify", "hopf", &p(dir.path(), "bad.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn overlapping_b_fails_before_the_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let datum = golden("e1_datum.json").replace("\"B\": [0,1]", "\"B\": [0,2]");
    std::fs::write(dir.path().join("x_datum.json"), datum).unwrap();
    let out = run(&[
        "compute-twist",
        &p(dir.path(), "x_datum.json"),
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("B ∩ ⟨g⟩"));
    assert!(!dir.path().join("x_twist.json").exists());
}

#[test]
fn custom_example_checks_the_field_order() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = run(&[
        "example",
        "custom",
        "--n",
        "3",
        "--lambda-root",
        "zeta3",
        "--order",
        "2",
        "--out-dir",
        d,
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("divisible by 3"));
    let out = run(&[
        "example",
        "custom",
        "--n",
        "3",
        "--lambda-root",
        "zeta3",
        "--out-dir",
        d,
    ]);
    assert_eq!(out.status.code(), Some(0));
    twist(dir.path(), "custom");
}

#[test]
fn stab_and_twisted_galois_commands() {
    let dir = tempfile::tempdir().unwrap();
    example(dir.path(), "E1");
    twist(dir.path(), "e1");
    let out = run(&[
        "stab",
        &p(dir.path(), "e1_hopf.json"),
        &p(dir.path(), "e1_comodule.json"),
        &p(dir.path(), "e1_t1.json"),
        &p(dir.path(), "e1_t1.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("(4 = 4)"));
    let out = run(&[
        "twisted-galois",
        &p(dir.path(), "e1_hopf.json"),
        &p(dir.path(), "e1_base.json"),
        &p(dir.path(), "e1_twist.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn mismatched_reference_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    example(dir.path(), "E0");
    example(dir.path(), "E1");
    let out = run(&[
        "verify",
        "comodule",
        &p(dir.path(), "e0_hopf.json"),
        &p(dir.path(), "e1_comodule.json"),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("does not match"));
}

#[test]
fn size_cap_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    example(dir.path(), "E1");
    let out = Command::new(env!("CARGO_BIN_EXE_dyntwist"))
        .args([
            "compute-twist",
            &p(dir.path(), "e1_datum.json"),
            "--out-dir",
            dir.path().to_str().unwrap(),
        ])
        .env("DYNTWIST_MAX_DIM", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("size cap"));
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    example(dir.path(), "E1");
    let mut texts = Vec::new();
    for i in 0..2 {
        let report = dir.path().join(format!("r{i}.json"));
        let out = run(&[
            "compute-twist",
            &p(dir.path(), "e1_datum.json"),
            "--out-dir",
            dir.path().to_str().unwrap(),
            "--report",
            report.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        texts.push(std::fs::read(report).unwrap());
    }
    assert_eq!(texts[0], texts[1]);
}
