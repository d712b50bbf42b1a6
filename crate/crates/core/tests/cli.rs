//! End-to-end tests of the command-line interface: exit codes, output
//! determinism, JSON round trips.

use std::process::Command;

fn casimir(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_casimir"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn describe_reports_construction_facts() {
    let out = casimir(&["describe", "--pair", "A1:switch"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("dim g = 6, dim k = 3, dim p = 3"));
    assert!(text.contains("simple affine roots (2)"));

    let out = casimir(&["describe", "--pair", "A1:signs=-"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("dim k = 1, dim p = 2"));
}

#[test]
fn parse_errors_exit_with_code_two() {
    let out = casimir(&["describe", "--pair", "Z9:switch"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("error"));

    let out = casimir(&["verify", "--pair", "A1:switch", "--which", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));

    // missing involution separator
    let out = casimir(&["describe", "--pair", "A2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_all_passes_on_small_pairs() {
    for pair in ["A1:switch", "A1:signs=-"] {
        let out = casimir(&[
            "verify", "--pair", pair, "--which", "all", "--pmax", "3", "--smax", "2",
        ]);
        assert_eq!(out.status.code(), Some(0), "{pair}");
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.contains("overall: pass"), "{pair}");
    }
}

#[test]
fn verify_garland_only() {
    let out = casimir(&[
        "verify",
        "--pair",
        "A1:signs=-",
        "--which",
        "garland",
        "--pmax",
        "3",
        "--smax",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn negative_control_fails_and_exits_one() {
    let out = casimir(&[
        "verify",
        "--pair",
        "A1:switch",
        "--which",
        "garland",
        "--pmax",
        "3",
        "--smax",
        "2",
        "--negative-control",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL"));
    assert!(text.contains("residual"));
}

#[test]
fn abelian_peterson_verdicts() {
    let out = casimir(&["abelian", "--pair", "A2:switch"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("total: 4"));
    assert!(text.contains("Peterson count: 4 = 2^2"));

    let out = casimir(&["abelian", "--pair", "A3:switch"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("total: 8"));

    // non-adjoint pairs get no Peterson verdict
    let out = casimir(&["abelian", "--pair", "A1:signs=-"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("total: 3"));
    assert!(!text.contains("Peterson"));
}

#[test]
fn json_output_round_trips_and_is_deterministic() {
    let args = [
        "verify",
        "--pair",
        "A1:switch",
        "--which",
        "all",
        "--pmax",
        "2",
        "--smax",
        "2",
        "--format",
        "json",
    ];
    let out1 = casimir(&args);
    let out2 = casimir(&args);
    assert!(out1.status.success());
    assert_eq!(
        out1.stdout, out2.stdout,
        "identical config, identical bytes"
    );
    let v: serde_json::Value = serde_json::from_slice(&out1.stdout).unwrap();
    assert_eq!(v["pass"], true);
    // round trip
    let text = serde_json::to_string(&v).unwrap();
    let back: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(back, v);
}

#[test]
fn spectrum_rows() {
    let out = casimir(&["spectrum", "--pair", "A1:switch", "--pmax", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("p = 1: dim = 3, max scalar = 1/2, bound p/2 = 1/2"));
    assert!(text.contains("p = 0: dim = 1, max scalar = 0, bound p/2 = 0"));
    // p = 2 on sl2 stays below the bound and has no witness
    assert!(text.contains("p = 2: dim = 3, max scalar = 1/2, bound p/2 = 1, witnesses: none"));
}

#[test]
fn jobs_flag_gives_identical_output() {
    let base = [
        "verify",
        "--pair",
        "A1:signs=-",
        "--which",
        "garland",
        "--pmax",
        "3",
        "--smax",
        "3",
        "--format",
        "json",
    ];
    let out1 = casimir(&base);
    let mut with_jobs: Vec<&str> = base.to_vec();
    with_jobs.extend(["--jobs", "4"]);
    let out2 = casimir(&with_jobs);
    assert_eq!(out1.stdout, out2.stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join("casimir-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = casimir(&[
        "abelian",
        "--pair",
        "A1:switch",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let contents = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&contents).unwrap();
    assert_eq!(v["count"], 2);
    std::fs::remove_file(&path).unwrap();
}
