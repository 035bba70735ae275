//! End-to-end CLI tests: output formats, determinism, exit codes.

use std::process::Command;

fn flatlab(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_flatlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = flatlab(args);
    assert!(
        out.status.success(),
        "flatlab {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn seq_grs_binary_prefix() {
    let out = stdout(&["seq", "--source", "grs-binary", "--count", "8"]);
    assert_eq!(out, "1,1,1,-1,1,1,-1,1\n");
}

#[test]
fn seq_legendre_mod_7() {
    let out = stdout(&["seq", "--source", "legendre", "--p", "7"]);
    assert_eq!(out, "0,1,1,-1,1,-1,-1\n");
}

#[test]
fn seq_zero_count_is_usage_error() {
    let out = flatlab(&["seq", "--source", "grs-binary", "--count", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn seq_unknown_source_is_usage_error() {
    let out = flatlab(&["seq", "--source", "nonsense", "--count", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn poly_fekete_7_csv() {
    let out = stdout(&["poly", "--family", "fekete", "--p", "7"]);
    assert_eq!(
        out,
        "index,coefficient\n0,0\n1,1\n2,1\n3,-1\n4,1\n5,-1\n6,-1\n"
    );
}

#[test]
fn poly_json_has_family_and_degree() {
    let out = stdout(&["--format", "json", "poly", "--family", "rs-p", "--stage", "2"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["family"], "rudin-shapiro-p");
    assert_eq!(v["degree"], 3);
    assert_eq!(v["coefficients"], serde_json::json!([1, 1, 1, -1]));
}

#[test]
fn norms_rs_stage1_alpha4() {
    // ||X_1||_4 = (3/2)^{1/4}.
    let out = stdout(&["norms", "--family", "rs", "--stage", "1", "--alpha", "4"]);
    let line = out.lines().nth(1).unwrap();
    let value: f64 = line.split(',').nth(3).unwrap().parse().unwrap();
    assert!((value - 1.5f64.powf(0.25)).abs() < 1e-7, "{line}");
}

#[test]
fn norms_rs_stage0_alpha1_is_one() {
    let out = stdout(&["norms", "--family", "rs", "--stage", "0", "--alpha", "1"]);
    let line = out.lines().nth(1).unwrap();
    let value: f64 = line.split(',').nth(3).unwrap().parse().unwrap();
    assert!((value - 1.0).abs() < 1e-12, "{line}");
}

#[test]
fn norms_mahler_alpha0() {
    let out = stdout(&["norms", "--family", "fekete", "--p", "7", "--alpha", "0"]);
    let line = out.lines().nth(1).unwrap();
    let value: f64 = line.split(',').nth(3).unwrap().parse().unwrap();
    assert!(value > 0.0 && value < 1.0, "{line}");
}

#[test]
fn correlate_exact_table() {
    let out = stdout(&["correlate", "--source", "grs-recurrence", "--count", "4"]);
    // R_2 = P_2: c = [4, 1, 0, -1], E = 2, F = 4.
    assert!(out.contains("0,4\n1,1\n2,0\n3,-1\n"), "{out}");
    assert!(out.contains("energy,2\n"), "{out}");
    assert!(out.contains("merit_factor,4/1\n"), "{out}");
    assert!(out.contains("l4_fourth_normalized,5/4\n"), "{out}");
}

#[test]
fn merit_table_grs() {
    let out = stdout(&["merit", "--family", "grs", "--sizes", "4,16,64"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("grs,4,4/1,"), "{}", lines[1]);
}

#[test]
fn verify_single_statement_json() {
    let out = stdout(&[
        "--format",
        "json",
        "verify",
        "--only",
        "thm-l4",
        "--max-stage",
        "12",
    ]);
    let v: serde_json::Value = serde_json::from_str(out.lines().next().unwrap()).unwrap();
    assert_eq!(v["statement_id"], "thm-l4");
    assert_eq!(v["passed"], true);
    assert_eq!(v["asserted"], true);
}

#[test]
fn verify_singer_open_is_report_only() {
    let out = flatlab(&["--format", "json", "verify", "--only", "singer-open"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let v: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(v["asserted"], false);
}

#[test]
fn verify_unknown_statement_is_usage_error() {
    let out = flatlab(&["verify", "--only", "no-such-statement"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scan_is_byte_deterministic() {
    let args = [
        "scan",
        "--family",
        "rs",
        "--stages",
        "1,2,3",
        "--alpha",
        "1,4",
    ];
    let a = stdout(&args);
    let b = stdout(&args);
    assert_eq!(a, b);
    assert!(a.starts_with("family,stage_or_p,alpha,value,error\n"), "{a}");
    assert_eq!(a.lines().count(), 7);
}

#[test]
fn out_file_matches_stdout_payload() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("seq.csv");
    let out = flatlab(&[
        "--out",
        path.to_str().unwrap(),
        "seq",
        "--source",
        "grs-recurrence",
        "--count",
        "16",
    ]);
    assert!(out.status.success());
    let from_file = std::fs::read_to_string(&path).unwrap();
    let from_stdout = stdout(&["seq", "--source", "grs-recurrence", "--count", "16"]);
    assert_eq!(from_file, from_stdout);
    // The checksum line goes to stdout when --out is used.
    assert!(String::from_utf8_lossy(&out.stdout).contains("checksum"));
}

#[test]
fn threads_flag_does_not_change_output() {
    let base = stdout(&["norms", "--family", "rs", "--stage", "8", "--alpha", "1,4"]);
    let capped = stdout(&[
        "--threads",
        "1",
        "norms",
        "--family",
        "rs",
        "--stage",
        "8",
        "--alpha",
        "1,4",
    ]);
    assert_eq!(base, capped);
}

#[test]
fn resource_limit_exit_code() {
    let out = flatlab(&["poly", "--family", "rs-p", "--stage", "40"]);
    assert_eq!(out.status.code(), Some(3));
}
