//! Subprocess tests for the CLI: exit codes, flag handling, and output
//! content for each subcommand.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mlat"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    let output = cmd.output().expect("failed to run mlat");
    (
        output.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&output.stdout).to_string(),
        String::from_utf8_lossy(&output.stderr).to_string(),
    )
}

#[test]
fn help_prints_usage() {
    let (code, stdout, _) = run(&["help"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("USAGE:"));
    assert!(stdout.contains("mlat verify"));
}

#[test]
fn no_arguments_shows_usage_and_fails() {
    let (code, stdout, _) = run(&[]);
    assert_eq!(code, 2);
    assert!(stdout.contains("USAGE:"));
}

#[test]
fn unknown_command_is_an_error() {
    let (code, _, stderr) = run(&["frobnicate"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown command"));
}

#[test]
fn verify_section_census_passes() {
    let (code, stdout, _) = run(&["verify", "--section", "census"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("census/total subloops: 1045"));
    assert!(stdout.contains("checks passed"));
}

#[test]
fn verify_unknown_section_is_an_error() {
    let (code, _, stderr) = run(&["verify", "--section", "bogus"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown section"));
    assert!(stderr.contains("table1"), "error lists the known sections");
}

#[test]
fn table1_csv_matches_embedded_fixture() {
    let (code, stdout, _) = run(&["table1", "--csv"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, include_str!("../fixtures/table1.csv"));
}

#[test]
fn table1_grid_contains_blank_cells() {
    let (code, stdout, _) = run(&["table1"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("a\\b"));
    // The grid has two lines per vector row plus the header.
    assert_eq!(stdout.lines().count(), 17);
}

#[test]
fn constants_c2_in_s3() {
    let (code, stdout, _) = run(&["constants", "--sub", "C2", "--sup", "S3"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("l[C2:S3] = 3"));
    assert!(stdout.contains("l[S3:C] = 336"));
    assert!(stdout.contains("l_iso[C2:S3:C] = 16"));
}

#[test]
fn constants_e4_plus_in_ma4() {
    let (code, stdout, _) = run(&["constants", "--sub", "E4+", "--sup", "MA4"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("l_iso[E4+:M(A4):C] = 7"));
}

#[test]
fn constants_c3_in_c3() {
    let (code, stdout, _) = run(&["constants", "--sub", "C3", "--sup", "C3"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("l[C3:C3] = 1"));
}

#[test]
fn constants_accepts_element_lists() {
    let (code, stdout, _) = run(&["constants", "--sub", "x0,u2", "--sup", "E8"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("sub = E4-"));
    assert!(stdout.contains("l_iso[E4-:E8:C] = 1"));
}

#[test]
fn constants_csv_dumps_full_table() {
    let (code, stdout, _) = run(&["constants", "--csv"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("sub_type,sup_type,sub_orbit,sup_orbit,l_glb,l_iso,l_orb"));
    assert!(stdout.contains("E4,M(A4),E4+,M(A4),19,7,7"));
    assert!(stdout.contains("E4,M(A4),E4-,M(A4),19,3,3"));
}

#[test]
fn constants_rejects_unknown_type() {
    let (code, _, stderr) = run(&["constants", "--sub", "C2", "--sup", "Q8"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown type"));
}

#[test]
fn orbits_lists_ten_rows() {
    let (code, stdout, _) = run(&["orbits"]);
    assert_eq!(code, 0);
    assert_eq!(
        stdout.lines().count(),
        11,
        "header plus the trivial orbit and nine nontrivial classes"
    );
    assert!(stdout.contains("252"));
    assert!(stdout.contains("<x0,u2>"), "minus orbit representative");
    assert!(stdout.contains("<x0,z0,u1>"));
    // Sorted by subloop order: the trivial orbit first.
    assert!(stdout.lines().nth(1).unwrap().starts_with("1"));
}

#[test]
fn chein_a4_report() {
    let (code, stdout, _) = run(&["chein", "--group", "A4"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("order 12 -> 24"));
    assert!(stdout.contains("moufang: true, associative: false"));
    assert!(stdout.contains("l[E4:M] = 19 (expected 19)"));
    assert!(!stdout.contains("FAIL"));
}

#[test]
fn chein_rejects_unknown_group() {
    let (code, _, stderr) = run(&["chein", "--group", "Q8"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown group"));
}

#[test]
fn lattice_json_export() {
    let path = std::env::temp_dir().join("mlat_cli_test_lattice.json");
    let path = path.to_str().unwrap();
    let (code, _, _) = run(&["lattice", "--out", "json", "--path", path]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(path).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["elements"], 120);
    assert_eq!(value["nodes"].as_array().unwrap().len(), 11);
}

#[test]
fn lattice_rejects_bad_format_and_path() {
    let (code, _, stderr) = run(&["lattice", "--out", "yaml", "--path", "/tmp/x"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown output format"));
    let (code, _, stderr) = run(&[
        "lattice",
        "--out",
        "json",
        "--path",
        "/nonexistent-dir/file.json",
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("cannot write"));
}

#[test]
fn thread_cap_is_honored_and_validated() {
    let (code, stdout, _) = run_env(&["verify", "--section", "c2xc4"], &[("MLAT_THREADS", "1")]);
    assert_eq!(code, 0);
    assert!(stdout.contains("checks passed"));
    let (code, _, stderr) = run_env(&["orbits"], &[("MLAT_THREADS", "many")]);
    assert_eq!(code, 2);
    assert!(stderr.contains("MLAT_THREADS"));
}
