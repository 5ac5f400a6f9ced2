//! End-to-end runs of the diaglab binary: output formats, golden text,
//! exit codes, environment overrides.

use std::process::{Command, Output};

fn diaglab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diaglab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = diaglab(args);
    assert!(
        out.status.success(),
        "diaglab {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

#[test]
fn tables_match_golden_files() {
    for (args, golden) in [
        (vec!["table", "1"], include_str!("../golden/table1.txt")),
        (vec!["table", "2"], include_str!("../golden/table2.txt")),
        (
            vec!["table", "2", "--grid"],
            include_str!("../golden/table3.txt"),
        ),
        (vec!["table", "4"], include_str!("../golden/table4.txt")),
        (vec!["table", "5"], include_str!("../golden/table5.txt")),
        (vec!["table", "6"], include_str!("../golden/table6.txt")),
        (vec!["table", "7"], include_str!("../golden/table7.txt")),
        (vec!["table", "8"], include_str!("../golden/table8.txt")),
        (vec!["table", "9"], include_str!("../golden/table9.txt")),
    ] {
        assert_eq!(stdout(&args), golden, "diaglab {args:?}");
    }
}

#[test]
fn text_output_is_reproducible() {
    let first = stdout(&["table", "4"]);
    let second = stdout(&["table", "4"]);
    assert_eq!(first, second);
}

#[test]
fn table_json_roundtrips() {
    let json = stdout(&["table", "9", "--rows", "12", "--format", "json"]);
    let doc: diaglab::table::TableDoc = serde_json::from_str(&json).unwrap();
    assert_eq!(doc.to_json(), json);
    assert_eq!(doc.rows.len(), 12);
}

#[test]
fn table_csv_has_header_and_rows() {
    let csv = stdout(&["table", "2", "--rows", "3", "--format", "csv"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "n,Base2(n),LDI(n)");
    assert_eq!(lines.len(), 4);
}

#[test]
fn unknown_table_is_usage_error() {
    let out = diaglab(&["table", "12"]);
    assert_eq!(out.status.code(), Some(2));
    let out = diaglab(&["table", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn diagonal_reference_run() {
    let text = stdout(&[
        "diagonal", "--list", "ldi", "--base", "2", "--shuffle", "s0", "--rule", "flip",
        "--depth", "20",
    ]);
    assert!(text.contains("limit: 1/2"));
    assert!(text.contains("membership: in list at position 0"));
}

#[test]
fn diagonal_nine_ending_run() {
    let text = stdout(&[
        "diagonal", "--list", "ldi", "--base", "10", "--rule", "hawking", "--ending", "nine",
        "--shuffle", "s0",
    ]);
    assert!(text.contains("limit: 11/100"));
}

#[test]
fn diagonal_dunham_is_deterministic_per_seed() {
    let args = [
        "diagonal", "--list", "ldi", "--base", "10", "--rule", "dunham", "--seed", "42",
        "--depth", "100", "--format", "json",
    ];
    let a = stdout(&args);
    let b = stdout(&args);
    assert_eq!(a, b);
    let other = stdout(&[
        "diagonal", "--list", "ldi", "--base", "10", "--rule", "dunham", "--seed", "43",
        "--depth", "100", "--format", "json",
    ]);
    assert_ne!(a, other);
}

#[test]
fn diagonal_json_roundtrips() {
    let json = stdout(&[
        "diagonal",
        "--list",
        "ldi-dprime",
        "--rule",
        "flip",
        "--depth",
        "9",
        "--format",
        "json",
    ]);
    let doc: diaglab::report::ReportDoc = serde_json::from_str(&json).unwrap();
    assert_eq!(doc.to_json(), json);
    assert_eq!(doc.limit.as_deref(), Some("3/4"));
    assert_eq!(doc.trace[2].prefix, "0.110");
    assert_eq!(doc.trace[2].position.as_deref(), Some("3"));
}

#[test]
fn diagonal_csv_is_the_trace() {
    let csv = stdout(&[
        "diagonal", "--list", "l1", "--rule", "flip", "--depth", "3", "--format", "csv",
    ]);
    assert_eq!(csv, "n,prefix,position\n0,0.0,1\n1,0.01,2\n2,0.011,3\n");
}

#[test]
fn rule_base_mismatch_is_usage_error() {
    let out = diaglab(&["diagonal", "--list", "ldi", "--base", "10", "--rule", "flip"]);
    assert_eq!(out.status.code(), Some(2));
    let out = diaglab(&["diagonal", "--list", "nosuch", "--rule", "flip"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn depth_env_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_diaglab"))
        .args(["diagonal", "--list", "l1", "--rule", "flip", "--format", "csv"])
        .env("DIAGLAB_DEPTH", "2")
        .output()
        .expect("binary runs");
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 3); // header + two rows
}

#[test]
fn digits_reference_output() {
    assert_eq!(stdout(&["digits", "log2"]), "0.10110001011...\n");
    assert_eq!(
        stdout(&["digits", "sqrt2-1", "--count", "11"]),
        "0.01101010000...\n"
    );
    assert_eq!(
        stdout(&["digits", "e-2", "--base", "10", "--count", "6"]),
        "0.718281...\n"
    );
    let out = diaglab(&["digits", "tau"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_single_check_and_exit_codes() {
    let out = diaglab(&["verify", "--only", "table8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("ok   table8"));
    assert!(text.contains("all 1 checks passed"));

    let out = diaglab(&["verify", "--only", "nosuch"]);
    assert_eq!(out.status.code(), Some(2));
}
