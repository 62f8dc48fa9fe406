use std::process::{Command, Output};

fn qdouble(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdouble")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = qdouble(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// The printed S-matrix of D(S₃), times 6.
const PRINTED: [[i32; 8]; 8] = [
    [1, 1, 2, 3, 3, 2, 2, 2],
    [1, 1, 2, -3, -3, 2, 2, 2],
    [2, 2, 4, 0, 0, -2, -2, -2],
    [3, -3, 0, 3, -3, 0, 0, 0],
    [3, -3, 0, -3, 3, 0, 0, 0],
    [2, 2, -2, 0, 0, 4, -2, -2],
    [2, 2, -2, 0, 0, -2, 4, -2],
    [2, 2, -2, 0, 0, -2, -2, 4],
];

#[test]
fn anyons_of_s3() {
    let csv = stdout(&["anyons", "--group", "builtin:S3", "--format", "csv"]);
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 8);
    let labels: Vec<&str> = rows.iter().map(|r| r.split(',').next().unwrap()).collect();
    assert_eq!(labels, ["A", "B", "C", "D", "E", "F", "G", "H"]);
    let json = stdout(&["anyons", "--group", "builtin:S3"]);
    assert_eq!(json.matches("\"label\"").count(), 8);
}

#[test]
fn smatrix_csv() {
    let csv = stdout(&["smatrix", "--group", "builtin:S3", "--format", "csv"]);
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), ",A,B,C,D,E,F,G,H");
    let mut off = Vec::new();
    for (i, line) in lines.enumerate() {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells.len(), 9);
        for j in 0..8 {
            let v: f64 = cells[j + 1].parse().unwrap();
            if (v - PRINTED[i][j] as f64 / 6.0).abs() > 1e-9 {
                off.push((i, j, (v * 6.0).round() as i32));
            }
        }
    }
    // the G/H corner follows the S formula, which swaps the printed diagonal
    assert_eq!(off, vec![(6, 6, -2), (6, 7, 4), (7, 6, 4), (7, 7, -2)]);
    let snapped = stdout(&["smatrix", "--group", "builtin:S3", "--format", "csv", "--snap"]);
    assert!(snapped.contains("A,1/6,1/6,1/3,1/2,1/2,1/3,1/3,1/3"));
}

#[test]
fn a6_transpositions() {
    let json = stdout(&["modinv", "search", "--group", "builtin:A6"]);
    assert!(json.contains("\"anyons\": 44"));
    assert_eq!(json.matches("\"s_residual\"").count(), 2);
    assert!(json.contains("\"(2,0)\"") && json.contains("\"(2,3)\""));
    assert!(json.contains("\"(2,1)\"") && json.contains("\"(2,2)\""));
}

#[test]
fn deterministic_output() {
    for args in [
        &["smatrix", "--group", "builtin:A4"][..],
        &["lattice", "verify", "--group", "builtin:Z2", "--states", "2", "--seed", "3"][..],
        &["tunnel", "--group", "affine:q=3", "--wall-u", "affine"][..],
    ] {
        assert_eq!(qdouble(args).stdout, qdouble(args).stdout, "{args:?}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(qdouble(&["anyons", "--group", "builtin:Q8"]).status.code(), Some(2));
    assert_eq!(qdouble(&["anyons"]).status.code(), Some(2));
    assert_eq!(qdouble(&["condense", "--group", "builtin:S3", "--subgroup", "members:9"]).status.code(), Some(2));
    assert_eq!(qdouble(&["verify", "cf", "6"]).status.code(), Some(2));
    assert_eq!(qdouble(&["modinv", "check", "--group", "builtin:S3", "--swap", "D,F"]).status.code(), Some(1));
    assert_eq!(qdouble(&["modinv", "check", "--group", "builtin:S3", "--swap", "C,F"]).status.code(), Some(0));
    assert_eq!(qdouble(&["verify", "cf", "--tol", "0", "3"]).status.code(), Some(2));
    let out = qdouble(&["anyons", "--group", "nonsense.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty() && out.stdout.is_empty());
}

#[test]
fn condense_and_tunnel_reports() {
    let json = stdout(&["condense", "--group", "builtin:S3", "--subgroup", "whole"]);
    assert!(json.contains("\"condensed\": [\n    \"A\",\n    \"D\",\n    \"F\"\n  ]"));
    assert!(json.contains("\"passed\": true"));
    let json = stdout(&["tunnel", "--group", "builtin:S3"]);
    assert!(json.contains("\"conditions_hold\": true"));
    let json = stdout(&["verify", "cf", "dickson9"]);
    assert!(json.contains("\"passed\": true"));
}

#[test]
fn file_inputs() {
    let dir = std::env::temp_dir().join(format!("qdouble-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let group = dir.join("z2.json");
    std::fs::write(&group, r#"{"order": 2, "mul": [[0, 1], [1, 0]], "label": "T"}"#).unwrap();
    let g = group.to_str().unwrap();
    let csv = stdout(&["anyons", "--group", g, "--format", "csv"]);
    assert_eq!(csv.lines().count(), 5);
    let cocycle = dir.join("phi.json");
    std::fs::write(&cocycle, r#"{"subgroup": [0, 1], "omega_order": 1, "exponents": [[0, 0], [0, 0]]}"#).unwrap();
    let json = stdout(&["condense", "--group", g, "--subgroup", "whole", "--cocycle", cocycle.to_str().unwrap()]);
    assert!(json.contains("\"total_dimension\": 2"));
    std::fs::write(&group, r#"{"order": 2, "mul": [[0, 1], [1, 1]]}"#).unwrap();
    assert_eq!(qdouble(&["anyons", "--group", g]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}
