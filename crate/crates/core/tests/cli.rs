use std::process::{Command, Output};

use regular_partitions::cli::{ComputeJson, ConvergenceJson};

fn prs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prs"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_json_round_trips() {
    let out = prs(&[
        "compute",
        "--r",
        "14",
        "--s",
        "15",
        "--n",
        "500",
        "--format",
        "json",
        "--oracle-check",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let parsed: ComputeJson = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed.value, "310093947025073675623");
    assert!(parsed.oracle_checked);
    assert_eq!(parsed.to_json(), text);
}

#[test]
fn compute_rejects_common_factor() {
    let out = prs(&["compute", "--r", "4", "--s", "6", "--n", "10"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gcd(4, 6) = 2"));
}

#[test]
fn compute_requires_flag_for_square_factors() {
    let out = prs(&["compute", "--r", "6", "--s", "25", "--n", "500"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("25 is not square-free"));
}

#[test]
fn compute_fails_when_cap_is_too_small() {
    let out = prs(&[
        "compute", "--r", "14", "--s", "15", "--n", "500", "--N-max", "3",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("did not settle"));
}

#[test]
fn convergence_csv_shape() {
    let out = prs(&[
        "convergence",
        "--r",
        "14",
        "--s",
        "15",
        "--n",
        "500",
        "--N-max",
        "11",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(!text.contains('\r'));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 12);
    assert_eq!(lines[0], "N,S_N,diff");
    assert_eq!(lines[4], "4,310093947025073675623.3258,-0.3258");
    assert_eq!(lines[11], "11,310093947025073675623.4447,-0.4447");
}

#[test]
fn convergence_json_and_decimals() {
    let out = prs(&[
        "convergence",
        "--r",
        "2",
        "--s",
        "3",
        "--n",
        "40",
        "--N-max",
        "3",
        "--format",
        "json",
        "--decimals",
        "2",
    ]);
    let parsed: ConvergenceJson = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed.rows.len(), 3);
    assert!(parsed
        .rows
        .iter()
        .all(|r| r.s_n.split('.').nth(1).unwrap().len() == 2));
    assert_eq!(parsed.to_json(), stdout(&out));
}

#[test]
fn convergence_writes_svg_and_out() {
    let dir = std::env::temp_dir().join(format!("prs-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let svg = dir.join("diff.svg");
    let csv = dir.join("rows.csv");
    let out = prs(&[
        "convergence",
        "--r",
        "3",
        "--s",
        "5",
        "--n",
        "60",
        "--N-max",
        "20",
        "--format",
        "csv",
        "--svg",
        svg.to_str().unwrap(),
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<polyline"));
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 21);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_small_grids() {
    let out = prs(&["verify", "--r", "2", "--s", "3", "--n", "60"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "60 cases, 0 failures\n");
    let empty = prs(&["verify", "--max-part", "2"]);
    assert!(empty.status.success());
    assert_eq!(stdout(&empty), "0 cases, 0 failures\n");
}

#[test]
fn oracle_command() {
    let out = prs(&[
        "oracle", "--r", "14", "--s", "15", "--n", "500", "--format", "csv",
    ]);
    assert_eq!(
        stdout(&out),
        "r,s,n,value\n14,15,500,310093947025073675623\n"
    );
}

#[test]
fn selftest_passes_and_reports_faults() {
    let a = prs(&["selftest", "--seed", "7"]);
    assert!(a.status.success(), "{}", stdout(&a));
    assert_eq!(stdout(&a), stdout(&prs(&["selftest", "--seed", "7"])));
    let f = prs(&["selftest", "--inject-fault", "pentagonal-product"]);
    assert_eq!(f.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&f.stderr).contains("pentagonal-product"));
}

#[test]
fn usage_errors() {
    assert_eq!(prs(&["compute", "--r", "x"]).status.code(), Some(2));
    assert_eq!(prs(&["frobnicate"]).status.code(), Some(2));
    assert!(prs(&["--help"]).status.success());
}
