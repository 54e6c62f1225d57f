use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    format!("file:{}", p.display())
}

fn qdc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdc"))
        .args(args)
        .env_remove("QDC_MAX_DIM")
        .output()
        .expect("qdc runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn classify_s3() {
    let out = qdc(&["classify", "--group", "S3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["summary"]["count"], 7);
    assert_eq!(v["summary"]["dims"], serde_json::json!([1, 4, 4, 4, 4, 9, 9]));
    assert_eq!(v["summary"]["dim_sum"], 35);
    assert_eq!(v["summary"]["dim_sum_matches"], true);
}

#[test]
fn classify_z2() {
    let v = json(&qdc(&["classify", "--group", "Z2"]));
    assert_eq!(v["summary"]["dims"], serde_json::json!([1, 1, 1]));
}

#[test]
fn classify_from_table_file() {
    let v = json(&qdc(&["classify", "--group", &data("z3_table.json")]));
    assert_eq!(v["summary"]["count"], 8);
}

#[test]
fn bad_table_is_input_error() {
    let out = qdc(&["classify", "--group", &data("bad_table.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn unknown_group_and_flag() {
    assert_eq!(qdc(&["classify", "--group", "S9"]).status.code(), Some(2));
    assert_eq!(qdc(&["classify", "--bogus"]).status.code(), Some(2));
    assert_eq!(
        qdc(&[
            "pipeline",
            "--class",
            "(12)",
            "--irrep",
            "cyclic(2,1)",
            "--format",
            "xml"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn pipeline_nine_dimensional() {
    let out = qdc(&[
        "pipeline",
        "--group",
        "S3",
        "--class",
        "(12)",
        "--irrep",
        "cyclic(2,1)",
        "--nmax",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = &json(&out)["report"];
    assert_eq!(r["lambda_dims"], serde_json::json!([1, 9, 48, 198]));
    assert_eq!(r["betti"][0], 1);
    assert_eq!(r["betti"][1], 1);
    assert_eq!(r["relation_count"], 33);
    for (name, g) in r["gates"].as_object().unwrap() {
        assert_eq!(g["status"], "pass", "{name}");
    }
    assert!(r["conventions"]["section"].is_object());
}

#[test]
fn pipeline_one_dimensional() {
    let out = qdc(&[
        "pipeline", "--group", "S3", "--class", "e", "--irrep", "sign_Sn", "--nmax", "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["report"]["lambda_dims"], serde_json::json!([1, 1, 0, 0, 0]));
}

#[test]
fn swapped_section_cocycle_table() {
    let out = qdc(&[
        "pipeline",
        "--class",
        "(12)",
        "--irrep",
        "cyclic(2,1)",
        "--section",
        &data("swap_section_s3.json"),
        "--verify-only",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let t = &json(&out)["report"]["cocycle_table"];
    let order = ["e", "(12)", "(23)", "(13)", "(123)", "(132)"];
    let rows = [
        ("(12)", "1 -1 1 1 -1 -1"),
        ("(23)", "1 -1 -1 1 1 -1"),
        ("(13)", "1 -1 1 -1 -1 1"),
    ];
    for (a, want) in rows {
        let got: Vec<&str> = order.iter().map(|x| t[a][*x].as_str().unwrap()).collect();
        assert_eq!(got.join(" "), want, "row {a}");
    }
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| -> Value {
        let p = dir.path().join(name);
        let out = qdc(&[
            "pipeline",
            "--class",
            "(123)",
            "--irrep",
            "cyclic(3,1)",
            "--relations",
            "--cohomology",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        let mut v: Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
        v.as_object_mut().unwrap().remove("run");
        v
    };
    assert_eq!(
        serde_json::to_string(&run("a.json")).unwrap(),
        serde_json::to_string(&run("b.json")).unwrap()
    );
}

#[test]
fn size_bound_reports_partial_results() {
    let out = qdc(&[
        "pipeline",
        "--class",
        "(12)",
        "--irrep",
        "trivial",
        "--max-matrix-dim",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(5));
    let r = &json(&out)["report"];
    assert_eq!(r["partial"], true);
    assert_eq!(r["lambda_dims"], serde_json::json!([1, 9, 48]));
}

#[test]
fn env_bound_applies_without_flag() {
    let out = Command::new(env!("CARGO_BIN_EXE_qdc"))
        .args(["pipeline", "--class", "(12)", "--irrep", "trivial"])
        .env("QDC_MAX_DIM", "50")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn trivial_pair_is_rejected() {
    let out = qdc(&["pipeline", "--class", "e", "--irrep", "trivial"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn irrep_from_file_matches_builtin() {
    let from_file = qdc(&[
        "pipeline",
        "--class",
        "(12)",
        "--irrep",
        &data("z2_sign.json"),
        "--verify-only",
    ]);
    let builtin = qdc(&["pipeline", "--class", "(12)", "--irrep", "cyclic(2,1)", "--verify-only"]);
    assert_eq!(from_file.status.code(), Some(0));
    let (a, b) = (json(&from_file), json(&builtin));
    assert_eq!(a["report"]["calculus"], b["report"]["calculus"]);
}

#[test]
fn text_format() {
    let out = qdc(&["pipeline", "--class", "(12)", "--irrep", "trivial", "--format", "text"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("lambda_dims [1,9,48,198]"));
    assert!(s.contains("gate dd_zero: pass"));
}
