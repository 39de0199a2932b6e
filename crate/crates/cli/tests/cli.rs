//! End-to-end tests of the binary: exit codes, report shapes, determinism.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn cfred(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cfred"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

fn small_config() -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    write!(
        f,
        "height_bound = 5\ndepth = 8\nslow_steps = 60\ngamma_height = 2\n\
         corpus = quad(0,1,2,1)\ncorpus = quad(1,1,5,2)\ncorpus = quad(0,-1,2,1)\n"
    )
    .unwrap();
    f
}

#[test]
fn expand_emits_golden_json_lines() {
    let out = cfred(&["expand", "--x", "quad(0,1,2,1)", "--depth", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().map(str::trim).collect();
    assert_eq!(
        lines,
        vec![
            r#"{"delta_i":"1","gamma_i":[["1","0"],["0","1"]],"i":0,"n_i":"1","p_i":"1","q_i":"1"}"#,
            r#"{"delta_i":"quad(-1,1,2,1)","gamma_i":[["0","1"],["1","-1"]],"i":1,"n_i":"2","p_i":"3","q_i":"2"}"#,
        ]
    );
}

#[test]
fn expand_terminates_on_rationals() {
    let out = cfred(&["expand", "--x", "355/113", "--depth", "10"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 3);
}

#[test]
fn slow_reports_moves() {
    let out = cfred(&["slow", "--x", "quad(0,-1,2,1)", "--steps", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().next().unwrap().contains("ADD_ONE"));
    assert!(text.lines().nth(2).unwrap().contains("RECIP_MINUS_ONE"));
}

#[test]
fn sync_and_bound_agree_on_translation() {
    let out = cfred(&["bound", "--gamma", "[[1,5],[0,1]]"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["n_floor"], 3);
    assert_eq!(v["gamma_inf"], "inf");

    let out = cfred(&["sync", "--gamma", "[[1,5],[0,1]]", "--x", "quad(0,1,2,1)"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["within_bound"], true);
    assert!(v["s"].as_u64().unwrap() <= 3 && v["t"].as_u64().unwrap() <= 3);
}

#[test]
fn witness_absence_is_reported_not_failed() {
    let out = cfred(&[
        "witness",
        "--x",
        "quad(0,1,2,1)",
        "--y",
        "quad(1,1,5,2)",
        "--depth",
        "40",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["found"], false);
    assert_eq!(v["gamma"], serde_json::Value::Null);
}

#[test]
fn verify_subcommands_exit_zero_when_clean() {
    let out = cfred(&["verify-t1", "--x", "quad(0,1,2,1)", "--height", "5", "--depth", "8"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["clean"], true);

    let out = cfred(&["verify-t2", "--x", "quad(0,1,2,1)", "--height", "5", "--depth", "60"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["clean"], true);
    assert_eq!(v["prefix_excluded"], 1);
}

#[test]
fn verify_t4_runs_a_corpus_file() {
    let mut f = NamedTempFile::new().unwrap();
    write!(f, "# corpus\nquad(0,1,2,1)\nquad(1,1,5,2)\n").unwrap();
    let out = cfred(&[
        "verify-t4",
        "--height",
        "2",
        "--corpus",
        f.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 3); // two records plus summary
    assert!(text.lines().all(|l| l.contains(r#""status":"pass""#)));
}

#[test]
fn usage_errors_exit_two() {
    // syntax error in the number grammar
    let out = cfred(&["expand", "--x", "quad(1,1,5", "--depth", "3"]);
    assert_eq!(out.status.code(), Some(2));
    // non-unimodular matrix
    let out = cfred(&["bound", "--gamma", "[[1,1],[1,1]]"]);
    assert_eq!(out.status.code(), Some(2));
    // rational input to a verifier
    let out = cfred(&["verify-t1", "--x", "1/2", "--height", "5", "--depth", "8"]);
    assert_eq!(out.status.code(), Some(2));
    // insufficient depth for the requested height
    let out = cfred(&["verify-t1", "--x", "quad(0,1,2,1)", "--height", "25", "--depth", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn suite_small_config_is_clean_and_deterministic() {
    let f = small_config();
    let path = f.path().to_str().unwrap();
    let first = cfred(&["suite", "--config", path]);
    assert!(first.status.success());
    let second = cfred(&["suite", "--config", path]);
    assert_eq!(stdout(&first), stdout(&second));
    let text = stdout(&first);
    let last = text.lines().last().unwrap();
    assert!(last.contains(r#""check":"summary""#));
    assert!(last.contains(r#""failed":0"#));
}

#[test]
fn suite_empty_corpus_is_a_config_error() {
    let mut f = NamedTempFile::new().unwrap();
    writeln!(f, "height_bound = 5").unwrap();
    let out = cfred(&["suite", "--config", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn suite_writes_output_file() {
    let f = small_config();
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.jsonl");
    let out = cfred(&[
        "suite",
        "--config",
        f.path().to_str().unwrap(),
        "--output",
        report.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let text = std::fs::read_to_string(report).unwrap();
    assert!(text.lines().last().unwrap().contains(r#""check":"summary""#));
}

#[test]
fn default_shipped_config_is_clean() {
    let config = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs/default.cfg");
    let out = cfred(&["suite", "--config", config.to_str().unwrap()]);
    assert!(out.status.success(), "default suite must exit 0");
    let text = stdout(&out);
    let last = text.lines().last().unwrap();
    assert!(last.contains(r#""failed":0"#));
    assert_eq!(text.lines().count(), 241); // 20 values x 12 checks + summary
}
