use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn gsl(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gsl")).args(args).current_dir(dir).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn setup() -> (TempDir, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().to_path_buf();
    assert_eq!(gsl(&["gen", "boolean", "-o", "gb.gsr"], &p).status.code(), Some(0));
    assert_eq!(gsl(&["gen", "zn", "--n", "4", "-o", "z4.gsr"], &p).status.code(), Some(0));
    (dir, p)
}

#[test]
fn gen_then_verify_all_exits_zero() {
    let (_d, p) = setup();
    let out = gsl(&["verify", "gb.gsr", "--suite", "all"], &p);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("summary: 11 pass, 0 fail"));
}

#[test]
fn missing_file_exits_two() {
    let (_d, p) = setup();
    let out = gsl(&["verify", "missing.gsr"], &p);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("[io]"));
}

#[test]
fn usage_error_exits_two() {
    let (_d, p) = setup();
    assert_eq!(gsl(&["verify", "gb.gsr", "--suite", "nope"], &p).status.code(), Some(2));
    assert_eq!(gsl(&["frobnicate"], &p).status.code(), Some(2));
}

#[test]
fn z4_th318_is_gated_not_failed() {
    let (_d, p) = setup();
    let out = gsl(&["verify", "z4.gsr", "--suite", "th3.18", "--report", "json", "--no-timing"], &p);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["reports"][0]["status"], "precondition-unmet");
    assert!(v.get("timing").is_none());
}

#[test]
fn json_schema_fields() {
    let (_d, p) = setup();
    let out = gsl(&["verify", "z4.gsr", "--suite", "th3.15", "--report", "json"], &p);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for key in ["instance", "chain", "n", "caps", "scale"] {
        assert!(v["header"].get(key).is_some(), "{key}");
    }
    let r = &v["reports"][0];
    for key in ["suite", "instance", "status", "counterexample", "counts", "checks", "notes"] {
        assert!(r.get(key).is_some(), "{key}");
    }
    assert_eq!(v["header"]["chain"], serde_json::json!(["0/1", "1/2", "1/1"]));
    assert!(v["timing"].is_array());
}

#[test]
fn validate_reports_axiom_witness() {
    let (_d, p) = setup();
    let text = std::fs::read_to_string(p.join("z4.gsr")).unwrap();
    // Z4 block gamma = 1, row 1: 0 1 2 3 → 0 1 2 0 breaks distributivity
    let broken = text.replacen("gamma = 1\n0 0 0 0\n0 1 2 3", "gamma = 1\n0 0 0 0\n0 1 2 0", 1);
    assert_ne!(broken, text);
    std::fs::write(p.join("bad.gsr"), broken).unwrap();
    let out = gsl(&["validate", "bad.gsr"], &p);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("axiom"), "{}", stdout(&out));
    let out = gsl(&["verify", "bad.gsr"], &p);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("[axiom]"));
}

#[test]
fn syntax_error_names_section() {
    let (_d, p) = setup();
    let text = std::fs::read_to_string(p.join("gb.gsr")).unwrap();
    std::fs::write(p.join("cut.gsr"), &text[..text.find("[product]").unwrap()]).unwrap();
    let out = gsl(&["validate", "cut.gsr"], &p);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("[syntax]") && err.contains("[product]"), "{err}");
}

#[test]
fn operators_prints_size_and_unity() {
    let (_d, p) = setup();
    let out = gsl(&["operators", "z4.gsr", "--side", "left", "--dump"], &p);
    let s = stdout(&out);
    assert!(s.starts_with("|L| = 4\nunity: l1 = [1,1]\n"), "{s}");
    assert!(s.contains("[semiring]\nname = L(Z4)"));
}

#[test]
fn ideals_listing() {
    let (_d, p) = setup();
    let s = stdout(&gsl(&["ideals", "z4.gsr"], &p));
    assert_eq!(s, "3 two-sided ideals\n{0}\n{0,2}\n{0,1,2,3}\n");
    let s = stdout(&gsl(&["ideals", "z4.gsr", "--fuzzy", "--chain", "0,1/2,1"], &p));
    assert!(s.starts_with("6 fuzzy two-sided ideals"), "{s}");
}

#[test]
fn transfer_round_trip() {
    let (_d, p) = setup();
    std::fs::write(p.join("sigma.fz"), "0 : 1/1\n2 : 1/2\n").unwrap();
    let out = gsl(&["transfer", "z4.gsr", "--subset", "sigma.fz", "--map", "plusprime"], &p);
    assert_eq!(stdout(&out), "l0 : 1/1\nl1 : 0/1\nl2 : 1/2\nl3 : 0/1\n");
    std::fs::write(p.join("mu.fz"), stdout(&out)).unwrap();
    let back = gsl(&["transfer", "z4.gsr", "--subset", "mu.fz", "--map", "plus"], &p);
    assert_eq!(stdout(&back), "0 : 1/1\n1 : 0/1\n2 : 1/2\n3 : 0/1\n");
}

#[test]
fn matrix_emit_round_trips() {
    let (_d, p) = setup();
    let out = gsl(&["matrix", "gb.gsr", "--n", "2", "--emit", "gb2.gsr"], &p);
    assert!(stdout(&out).contains("GB_2: |S_n|=16 |Γ_n|=16"));
    let out = gsl(&["validate", "gb2.gsr"], &p);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn semiring_files_run_th317() {
    let (_d, p) = setup();
    assert_eq!(gsl(&["gen", "zn", "--n", "4", "--semiring", "-o", "r4.gsr"], &p).status.code(), Some(0));
    let out = gsl(&["verify", "r4.gsr", "--suite", "th3.17"], &p);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert_eq!(gsl(&["verify", "r4.gsr", "--suite", "th3.8"], &p).status.code(), Some(2));
    assert_eq!(gsl(&["gen", "from-semiring", "--input", "r4.gsr", "-o", "g4.gsr"], &p).status.code(), Some(0));
    assert_eq!(gsl(&["validate", "g4.gsr"], &p).status.code(), Some(0));
}

#[test]
fn threads_flag_gives_identical_bodies() {
    let (_d, p) = setup();
    let a = gsl(&["verify", "gb.gsr", "--no-timing", "--threads", "1"], &p);
    let b = gsl(&["verify", "gb.gsr", "--no-timing"], &p);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn cap_from_environment() {
    let (_d, p) = setup();
    let out = Command::new(env!("CARGO_BIN_EXE_gsl"))
        .args(["ideals", "z4.gsr", "--fuzzy"])
        .env("GSL_CAP", "5")
        .current_dir(&p)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds cap 5"));
}
