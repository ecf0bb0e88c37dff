use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use nonsplit_core::grp::GroupSpecJson;
use nonsplit_core::{Field, Matrix};
use tempfile::TempDir;

fn nonsplit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nonsplit")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn construct_then_verify() {
    let dir = TempDir::new().unwrap();
    let report = dir.path().join("r.json");
    let out = nonsplit(&["construct", "--p", "3", "--n", "2", "--group", "family-a", "--out", path_str(&report)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&report).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["obstruction"]["dim"], 19);
    assert_eq!(v["construction"]["certificate"]["verdict"], "non_split");
    let out = nonsplit(&["verify", path_str(&report)]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("verified"));
    // no temp files left behind
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&nonsplit(&["construct", "--p", "2", "--k", "1", "--n", "2"])), 2);
    assert_eq!(code(&nonsplit(&["construct", "--p", "4"])), 1);
    assert_eq!(code(&nonsplit(&["construct", "--p", "2", "--k", "2", "--modulus", "1,0,1"])), 1);
    assert_eq!(code(&nonsplit(&["construct", "--p", "3", "--group", "cyclic"])), 1);
    assert_eq!(code(&nonsplit(&["construct", "--p", "3", "--order-cap", "2"])), 1);
    assert_eq!(code(&nonsplit(&["construct"])), 1);
    assert_eq!(code(&nonsplit(&["frobnicate"])), 1);
    assert_eq!(code(&nonsplit(&["verify", "/nonexistent/report.json"])), 1);
    assert_eq!(code(&nonsplit(&["quadratic", "--p", "3"])), 2);
    assert_eq!(code(&nonsplit(&["--help"])), 0);
}

#[test]
fn tampered_report_fails_with_code_4() {
    let dir = TempDir::new().unwrap();
    let report = dir.path().join("r.json");
    assert_eq!(code(&nonsplit(&["construct", "--p", "2", "--k", "2", "--out", path_str(&report)])), 0);
    let text = fs::read_to_string(&report).unwrap();
    let tampered = text.replacen("\"dim\": 11", "\"dim\": 12", 1);
    assert_ne!(tampered, text);
    fs::write(&report, tampered).unwrap();
    assert_eq!(code(&nonsplit(&["verify", path_str(&report)])), 4);
    fs::write(&report, "{not json").unwrap();
    assert_eq!(code(&nonsplit(&["verify", path_str(&report)])), 1);
}

#[test]
fn job_file_matches_flags() {
    let dir = TempDir::new().unwrap();
    let job = dir.path().join("job.json");
    fs::write(&job, r#"{"p": 2, "k": 2, "n": 2, "group": "family-a", "seed": 0}"#).unwrap();
    let a = nonsplit(&["construct", "--job", path_str(&job)]);
    let b = nonsplit(&["construct", "--p", "2", "--k", "2", "--n", "2"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(code(&nonsplit(&["construct", "--job", path_str(&job), "--p", "3"])), 1);
}

#[test]
fn group_file() {
    let dir = TempDir::new().unwrap();
    let f = Field::prime(3).unwrap();
    let spec = GroupSpecJson { field: f.spec(), n: 2, generators: vec![Matrix::from_ints(&f, &[&[1, 1], &[0, 1]]).to_json()] };
    let gpath = dir.path().join("g.json");
    fs::write(&gpath, serde_json::to_string(&spec).unwrap()).unwrap();
    let recipe = format!("file:{}", gpath.display());
    let out = nonsplit(&["construct", "--p", "3", "--group", &recipe]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let via_family = nonsplit(&["construct", "--p", "3", "--group", "family-a"]);
    let a: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let b: serde_json::Value = serde_json::from_slice(&via_family.stdout).unwrap();
    assert_eq!(a["construction"], b["construction"]);
    // the file's field must agree with the flags
    assert_eq!(code(&nonsplit(&["construct", "--p", "5", "--group", &recipe])), 1);
}

#[test]
fn h1_command() {
    let out = nonsplit(&["h1", "--p", "3", "--module", "U"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["dim_h1"].as_u64().unwrap() >= 1);
    let out = nonsplit(&["h1", "--p", "2", "--k", "2", "--module", "trivial:1", "--basis"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["dim_z1"], 2);
    assert!(v["z1_basis"].is_array());
    assert_eq!(code(&nonsplit(&["h1", "--p", "3", "--module", "sym"])), 1);
}

#[test]
fn quadratic_and_detcheck() {
    let out = nonsplit(&["quadratic", "--p", "2", "--k", "2"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["sequence"]["verdict"], "non_split");
    assert_eq!(v["comparison"]["classes_match"], true);
    assert_eq!(v["comparison"]["rechecked"], true);
    let out = nonsplit(&["detcheck", "--seed", "7"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["all_zero"], true);
}
