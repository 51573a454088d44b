use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use hooktab::{enumerate_hvt, HookValuedTableau};

const READING_EXAMPLE: &str = "1+1^2|3+3,4^4|4+4,4,5 / 3+3^4|5";

fn hooktab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hooktab"))
        .args(args)
        .env_remove("HOOKTAB_FORMAT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn word_of_json_file() {
    let dir = tempfile::tempdir().unwrap();
    let t: HookValuedTableau = READING_EXAMPLE.parse().unwrap();
    let path = write(dir.path(), "T.json", &t.to_json());
    let o = hooktab(&["word", "--in", &path]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "432113543344445");
}

#[test]
fn word_of_compact_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "T.txt", READING_EXAMPLE);
    assert_eq!(stdout(&hooktab(&["word", "--in", &path])).trim(), "432113543344445");
}

#[test]
fn empty_uncrowd() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "empty.json", r#"{"shape": [], "cells": []}"#);
    let o = hooktab(&["uncrowd", "--in", &path]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["P"]["cells"].as_array().unwrap().len(), 0);
    assert_eq!(v["Q"]["entries"].as_array().unwrap().len(), 0);
    assert_eq!(v["Q"]["outer"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_reports_enumerator_count() {
    let o = hooktab(&["verify", "roundtrip", "--shape", "2,1", "--max-entry", "3", "--arm", "1", "--leg", "1"]);
    assert!(o.status.success());
    let n = enumerate_hvt(&"2,1".parse().unwrap(), 3, 1, 1).len();
    let out = stdout(&o);
    let row = out.lines().find(|l| l.starts_with("roundtrip\t")).expect("roundtrip row");
    let fields: Vec<&str> = row.split('\t').collect();
    assert_eq!(fields[1], n.to_string());
    assert_eq!(fields[2], "0");
}

#[test]
fn uncrowd_then_crowd_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for text in [READING_EXAMPLE, "1|1+1^2|5^7 / 2+3,3^4,5|6+6 / 6+7^8", "1|2+2,3^3|4^7 / 2+3,3|7+8^8 / 7+9"] {
        let t: HookValuedTableau = text.parse().unwrap();
        let original = t.to_json() + "\n";
        let input = write(dir.path(), "T.json", &original);
        let mid = dir.path().join("U.json");
        let o = hooktab(&["uncrowd", "--in", &input, "--out", mid.to_str().unwrap()]);
        assert!(o.status.success());
        let o = hooktab(&["crowd", "--in", mid.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(stdout(&o), original, "{text}");
    }
}

#[test]
fn invalid_tableau_exits_one_with_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "bad.txt", "3|2");
    let o = hooktab(&["validate", "--in", &path]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(v["error"], "RowViolation");
}

#[test]
fn pair_outside_crowding_domain_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let s: HookValuedTableau = "1^2|2^3 / 3".parse().unwrap();
    let body = format!(
        r#"{{"S": {}, "F": {{"inner": [1], "outer": [2, 1], "orientation": "column-flagged", "entries": [{{"row": 1, "col": 2, "value": 1}}]}}}}"#,
        s.to_json()
    );
    let path = write(dir.path(), "pair.json", &body);
    let o = hooktab(&["crowd", "--in", &path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(serde_json::from_slice::<serde_json::Value>(&o.stderr).unwrap()["error"].is_string());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(hooktab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(hooktab(&["word"]).status.code(), Some(2));
    assert_eq!(hooktab(&["verify", "roundtrip", "--shape", "2,1", "--bogus"]).status.code(), Some(2));
}

#[test]
fn env_selects_format() {
    let o = Command::new(env!("CARGO_BIN_EXE_hooktab"))
        .args(["expand", "--shape", "1", "--bound", "2"])
        .env("HOOKTAB_FORMAT", "json")
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(serde_json::from_slice::<serde_json::Value>(&o.stdout).is_ok());
}

#[test]
fn seed_is_inert() {
    let a = hooktab(&["expand", "--shape", "2", "--bound", "4", "--seed", "1"]);
    let b = hooktab(&["expand", "--shape", "2", "--bound", "4", "--seed", "99"]);
    assert_eq!(a.stdout, b.stdout);
}
