//! Runs the `mesa` binary as a subprocess and checks exit codes and output.

use std::process::{Command, Output};

use serde_json::Value;

fn mesa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mesa"))
        .args(args)
        .env_remove("MESA_BRUTE_CEILING")
        .output()
        .expect("failed to launch mesa")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn check_reports_admissibility_and_witness() {
    let out = mesa(&["check", "5,6,8", "--order", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["admissible"], true);
    assert_eq!(v["witness"], "1551662882334477");

    let out = mesa(&["check", "3,4,5,6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["admissible"], false);
    assert_eq!(v["violated_at"], 6);
}

#[test]
fn malformed_input_exits_one() {
    for args in [
        &["mesa", "31324421"][..],
        &["check", "3,x"],
        &["dyck", "ENQ"],
        &["count", "0"],
        &["no-such-command"],
    ] {
        let out = mesa(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn count_agrees_and_exits_zero() {
    let out = mesa(&["count", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for key in [
        "brute_force_count",
        "subset_count",
        "recurrence_count",
        "closed_form_count",
    ] {
        assert_eq!(v[key], 88, "{key}");
    }
    assert_eq!(v["maximal_count"], 7);
    assert_eq!(v["agree"], true);
}

#[test]
fn corrupted_engine_exits_two_with_report() {
    let out = mesa(&["count", "6", "--corrupt-engine", "closed"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["agree"], false);
    assert_eq!(v["closed_form_count"], 23);

    let out = mesa(&[
        "--format",
        "csv",
        "table",
        "4",
        "--corrupt-engine",
        "subset",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("false"));
}

#[test]
fn ceiling_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_mesa"))
        .args(["count", "7"])
        .env("MESA_BRUTE_CEILING", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["brute_force_count"], Value::Null);
    assert_eq!(v["subset_count"], 44);
}

#[test]
fn table_csv() {
    let out = mesa(&["--format", "csv", "table", "15"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let last = text.lines().last().unwrap();
    assert!(last.starts_with("15,,10433,10433,10433,"), "{last}");
}

#[test]
fn maximal_and_dyck() {
    let v = json(&mesa(&["maximal", "3"]));
    assert_eq!(v["rational_catalan"], "7");
    let sets = v["sets"].as_array().unwrap();
    assert_eq!(sets.len(), 7);

    let v = json(&mesa(&["dyck", "ENENENNN"]));
    assert_eq!(v["rational_dyck"], true);
    assert_eq!(v["area"], 3);
    assert_eq!(v["mesa_set"], serde_json::json!([2, 4, 6, 7, 8]));
}

#[test]
fn render_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let perm = dir.path().join("perm.svg");
    let out = mesa(&[
        "render",
        "perm",
        "1334664225518877",
        "-o",
        perm.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let svg = std::fs::read_to_string(&perm).unwrap();
    assert_eq!(svg.matches("<circle").count(), 16);

    let path = dir.path().join("dyck.svg");
    let out = mesa(&[
        "render",
        "dyck",
        "EEENNNNN",
        "-o",
        path.to_str().unwrap(),
        "--no-slope",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!std::fs::read_to_string(&path)
        .unwrap()
        .contains("dasharray"));

    // Not a Dyck path: nothing written.
    let bad = dir.path().join("bad.svg");
    let out = mesa(&["render", "dyck", "NNNEEE", "-o", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!bad.exists());
}
