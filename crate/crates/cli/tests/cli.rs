use std::io::Write;
use std::process::{Command, Output};

fn workbench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_workbench"))
        .args(args)
        .env_remove("WORKBENCH_MAX_DEGREE")
        .env_remove("WORKBENCH_MAX_ORDER")
        .env_remove("WORKBENCH_MAX_RANK")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let out = workbench(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).unwrap()
}

fn dims(value: &serde_json::Value, key: &str) -> Vec<u64> {
    value[key].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect()
}

#[test]
fn group_orders() {
    for (spec, order) in [("sylow-sym:8", 128), ("sylow-alt:4", 4), ("dihedral:6", 6), ("q8", 8)] {
        let v = json(&["group", spec]);
        assert_eq!(v["order"], order, "{spec}");
    }
}

#[test]
fn group_from_generator_file() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, r#"{{"degree": 4, "generators": [[2, 3, 4, 1], [4, 3, 2, 1]]}}"#).unwrap();
    let spec = format!("gens:{}", file.path().display());
    let v = json(&["group", &spec]);
    assert_eq!(v["order"], 8);
    assert_eq!(v["degree"], 4);
}

#[test]
fn limit_examples() {
    let v = json(&["limit", "--group", "sylow-sym:4", "--max-degree", "8"]);
    assert_eq!(dims(&v, "dims"), (1..=9).collect::<Vec<_>>());

    let v = json(&["limit", "--group", "dihedral:16", "--max-degree", "10"]);
    assert_eq!(dims(&v, "dims"), (1..=11).collect::<Vec<_>>());

    let v = json(&["limit", "--group", "sylow-alt:8", "--max-degree", "6"]);
    assert_eq!(dims(&v, "dims"), vec![1, 3, 7, 12, 19, 28, 40]);

    let v = json(&["limit", "--group", "elem:2", "--max-degree", "4", "--mode", "full"]);
    assert_eq!(v["mode"], "full");
    assert_eq!(dims(&v, "dims"), vec![1, 2, 3, 4, 5]);
}

#[test]
fn limit_csv_and_ascii() {
    let out = workbench(&["limit", "--group", "cyclic:4", "--max-degree", "3", "--format", "csv"]);
    assert_eq!(stdout(&out), "degree,dim\n0,1\n1,1\n2,1\n3,1\n");
    let out = workbench(&["limit", "--group", "cyclic:4", "--max-degree", "3", "--format", "ascii"]);
    assert!(stdout(&out).starts_with("L(cyclic:4)"));
}

#[test]
fn series_commands() {
    let v = json(&["series", "alt", "16", "12"]);
    assert_eq!(v["coefficients"][1], 4);
    assert_eq!(v["coefficients"][2], 13);

    let v = json(&["series", "sym", "4", "5"]);
    assert_eq!(dims(&v, "coefficients"), vec![1, 2, 3, 4, 5, 6]);

    let out = workbench(&["series", "quad", "sym:2", "4", "--format", "ascii"]);
    assert_eq!(stdout(&out), "quad:sym:2: 1,2,3,4,5\n");

    let a = json(&["series", "a4x", "1,2,3,4", "3"]);
    let b = json(&["series", "a4x", "poly:2", "3"]);
    assert_eq!(a["coefficients"], b["coefficients"]);
}

#[test]
fn module_checks_pass() {
    let out = workbench(&["module", "sylow-sym:8", "--max-degree", "10", "--emit", "checks"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for key in ["instability", "adem", "u_compatibility", "reduced"] {
        assert_eq!(v[key]["pass"], true, "{key}");
    }
}

#[test]
fn module_dims_match_series() {
    let m = json(&["module", "sylow-sym:8", "--max-degree", "9"]);
    let s = json(&["series", "sym", "8", "9"]);
    assert_eq!(dims(&m, "dims"), dims(&s, "coefficients"));

    let g = json(&["module", "sylow-sym:4", "--max-degree", "6", "--emit", "gysin"]);
    assert_eq!(dims(&g, "gysin_dims"), vec![1, 2, 3, 4, 5, 6]);
}

#[test]
fn module_dump_is_json() {
    let v = json(&["module", "poly", "--max-degree", "4", "--emit", "dump"]);
    assert!(v.is_object());
}

#[test]
fn verify_all_passes() {
    let out = workbench(&["verify", "all", "--max-degree", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 9);

    let out = workbench(&["verify", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 1);
}

#[test]
fn exit_codes() {
    assert_eq!(workbench(&["group", "nonsense"]).status.code(), Some(2));
    assert_eq!(workbench(&["bogus"]).status.code(), Some(2));
    assert_eq!(workbench(&["verify", "42"]).status.code(), Some(2));
    assert_eq!(workbench(&["series", "alt", "16", "4", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(workbench(&["group", "sym:9"]).status.code(), Some(3));
    assert_eq!(workbench(&["group", "sylow-sym:8", "--max-order", "64"]).status.code(), Some(3));
    assert_eq!(
        workbench(&["limit", "--group", "elem:4", "--max-rank", "3"]).status.code(),
        Some(3)
    );
}

#[test]
fn flags_override_environment() {
    let run = |env: Option<&str>, args: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_workbench"));
        cmd.args(args).env_remove("WORKBENCH_MAX_DEGREE");
        if let Some(v) = env {
            cmd.env("WORKBENCH_MAX_DEGREE", v);
        }
        let out = cmd.output().unwrap();
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        v["dims"].as_array().unwrap().len()
    };
    assert_eq!(run(None, &["limit", "--group", "cyclic:2"]), 13);
    assert_eq!(run(Some("4"), &["limit", "--group", "cyclic:2"]), 5);
    assert_eq!(run(Some("4"), &["limit", "--group", "cyclic:2", "--max-degree", "2"]), 3);

    let out = Command::new(env!("CARGO_BIN_EXE_workbench"))
        .args(["group", "sylow-sym:8"])
        .env("WORKBENCH_MAX_ORDER", "16")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    let args = ["limit", "--group", "sylow-sym:8", "--max-degree", "6", "--mode", "skeleton"];
    let first = workbench(&args);
    let second = workbench(&args);
    assert_eq!(first.stdout, second.stdout);

    let first = workbench(&["module", "sylow-sym:4", "--max-degree", "6", "--emit", "dump"]);
    let second = workbench(&["module", "sylow-sym:4", "--max-degree", "6", "--emit", "dump"]);
    assert_eq!(first.stdout, second.stdout);
}
