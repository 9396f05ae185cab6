use std::fs;
use std::path::Path;
use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn gpnerve(dir: &Path, args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_gpnerve"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("run gpnerve");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn read(dir: &Path, name: &str) -> Value {
    serde_json::from_str(&fs::read_to_string(dir.join(name)).unwrap()).unwrap()
}

fn write(dir: &Path, name: &str, v: &Value) {
    fs::write(dir.join(name), serde_json::to_string_pretty(v).unwrap()).unwrap();
}

fn setup() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    for name in ["A", "B"] {
        let file = format!("{}.json", name.to_lowercase());
        assert_eq!(gpnerve(dir.path(), &["fixture", name, "--out", &file]).code, 0);
    }
    dir
}

#[test]
fn help_and_usage() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(gpnerve(dir.path(), &["--help"]).code, 0);
    assert_eq!(gpnerve(dir.path(), &[]).code, 2);
    assert_eq!(gpnerve(dir.path(), &["fill"]).code, 2);
    assert_eq!(gpnerve(dir.path(), &["fixture", "nope"]).code, 2);
}

#[test]
fn fixtures_check_clean() {
    let dir = setup();
    for file in ["a.json", "b.json"] {
        let r = gpnerve(dir.path(), &["check", file]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        assert!(r.stdout.contains("ok"));
    }
}

#[test]
fn input_errors_exit_2() {
    let dir = setup();
    let r = gpnerve(dir.path(), &["check", "missing.json"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("missing.json"));
    fs::write(dir.path().join("broken.json"), "{\n  \"a\": [1,\n").unwrap();
    let r = gpnerve(dir.path(), &["check", "broken.json"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 3"), "{}", r.stderr);
    let mut doc = read(dir.path(), "a.json");
    doc["objects"] = Value::from(7);
    write(dir.path(), "schema.json", &doc);
    let r = gpnerve(dir.path(), &["check", "schema.json"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("objects"), "{}", r.stderr);
}

#[test]
fn corrupted_differential_names_the_block() {
    let dir = setup();
    let mut doc = read(dir.path(), "a.json");
    let block = &mut doc["differential"][0];
    let (source, target) = (block["source"].as_str().unwrap().to_owned(), block["target"].as_str().unwrap().to_owned());
    block["matrix"][0][0] = Value::from("5");
    write(dir.path(), "bad.json", &doc);
    let r = gpnerve(dir.path(), &["check", "bad.json", "--format", "json"]);
    assert_eq!(r.code, 1);
    let report: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(report["ok"], false);
    let violations = report["violations"].as_array().unwrap();
    assert!(!violations.is_empty());
    assert!(violations
        .iter()
        .any(|v| v.as_str().unwrap().contains(&format!("({source}, {target}"))));
}

#[test]
fn outer_horn_on_a_non_equivalence_names_the_edge() {
    let dir = setup();
    let r = gpnerve(
        dir.path(),
        &["sample", "--fixture", "A", "--n", "2", "--k", "0", "--seed", "1", "--category-ref", "a.json", "--out", "h.json"],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    let mut horn = read(dir.path(), "h.json");
    let edge = horn["cells"]["0,1"].as_array().unwrap().len();
    horn["cells"]["0,1"] = Value::from(vec!["0"; edge]);
    write(dir.path(), "h0.json", &horn);
    assert_eq!(gpnerve(dir.path(), &["check", "h0.json"]).code, 0);
    let r = gpnerve(dir.path(), &["fill", "h0.json"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("edge (0,1)") || r.stderr.contains("edge (0,1)"), "{}{}", r.stdout, r.stderr);
}

#[test]
fn inner_filler_has_zero_top() {
    let dir = setup();
    for seed in ["1", "2", "3"] {
        gpnerve(
            dir.path(),
            &["sample", "--fixture", "B", "--n", "3", "--k", "2", "--seed", seed, "--category-ref", "b.json", "--out", "h.json"],
        );
        let r = gpnerve(dir.path(), &["fill", "h.json", "--out", "f.json"]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        let filler = read(dir.path(), "f.json");
        assert_eq!(filler["k"], 2);
        let cells = filler["cells"].as_object().unwrap();
        assert_eq!(cells.keys().collect::<Vec<_>>(), ["0,1,3", "0,1,2,3"]);
        assert!(cells["0,1,2,3"].as_array().unwrap().iter().all(|v| v == "0"));
    }
}

#[test]
fn reduced_fill_then_lift() {
    let dir = setup();
    for (k, seed) in [("0", "3"), ("1", "4"), ("2", "5")] {
        let r = gpnerve(
            dir.path(),
            &["sample", "--fixture", "twisted1", "--n", "2", "--k", k, "--seed", seed, "--out", "h.json"],
        );
        assert_eq!(r.code, 0, "{}", r.stderr);
        assert_eq!(gpnerve(dir.path(), &["fill", "h.json", "--reduce", "--out", "f0.json"]).code, 0);
        let r = gpnerve(dir.path(), &["lift", "h.json", "f0.json", "--out", "f.json"]);
        assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
        assert_eq!(gpnerve(dir.path(), &["check", "h.json"]).code, 0);
    }
}

#[test]
fn lift_over_the_rationals_is_the_identity() {
    let dir = setup();
    gpnerve(
        dir.path(),
        &["sample", "--fixture", "A", "--n", "2", "--k", "0", "--seed", "3", "--category-ref", "a.json", "--out", "h.json"],
    );
    assert_eq!(gpnerve(dir.path(), &["fill", "h.json", "--reduce", "--out", "f0.json"]).code, 0);
    let r = gpnerve(dir.path(), &["lift", "h.json", "f0.json", "--out", "f.json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(read(dir.path(), "f.json"), read(dir.path(), "f0.json"));
}

#[test]
fn mutated_sign_is_caught() {
    let dir = tempfile::tempdir().unwrap();
    let r = gpnerve(
        dir.path(),
        &["laws", "--fixture", "A", "--trials", "12", "--mutate-sign", "--format", "json"],
    );
    assert_eq!(r.code, 1);
    let report: Value = serde_json::from_str(&r.stdout).unwrap();
    let failed: u64 = report["laws"].as_array().unwrap().iter().map(|l| l["failed"].as_u64().unwrap()).sum();
    assert!(failed > 0);
    let r = gpnerve(dir.path(), &["laws", "--fixture", "A", "--trials", "12"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
}

#[test]
fn gp_sweep_reports() {
    let dir = tempfile::tempdir().unwrap();
    let r = gpnerve(
        dir.path(),
        &["gp", "--fixture", "B", "--n", "3", "--k", "3", "--trials", "4", "--format", "json"],
    );
    assert_eq!(r.code, 0, "{}", r.stdout);
    let report: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(report["passed"], 4);
    assert_eq!(gpnerve(dir.path(), &["gp", "--fixture", "B", "--n", "1", "--k", "0"]).code, 2);
}
