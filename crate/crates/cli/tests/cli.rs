//! End-to-end runs of the `gimso` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gimso"))
}

fn write_config(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gimso-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn matrix_of_affine_b3() {
    let cfg = write_config("b3.json", r#"{"rank":3,"adjoined":[{"root":[-1,-1,0],"copies":1}]}"#);
    let out = run(&["matrix", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["matrix"], serde_json::json!([[2, -1, 0, 0], [-1, 2, -1, -1], [0, -2, 2, 0], [0, -1, 0, 2]]));
    assert_eq!(v["summary"]["failed"], 0);
    assert_eq!(v["suites"][0]["name"], "matrix");
}

#[test]
fn verify_hom_with_no_adjoined_roots_as_text() {
    let cfg = write_config("plain.json", r#"{"rank":4,"suites":["hom"]}"#);
    let out = run(&["verify", "--config", cfg.to_str().unwrap(), "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[PASS] hom"), "{text}");
    assert!(text.contains("[SKIP] brackets"), "{text}");
}

#[test]
fn config_errors_exit_with_two() {
    for (body, code) in [
        (r#"{"rank":2}"#, "config.rank"),
        (r#"{"rank":3,"adjoined":[{"root":[1,0,0],"copies":1}]}"#, "config.unsupported_root"),
        (r#"{"rank":3,"#, "config.malformed"),
    ] {
        let cfg = write_config("bad.json", body);
        let out = run(&["verify", "--config", cfg.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2));
        assert!(String::from_utf8_lossy(&out.stderr).contains(code));
    }
    assert_eq!(run(&["verify"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn witness_subcommand() {
    let cfg =
        write_config("w.json", r#"{"rank":3,"adjoined":[{"root":[1,-1,0],"copies":1},{"root":[1,1,0],"copies":1}]}"#);
    let c = cfg.to_str().unwrap();
    let out = run(&[
        "witness",
        "--config",
        c,
        "--shape",
        "UR",
        "--indices",
        "2,3",
        "--monomial",
        "z[1,-1,0;1]^-1*x[1,1,0;1]",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["status"], "pass");
    assert!(v["expression"].as_str().unwrap().starts_with('['));

    let out = run(&["witness", "--config", c, "--shape", "VERT", "--indices", "2", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("[e_2, (1/2√2)·e_3]"));

    let out = run(&["witness", "--config", c, "--shape", "VERT", "--indices", "1", "--monomial", "w[1;1]"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["witness", "--config", c, "--shape", "VERT", "--indices", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn selftest_defaults_and_output_file() {
    let dir = std::env::temp_dir().join(format!("gimso-cli-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = run(&["selftest", "--trials", "20", "--seed", "5", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["config"]["trials"], 20);
    assert_eq!(v["config"]["seed"], 5);
    let selftest = &v["suites"][6];
    assert_eq!(selftest["name"], "selftest");
    assert_eq!(selftest["failed"], 0);
    assert!(selftest["passed"].as_u64().unwrap() >= 4);
}
