use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quatwit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn gen(dir: &TempDir, name: &str, args: &[&str]) -> String {
    let mut all = vec!["gen"];
    all.extend_from_slice(args);
    let o = run(&all);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    write(dir, name, &stdout(&o))
}

fn param_counts(encoded: &str) -> Vec<usize> {
    encoded
        .lines()
        .map(|l| {
            let v: serde_json::Value = serde_json::from_str(l).unwrap();
            v["witness"]["params"].as_array().unwrap().len()
        })
        .collect()
}

#[test]
fn gen_is_deterministic() {
    let a = run(&["gen", "--category", "QH-", "--n", "3", "--count", "10", "--seed", "7"]);
    let b = run(&["gen", "--category", "QH-", "--n", "3", "--count", "10", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 10);
}

#[test]
fn encode_lengths() {
    let dir = TempDir::new().unwrap();
    let f = gen(&dir, "plus.jsonl", &["--category", "QH+", "--n", "3", "--count", "3", "--seed", "1"]);
    let o = run(&["encode", &f]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(param_counts(&stdout(&o)), vec![4, 4, 4]);
    let f = gen(&dir, "minus.jsonl", &["--category", "QH-", "--n", "5", "--count", "2", "--seed", "1", "--height", "5"]);
    let o = run(&["encode", &f, "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(param_counts(&stdout(&o)), vec![12, 12]);
}

#[test]
fn malformed_file_exits_2() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.jsonl", "{\"version\":\"1\",\n");
    let o = run(&["encode", &f]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("PARSE_ERROR"));
    let o = run(&["encode", dir.path().join("missing").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn decode_c1_and_invalid() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c1.jsonl", r#"{"category":"C1","n":1,"params":["-1","-1"]}"#);
    let o = run(&["decode", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), r#"{"version":"1","category":"C1","n":1,"payload":{"algebra":{"a":"-1","b":"-1","base":"Q"}}}"#);
    // ac² + b = 0
    let f = write(&dir, "bad.jsonl", r#"{"category":"QH-","n":3,"params":["1","-1","1","0","0","1"]}"#);
    let o = run(&["decode", &f]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("WITNESS_INVALID"));
}

#[test]
fn verify_matching_and_foreign() {
    let dir = TempDir::new().unwrap();
    let inst = gen(&dir, "a.jsonl", &["--category", "C1", "--count", "4", "--seed", "11"]);
    let enc = run(&["encode", &inst]);
    let wit = write(&dir, "a.wit", &stdout(&enc));
    let o = run(&["verify", &inst, &wit]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(report["passed"], 4);

    // the same witnesses against a fixed instance ramified at {2, ∞} only match some lines
    let hamilton = r#"{"version":"1","category":"C1","n":1,"payload":{"algebra":{"a":"-1","b":"-1","base":"Q"}}}"#;
    let other = write(&dir, "h.jsonl", &format!("{hamilton}\n").repeat(4));
    let o = run(&["verify", &other, &wit]);
    let report: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let failed = report["failed"].as_u64().unwrap();
    assert_eq!(o.status.code(), Some(if failed == 0 { 0 } else { 1 }));
    if failed > 0 {
        assert!(stderr(&o).contains("ramification"));
    }
}

#[test]
fn tampered_parameter_is_pinpointed() {
    let dir = TempDir::new().unwrap();
    let inst = gen(&dir, "s.jsonl", &["--category", "QH-", "--n", "3", "--count", "1", "--seed", "2", "--height", "4"]);
    let enc = stdout(&run(&["encode", &inst]));
    let mut v: serde_json::Value = serde_json::from_str(enc.trim()).unwrap();
    v["witness"]["params"][0] = serde_json::Value::String("0".into());
    let wit = write(&dir, "s.wit", &v.to_string());
    let o = run(&["verify", &inst, &wit]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("decode: WITNESS_INVALID"));
}

#[test]
fn c2_generation_encodes() {
    let dir = TempDir::new().unwrap();
    let inst = gen(&dir, "c2.jsonl", &["--category", "C2", "--count", "5", "--seed", "4", "--height", "6"]);
    let o = run(&["encode", &inst, "--timing"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(param_counts(&stdout(&o)), vec![4; 5]);
    assert!(stderr(&o).contains("µs"));
    assert!(Path::new(&inst).exists());
}

#[test]
fn unknown_category_is_a_usage_error() {
    let o = run(&["gen", "--category", "QH"]);
    assert_eq!(o.status.code(), Some(2));
}
