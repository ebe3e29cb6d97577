use std::path::PathBuf;
use std::process::{Command, Output};

use endomatroid::document::{parse_matrix_document, AnyModule, MatrixDocument};
use endomatroid::linalg::Level;
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_endomatroid"))
        .args(args)
        .env_remove("ENDOMATROID_DATA_DIR")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn matroid_of_kf() {
    let out = run(&["--json", "matroid", &path("kf.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["r"], 2);
    assert_eq!(v["bases"].as_array().unwrap().len(), 6);
}

#[test]
fn lindstrom_table_matches_corpus() {
    let out = run(&["--json", "valuation", "lindstrom", &path("kf.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let mu: Vec<Value> = ["1,2", "1,3", "1,4", "2,3", "2,4", "3,4"].iter().map(|k| v["mu"][*k].clone()).collect();
    assert_eq!(mu, [0, 0, 1, 0, 0, 0].map(Value::from).to_vec());
}

#[test]
fn dual_matches_printed_module() {
    let out = run(&["--json", "dual", &path("kf.json")]);
    assert_eq!(out.status.code(), Some(0));
    let (_, dual) = parse_matrix_document(&out.stdout).unwrap();
    let (_, printed) = parse_matrix_document(&std::fs::read(data("dual_printed.json")).unwrap()).unwrap();
    match (dual, printed) {
        (AnyModule::Skew(a), AnyModule::Skew(b)) => assert!(a.span_equal(&b, Level::Ring).unwrap()),
        _ => panic!("expected skew modules"),
    }
}

#[test]
fn module_output_round_trips() {
    let out = run(&["--json", "saturate", &path("toric.json")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = MatrixDocument::parse(&out.stdout).unwrap();
    let again = MatrixDocument::from_any(&doc.to_module().unwrap(), doc.index_base);
    assert_eq!(again.to_json_string(), doc.to_json_string());
}

#[test]
fn flock_check_and_full_check() {
    assert_eq!(run(&["flock", "check", &path("kf.json"), "--radius", "2"]).status.code(), Some(0));
    let out = run(&["--json", "check", &path("kf.json"), "--radius", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json_of(&out)["items"].as_array().unwrap().iter().all(|i| i["status"] == "pass"));
    let out = run(&["--json", "flock", "slice", &path("kf.json"), "--alpha", "0,0,0,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["cols"], 2);
}

#[test]
fn sampling() {
    for f in ["kf.json", "toric.json"] {
        let out = run(&["sample", "verify", "--module", &path(f), "--count", "50", "--seed", "7"]);
        assert_eq!(out.status.code(), Some(0), "{f}");
    }
}

#[test]
fn examples_subcommand() {
    let out = run(&["--json", "examples", "list"]);
    assert_eq!(json_of(&out).as_array().unwrap().len(), 7);
    let out = run(&["--json", "examples", "run", "kf_u24"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json_of(&out)["facts"].as_array().unwrap().iter().all(|f| f["pass"] == true));
    assert_eq!(run(&["examples", "run", "missing"]).status.code(), Some(2));
}

#[test]
fn data_directory_override() {
    let dir = std::env::temp_dir().join(format!("endomatroid-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let original = include_str!("../../core/data/toric.json");
    let broken = original.replace("\"value\": [0, 0, 0, 0, 0, 1]", "\"value\": [0, 0, 0, 0, 0, 2]");
    assert_ne!(original, broken);
    std::fs::write(dir.join("toric.json"), broken).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_endomatroid"))
        .args(["examples", "run", "toric"])
        .env("ENDOMATROID_DATA_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("[FAIL] lindstrom"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["matroid", &path("reducible.json")]).status.code(), Some(3));
    assert_eq!(run(&["matroid", &path("parity.json")]).status.code(), Some(3));
    assert_eq!(run(&["matroid", &path("bad_shape.json")]).status.code(), Some(2));
    assert_eq!(run(&["matroid", &path("no_such_file.json")]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let h = path("nonfano_hurwitz.json");
    let out = run(&["flock", "slice", &h, "--alpha", "0,0,0,0,0,0,0"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("hurwitz"));
    assert_eq!(run(&["sample", "verify", "--module", &h]).status.code(), Some(4));
    assert_eq!(run(&["matroid", &h]).status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    let a = run(&["--json", "valuation", "lindstrom", &path("nonfano_hurwitz.json")]);
    let b = run(&["--json", "--threads", "1", "valuation", "lindstrom", &path("nonfano_hurwitz.json")]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
