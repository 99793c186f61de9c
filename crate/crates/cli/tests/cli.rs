use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const KITE: &str = env!("CARGO_BIN_EXE_kite");

fn data(name: &str) -> String {
    format!("{}/../core/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(KITE).args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(KITE)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn classify_cyclic_group() {
    let out = run(&["classify", &data("z3.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], "holds");
}

#[test]
fn classify_meet_semilattice_fails_with_witness() {
    let out = run(&["classify", &data("meet2.json")]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(r["verdict"], "fails");
    assert_eq!(r["details"][0]["witness"], serde_json::json!([0, 1, 0]));
}

#[test]
fn finite_sets_above_one_are_not_weakly_maltsev() {
    assert_eq!(run(&["wm-object", "--size", "1"]).status.code(), Some(0));
    let out = run(&["wm-object", "--size", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn groupoid_kite_has_four_solutions() {
    let out = run(&["kite", "solve", &data("groupoid_kite.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["verdict"], "count:4");
    assert_eq!(run(&["kite", "check", &data("groupoid_kite.json")]).status.code(), Some(0));
}

#[test]
fn malformed_input_names_the_field() {
    let mut k: Value = serde_json::from_str(&std::fs::read_to_string(data("groupoid_kite.json")).unwrap()).unwrap();
    k["alpha"]["table"][0] = 9.into();
    let out = run_stdin(&["kite", "check", "-"], &k.to_string());
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("`alpha`") && err.contains("table[0]"), "{err}");
    let out = run_stdin(&["validate", "-"], "{\"kind\": \"nonsense\"}");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn built_kites_validate() {
    let out = run(&["kite", "build", "--from", "cat", &data("z2_groupoid.json")]);
    assert_eq!(out.status.code(), Some(0));
    let mut kite = json(&out)["structure"].clone();
    kite["kind"] = "directed_kite".into();
    let v = run_stdin(&["validate", "-"], &kite.to_string());
    assert_eq!(v.status.code(), Some(0), "{}", String::from_utf8_lossy(&v.stderr));
    assert_eq!(json(&v)["verdict"], "holds");
}

#[test]
fn variety_kite_asset_validates() {
    let out = run(&["validate", &data("meet_witness_kite.json")]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn output_is_byte_stable() {
    let args = ["kite", "solve", &data("groupoid_kite.json")];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["relations", &data("z3.json")];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn maltsev_operation_of_z3() {
    let out = run(&["maltsev-op", &data("z3.json"), "2", "1", "0"]);
    assert_eq!(out.status.code(), Some(0));
    // 2 - 1 + 0
    assert_eq!(json(&out)["structure"]["p"], 1);
}

#[test]
fn ismember_one_based() {
    let out = run(&["ismember", "[1,3,2]", "[2,1]", "--one-based"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["structure"];
    assert_eq!(r["flags"], serde_json::json!([true, false, true]));
    // 0 marks absence in the one-based reading
    assert_eq!(r["positions"], serde_json::json!([2, 0, 1]));
}

#[test]
fn human_output() {
    let out = run(&["--human", "classify", &data("z3.json")]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.to_lowercase().contains("holds"), "{text}");
    assert!(serde_json::from_str::<Value>(&text).is_err());
}

#[test]
fn schemas_are_json() {
    for name in ["finmap", "span", "directed-kite", "structure", "variety-kite", "report"] {
        let out = run(&["--schema", name]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        assert!(json(&out).get("$schema").is_some(), "{name}");
    }
}
