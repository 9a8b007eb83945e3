use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use milnor::{examples, StrataModel};
use serde_json::{json, Value};

fn models() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models")
}

fn model(name: &str) -> String {
    models().join(name).display().to_string()
}

fn milnor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_milnor"))
        .args(args)
        .env_remove("MILNOR_MAX_D")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON output")
}

fn temp(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

fn path(f: &tempfile::NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

#[test]
fn documented_examples() {
    assert_eq!(
        json_of(&milnor(&["homology", &model("node.json")])),
        json!({"H": [{"rank": 1, "torsion": []}]})
    );
    assert_eq!(json_of(&milnor(&["motivic", &model("i2.json")])), json!({"class": {}, "euler": 0}));
    assert_eq!(json_of(&milnor(&["series", "lim((gen(1,1))[2])"])), json!({"class": {"0": 1}}));
}

#[test]
fn complex_counts_and_dot() {
    let v = json_of(&milnor(&["complex", &model("node.json")]));
    assert_eq!(v["cells"], json!([2, 1]));
    let dot = milnor(&["complex", "--dot", &model("i3.json")]);
    let text = String::from_utf8(dot.stdout).unwrap();
    assert!(text.starts_with("graph dual {"));
    assert_eq!(text.matches(" -- ").count(), 3);
    assert_eq!(milnor(&["homology", "--dot", &model("node.json")]).status.code(), Some(2));
}

#[test]
fn emitted_model_reparses_to_the_same_model() {
    for m in [examples::node(), examples::kodaira_cycle(4), examples::triple_point(), examples::chain_with_classes()] {
        let f = temp(&serde_json::to_string(&m.to_raw()).unwrap());
        let out = milnor(&["complex", "--emit-model", path(&f)]);
        assert!(out.status.success());
        let back = StrataModel::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
        assert_eq!(back, m);
    }
}

#[test]
fn long_exact_sequence() {
    let v = json_of(&milnor(&["les", &model("i3.json"), "--E", "E0"]));
    assert_eq!(v["exact"], json!(true));
    let unknown = milnor(&["les", &model("i3.json"), "--E", "Z"]);
    assert_eq!(unknown.status.code(), Some(1));
}

#[test]
fn retract_prints_rounded_points() {
    let v = json_of(&milnor(&["retract", &model("node.json"), &model("node_point.json")]));
    assert_eq!(v["skeleton"]["barycentric"]["A"], json!(0.514573172533));
    assert_eq!(v["output"]["barycentric"], json!({"stratum": "sA", "barycentric": {"A": 1.0}}));
    let off_e = temp(r#"{"stratum": "sB", "values": {"B": 0.0}, "E": ["A"]}"#);
    assert_eq!(milnor(&["retract", &model("node.json"), path(&off_e)]).status.code(), Some(1));
    let missing = temp(r#"{"values": {"B": 0.0}, "E": ["A"]}"#);
    assert_eq!(milnor(&["retract", &model("node.json"), path(&missing)]).status.code(), Some(2));
}

#[test]
fn motivic_volume_and_model_comparison() {
    let v = json_of(&milnor(&["motivic", &model("node.json"), "--d-rel", "1"]));
    assert_eq!(v["class"], json!({"0": -1, "1": 1}));
    assert_eq!(v["volume"], json!({"-1": -1, "0": 1}));
    let c = json_of(&milnor(&["compare-models", &model("i2.json"), &model("i2_refined.json")]));
    assert_eq!(c["equal"], json!(true));
}

#[test]
fn cocubical_reports() {
    let v = json_of(&milnor(&["cocubical", &model("circle_cover.json")]));
    assert_eq!(v["quasi_iso"], json!(true));
    assert_eq!(v["simple"]["cohomology"], json!([1, 1, 0]));
    let s = json_of(&milnor(&["cocubical", &model("two_point_system.json")]));
    assert_eq!(s["simple"]["cohomology"], json!([1, 0]));
}

#[test]
fn exit_codes() {
    let malformed = temp("{\"components\": [\"A\"],");
    assert_eq!(milnor(&["validate", path(&malformed)]).status.code(), Some(2));
    let inconsistent = temp(
        r#"{"components": ["A", "B"], "strata": [
            {"id": "sA", "psi": ["A"]},
            {"id": "sAB", "psi": ["A", "B"], "faces": {"A": "sA", "B": "sA"}}]}"#,
    );
    assert_eq!(milnor(&["validate", path(&inconsistent)]).status.code(), Some(1));
    assert_eq!(milnor(&["validate", "/nonexistent/model.json"]).status.code(), Some(2));
    assert_eq!(milnor(&["series", "gen(1,"]).status.code(), Some(2));
    assert_eq!(milnor(&["series", "lim(T)"]).status.code(), Some(1));
    // No classes attached.
    assert_eq!(milnor(&["motivic", &model("triple_point.json")]).status.code(), Some(1));
}

#[test]
fn extraction_cap_comes_from_the_environment() {
    let run = |cap: &str| {
        Command::new(env!("CARGO_BIN_EXE_milnor"))
            .args(["series", "lim((gen(1,1))[3])"])
            .env("MILNOR_MAX_D", cap)
            .output()
            .unwrap()
    };
    assert_eq!(run("2").status.code(), Some(1));
    assert!(run("3").status.success());
    assert_eq!(run("zero").status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["les", &model("i2_refined.json"), "--E", "E0,C"];
    let a = milnor(&args);
    let b = milnor(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
