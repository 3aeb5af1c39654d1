use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_germlab")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn file(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn exponent_of_the_running_example() {
    let v = json(&["exponent", &file("running.json")]);
    assert_eq!(v["l0"], "18/5");
    assert_eq!(v["m0"], 18);
    assert_eq!(v["per_coordinate"]["z1"], "1/2");
    assert_eq!(v["per_coordinate"]["z2"], "1/3");
    assert_eq!(v["per_coordinate"]["z3"], "5/18");
    assert_eq!(v["lemma11_equality"], false);
}

#[test]
fn multiplicity_and_leading_ideal() {
    let v = json(&["multiplicity", &file("diagonal.json")]);
    assert_eq!(v["m0"], 24);
    assert_eq!(v["leading_ideal"].as_array().unwrap().len(), 3);
}

#[test]
fn charpoly_reports_the_path() {
    let v = json(&["charpoly", &file("running.json"), "--h", "z1"]);
    assert_eq!(v["derivation"], "eliminant");
    assert_eq!(v["exact"], true);
    assert_eq!(v["degree"], 18);
    assert_eq!(v["power"], 9);
    assert_eq!(v["relative_exponent"], "1/2");
    let v = json(&["charpoly", &file("cusp_pair.json"), "--h", "x + y"]);
    assert_eq!(v["degree"], 5);
    let v = json(&["charpoly", &file("jump_f1.json"), "--h", "z1", "--truncation", "1"]);
    assert_eq!(v["derivation"], "hensel");
    assert_eq!(v["exact"], false);
    assert_eq!(v["truncation"], 1);
    assert_eq!(v["relative_exponent"], "1");
}

#[test]
fn polygon_output() {
    let v = json(&["polygon", &file("running.json"), "--h", "z3"]);
    assert_eq!(v["polygon"]["vertices"], serde_json::json!([[0, 5], [18, 0]]));
    assert_eq!(v["characteristic_polygon"]["vertices"], serde_json::json!([[0, 18], [5, 0]]));
    assert_eq!(v["theta"], "5/18");
    assert_eq!(v["last_edge_inclination"], "18/5");
    let v = json(&["polygon", &file("jump_f1.json"), "--h", "z3"]);
    assert_eq!(v["derivation"], "local_algebra");
    assert_eq!(v["relative_exponent"], "1/9");
}

#[test]
fn arcs() {
    let v = json(&["arc", &file("running.json"), "--arc", "s^9,s^6,s^5"]);
    assert_eq!(v["quotient"], "18/5");
    assert_eq!(v["attains_l0"], true);
    let v = json(&["arc", &file("cusp_pair.json")]);
    assert_eq!(v["l0"], "3");
    let q: Vec<&str> = v["arcs"].as_array().unwrap().iter().map(|a| a["quotient"].as_str().unwrap()).collect();
    assert_eq!(q, ["5/2", "2", "3"]);
    let out = run(&["arc", &file("running.json"), "--arc", "s,s"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn deform_and_prop23() {
    let v = json(&["deform", &file("mconst_family.json")]);
    assert_eq!(v["thm21_holds"], true);
    assert_eq!(v["thm41_holds"], true);
    assert_eq!(v["thm52_holds"], true);
    assert_eq!(v["constancy_at_nonzero"], true);
    assert_eq!(v["samples"][0]["l0"], "2");
    assert!(v["note"].as_str().unwrap().contains("samples"));
    let v = json(&["deform", &file("jump_family.json")]);
    assert_eq!(v["multiplicity_constant"], false);
    assert_eq!(v["thm21_holds"], "NOT-APPLICABLE");
    let v = json(&["prop23", &file("rankfam_family.json"), "--samples", "1;1/2"]);
    assert_eq!(v["holds"], true);
    assert_eq!(v["samples"][0]["l0"], "3");
    let a = json(&["deform", &file("mconst_family.json"), "--random-samples", "2", "--seed", "7"]);
    let b = json(&["deform", &file("mconst_family.json"), "--random-samples", "2", "--seed", "7"]);
    assert_eq!(a, b);
    assert_eq!(a["samples"].as_array().unwrap().len(), 3);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code();
    assert_eq!(code(&["multiplicity", &file("non_isolated.json")]), Some(3));
    assert_eq!(code(&["multiplicity", &file("bad_length.json")]), Some(2));
    assert_eq!(code(&["multiplicity", &file("missing.json")]), Some(2));
    assert_eq!(code(&["charpoly", &file("jump_f1.json"), "--h", "z3"]), Some(4));
    assert_eq!(code(&["prop23", &file("jump_family.json")]), Some(4));
    assert_eq!(code(&["multiplicity", &file("mconst_family.json")]), Some(2));
    assert_eq!(code(&["deform", &file("mconst_family.json"), "--random-samples", "2"]), Some(2));
    let out = run(&["multiplicity", &file("bad_name.json")]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3, column 27"), "{err}");
}
