use std::process::Command;

use serde_json::Value;

fn surfconf(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_surfconf")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = surfconf(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn homology_of_two_points_on_a_torus() {
    let v = json(&["homology", "-g", "1", "-n", "2"]);
    let betti: Vec<u64> = (0..=4).map(|i| v["betti"][i.to_string()].as_u64().unwrap()).collect();
    assert_eq!(betti, vec![1, 4, 5, 0, 0]);
    assert_eq!(v["input"], "homology -g 1 -n 2");
    assert!(v["version"].is_string());
}

#[test]
fn oracle_matches_homology_report() {
    let a = json(&["homology", "-g", "1", "-n", "2"]);
    let b = json(&["oracle", "-g", "1", "-n", "2"]);
    assert_eq!(a["betti"], b["betti"]);
    assert_eq!(a["torsion"], b["torsion"]);
    let w = json(&["oracle", "-g", "1", "-n", "2", "--model", "wedge"]);
    assert_eq!(w["betti"]["2"], 6);
}

#[test]
fn guardrail_and_override() {
    let (code, _, err) = surfconf(&["oracle", "-g", "0", "-n", "3"]);
    assert_eq!(code, 2);
    assert!(err.contains("22807"), "{err}");
    let v = json(&["oracle", "-g", "0", "-n", "3", "--max-surface-points", "3"]);
    assert_eq!(v["betti"]["1"], 3);
    assert_eq!(v["guardrail"]["max_surface_points"], 3);
}

#[test]
fn rank_and_depth_examples() {
    assert_eq!(json(&["mor-rank", "-g", "2", "-n", "3"])["rank"], 120);
    assert_eq!(json(&["johnson-depth", "-g", "1", "--class", "Td", "-D", "4"])["depth"], 2);
    let (_, text, _) = surfconf(&["johnson-depth", "-g", "1", "--class", "Td", "-D", "4", "--format", "text"]);
    assert_eq!(text.trim(), "2");
}

#[test]
fn mor_action_report() {
    let v = json(&["mor-action", "-g", "1", "-n", "2", "--class", "Td"]);
    assert_eq!(v["identity"], true);
    assert_eq!(v["basis"].as_array().unwrap().len(), 6);
    assert_eq!(v["matrix"].as_array().unwrap().len(), 6);
    let c = json(&["mor-action", "-g", "1", "-n", "2", "--class", "Ta1 Tb1", "--method", "combinatorial"]);
    let s = json(&["mor-action", "-g", "1", "-n", "2", "--class", "Ta1 Tb1"]);
    assert_eq!(c["matrix"], s["matrix"]);
}

#[test]
fn verify_report_schema() {
    let v = json(&["verify", "-g", "2", "-n", "3", "--class", "Tsep1", "-i", "2"]);
    assert_eq!(v["phi"], "Tsep1");
    assert!(v["depth"].as_u64().unwrap() >= 2);
    assert_eq!((v["n"].as_u64(), v["g"].as_u64()), (Some(3), Some(2)));
    for i in 0..=2 {
        assert_eq!(v["H"][i.to_string()]["identity"], true);
    }
    assert_eq!(v["H"]["3"]["identity"], false);
}

#[test]
fn act_and_probe() {
    let v = json(&["act", "-g", "1", "-n", "1", "--class", "Ta1"]);
    assert_eq!(v["H"]["1"]["identity"], false);
    assert_eq!(v["H"]["1"]["matrix"].as_array().unwrap().len(), 2);
    let p = json(&["conjecture-probe", "-g", "1", "-n", "2", "--class", "Td", "--class", "Ta1"]);
    let classes = p["classes"].as_array().unwrap();
    assert_eq!(classes[0]["trivial_through"], 4);
    assert_eq!(classes[1]["trivial_through"], 0);
}

#[test]
fn formats_and_output_file() {
    let (_, csv, _) = surfconf(&["homology", "-g", "0", "-n", "3", "--format", "csv"]);
    assert!(csv.starts_with("degree,betti,torsion\n0,1,\n1,3,\n2,2,"));
    let dir = std::env::temp_dir().join(format!("surfconf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cells.json");
    let (code, out, _) = surfconf(&["cells", "-g", "1", "-n", "1", "--list", "-o", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["cells"].as_array().unwrap().len(), 3);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn reports_are_deterministic() {
    let args = ["act", "-g", "2", "-n", "2", "--class", "Ta1 Tsep1"];
    assert_eq!(surfconf(&args).1, surfconf(&args).1);
}

#[test]
fn exit_codes() {
    assert_eq!(surfconf(&["bogus"]).0, 2);
    assert_eq!(surfconf(&["homology", "-g", "1"]).0, 2);
    assert_eq!(surfconf(&["act", "-g", "1", "-n", "1", "--class", "Ta3"]).0, 2);
    assert_eq!(surfconf(&["act", "-g", "1", "-n", "1", "--class", "endo: a1-> x1"]).0, 2);
    assert_eq!(surfconf(&["--version"]).0, 0);
}
