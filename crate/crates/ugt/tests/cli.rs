use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn ugt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ugt")).args(args).output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ugt-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn validate_passes_fixtures_and_locates_failures() {
    let o = ugt(&["validate", &fixture("ex1_initial.game")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("U0     ok"));

    let src = std::fs::read_to_string(fixture("ex1_initial.game")).unwrap();
    let bad = tmp("u0.game");
    std::fs::write(&bad, src.replace("info 1 T r at r@T r@Tbar", "info 1 Tbar r at r@T r@Tbar")).unwrap();
    let o = ugt(&["--json", "validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&o.stderr);
    assert!(stderr.contains(":16:1: U0 failed at r@T player 1"), "{stderr}");
    let v = json(&o);
    let u0 = v["checks"].as_array().unwrap().iter().find(|c| c["axiom"] == "U0").unwrap();
    assert_eq!(u0["passed"], false);
}

#[test]
fn malformed_input_is_an_error() {
    let bad = tmp("bad.game");
    std::fs::write(&bad, "players 1\nnode r 1=a\n  a -> z\nleaf z x\n").unwrap();
    let o = ugt(&["efr", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("4:8"));
    assert_eq!(ugt(&["efr", "/nonexistent.game"]).status.code(), Some(2));
}

#[test]
fn efr_reports_the_limit() {
    let o = ugt(&["--json", "efr", &fixture("ex1_initial.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["result"]["1"], serde_json::json!(["P1{r}@T=l1"]));
    let o = ugt(&["--json", "efr", "--trace", &fixture("ex1_initial.game")]);
    assert!(json(&o)["rounds"].as_array().unwrap().len() >= 2);
}

#[test]
fn sce_verdicts_set_the_exit_code() {
    let o = ugt(&["--json", "sce", &fixture("ex1_initial.game"), "--mode", "behavior"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["holds"], false);
    assert_eq!(v["violated_condition"], "awareness");

    let o = ugt(&["--json", "sce", &fixture("ex1_discovered.game"), "--mode", "efr"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["holds"], true);
}

#[test]
fn constructed_profiles_check_again_from_a_file() {
    let o = ugt(&["--json", "construct-sce", &fixture("bos_repeated_discovered.game")]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["verdict"]["holds"], true);
    let prof = tmp("profile.json");
    std::fs::write(&prof, serde_json::to_string(&v["profile"]).unwrap()).unwrap();
    let o =
        ugt(&["sce", &fixture("bos_repeated_discovered.game"), "--mode", "efr", "--profile", prof.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn discovery_and_supergame() {
    let o = ugt(&["--json", "discover", &fixture("ex1_initial.game"), "--policy", "efr"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = ugt(&["discover", &fixture("ex2_initial.game"), "--policy", "all", "--steps-out", "dot"]);
    assert!(String::from_utf8_lossy(&dot.stdout).starts_with("digraph"));

    let out = tmp("sg.dot");
    let o =
        ugt(&["--json", "supergame", &fixture("ex2_initial.game"), "--policy", "efr", "--dot", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let labels: Vec<&str> = v["states"].as_array().unwrap().iter().map(|s| s["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["ex2_initial", "ex2_rsc"]);
    assert!(std::fs::read_to_string(out).unwrap().contains("ex2_rsc"));
}

#[test]
fn export_round_trips() {
    let o = ugt(&["export", &fixture("fig14.game"), "--format", "canonical-json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8(o.stdout).unwrap(), std::fs::read_to_string(fixture("fig14.json")).unwrap());
    let o = ugt(&["export", &fixture("fig14.json"), "--format", "dot"]);
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("digraph"));
}

#[test]
fn the_enumeration_cap_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_ugt"))
        .args(["sce", &fixture("bos_repeated.game"), "--mode", "behavior"])
        .env("UGT_ORACLE_CAP", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap of 0"));
}
