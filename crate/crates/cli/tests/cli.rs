use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hexapod-cli")).args(args).output().expect("binary runs")
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("hexapod-cli-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

const EXAMPLE_A: &str = r#"[[0,0,0],[2,0,0],[3,2,0],[2,3,1],[1,2,2],[3,1,3]]"#;

#[test]
fn gamma_of_the_example_is_one() {
    let o = cli(&["gamma", "--fixture", "example"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(report(&o)["report"]["gammas"], serde_json::json!(["1"]));
}

#[test]
fn verify_counts_fourteen() {
    let o = cli(&["verify", "--fixture", "example"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(report(&o)["report"]["matched_directions"], 14);
}

#[test]
fn motion_reports_decic_and_writes_csv() {
    let dir = scratch("motion");
    let o = cli(&["motion", "--fixture", "example", "--out", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(report(&o)["report"]["j_degree"], 10);
    let csv = std::fs::read_to_string(dir.join("trajectory.csv")).unwrap();
    assert!(csv.lines().count() > 200);
    assert!(dir.join("motion.json").exists());
}

#[test]
fn reports_are_deterministic() {
    let a = cli(&["moebius", "--fixture", "tuple-a"]);
    let b = cli(&["moebius", "--fixture", "tuple-a"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn input_errors_exit_one() {
    let dir = scratch("bad");
    let cases = [
        ("malformed.json", r#"{"base": [[0,0,0]"#.to_string()),
        ("short.json", r#"{"base": [[0,0,0],[1,0,0]]}"#.to_string()),
        ("dup.json", r#"{"base": [[0,0,0],[0,0,0],[3,2,0],[2,3,1],[1,2,2],[3,1,3]]}"#.to_string()),
        ("rat.json", r#"{"base": [[0,0,"1/0"],[2,0,0],[3,2,0],[2,3,1],[1,2,2],[3,1,3]]}"#.to_string()),
        ("noplatform.json", format!(r#"{{"base": {EXAMPLE_A}}}"#)),
    ];
    for (name, text) in cases {
        let p = dir.join(name);
        std::fs::write(&p, text).unwrap();
        let o = cli(&["verify", "--input", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(1), "{name}");
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(cli(&["gamma"]).status.code(), Some(1));
    assert_eq!(cli(&["gamma", "--fixture", "example", "--precision", "64"]).status.code(), Some(1));
}

#[test]
fn mathematical_failure_exits_two() {
    let dir = scratch("equiform");
    let p = dir.join("same.json");
    std::fs::write(&p, format!(r#"{{"base": {EXAMPLE_A}, "platform": {EXAMPLE_A}}}"#)).unwrap();
    let o = cli(&["gamma", "--input", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn family_instance_round_trips() {
    let dir = scratch("family");
    let o = cli(&["family", "order3", "--seed", "3", "--out", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    assert_eq!(r["report"]["symmetric"], true);
    let file = dir.join("hexapod.json");
    let emitted: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(emitted, r["report"]["hexapod"]);
    let m = cli(&["legs", "--input", file.to_str().unwrap()]);
    assert_eq!(m.status.code(), Some(0));
    let l = report(&m);
    assert_eq!(l["report"]["dimension"], 3);
    assert_eq!(l["report"]["input_legs_satisfy"], true);
}

#[test]
fn family_check_passes() {
    let o = cli(&["family", "lines", "--seed", "5", "--check"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    assert_eq!(report(&o)["report"]["check"]["gammas"], serde_json::json!(["-1"]));
}
