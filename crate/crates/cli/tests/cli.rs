use std::process::{Command, Output};

use serde_json::Value;

fn deodhar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deodhar")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = deodhar(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn decompose_identity_endpoint() {
    let v = json(&["decompose", "A", "2", "--word", "sts", "--v", "e"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["gamma"], "(1,1,1)");
    assert_eq!(rows[0]["shape"], "Gm^3");
    assert_eq!(rows[1]["gamma"], "(s,1,s)");
    assert_eq!(rows[1]["shape"], "Ga x Gm");
}

#[test]
fn decompose_all_endpoints() {
    let v = json(&["decompose", "A", "2", "--word", "sts", "--all-v"]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 7);
    let v = json(&["decompose", "A", "1", "--word", "s", "--v", "s"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!((rows[0]["n"].as_u64(), rows[0]["m"].as_u64()), (Some(0), Some(0)));
}

#[test]
fn decompose_errors() {
    let out = deodhar(&["decompose", "A", "2", "--word", "sst", "--v", "e"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not reduced"));
    let out = deodhar(&["decompose", "A", "2", "--word", "st", "--v", "ts"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    assert_eq!(deodhar(&["decompose", "E", "6", "--word", "s", "--v", "e"]).status.code(), Some(2));
}

#[test]
fn csv_has_header() {
    let out = deodhar(&["decompose", "A", "2", "--word", "sts", "--all-v", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("v,filtration_index,gamma,"));
    assert_eq!(text.lines().count(), 8);
}

#[test]
fn verify_suites_pass() {
    for args in [
        &["verify", "deodhar-vs-rpoly", "--type", "A", "--rank", "2"][..],
        &["verify", "flags", "--n", "3", "--q", "2"],
        &["verify", "vanishing", "--max-rank", "3"],
        &["verify", "gl3-example", "--q", "2", "--k", "2"],
        &["verify", "xq-models", "--max-order", "16"],
        &["verify", "e-psi"],
    ] {
        let out = deodhar(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));
    }
}

#[test]
fn verify_reports_every_pair() {
    let v = json(&["verify", "deodhar-vs-rpoly", "--type", "A", "--rank", "2"]);
    let rows = v["rows"].as_array().unwrap();
    // 19 comparable pairs v <= w in S_3
    assert_eq!(rows.iter().filter(|r| r["test"] == "deodhar-vs-rpoly").count(), 19);
    assert!(rows.iter().all(|r| r["match"] == true));
    let v = json(&["verify", "flags", "--n", "3", "--q", "2"]);
    let census = v["rows"].as_array().unwrap().iter().find(|r| r["test"] == "flag-census").unwrap().clone();
    assert_eq!(census["lhs"], "21");
}

#[test]
fn verify_exit_codes() {
    let out = deodhar(&["verify", "flags", "--n", "4", "--q", "32"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
    assert_eq!(deodhar(&["verify", "deodhar-vs-rpoly"]).status.code(), Some(2));
    assert_eq!(deodhar(&["verify", "no-such-suite"]).status.code(), Some(2));
}

#[test]
fn predict_examples() {
    let v = json(&["predict", "A", "2", "--word", "sts", "--split", "--q", "2"]);
    assert_eq!(v["shift"], 3);
    assert_eq!(v["survivor"][0], "000");
    assert_eq!(v["torus_order"], 3);
    assert_eq!(v["rows"].as_array().unwrap().len(), 6);
    let v = json(&["predict", "A", "1", "--word", "s", "--split", "--q", "3"]);
    assert_eq!((v["shift"].as_u64(), v["torus_order"].as_u64()), (Some(1), Some(8)));
    let v = json(&["predict", "A", "2", "--word", ""]);
    assert_eq!(v["shift"], 0);
}

#[test]
fn predict_rejects_non_regular_character() {
    let out = deodhar(&["predict", "A", "2", "--word", "sts", "--character", "1,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("simple root 2"));
}

#[test]
fn output_is_deterministic() {
    let run = |workers: &str| {
        Command::new(env!("CARGO_BIN_EXE_deodhar"))
            .args(["verify", "vanishing", "--max-rank", "2", "--format", "json"])
            .env("DEODHAR_WORKERS", workers)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("1"), run("3"));
    let bad = Command::new(env!("CARGO_BIN_EXE_deodhar")).args(["verify", "e-psi"]).env("DEODHAR_WORKERS", "0").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
