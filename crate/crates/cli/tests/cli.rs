//! End-to-end checks of the binary: command output, exit-code contract,
//! and byte-identical reruns.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_subgraph-census"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

#[test]
fn census_verify_matches_oracle() {
    let out = run(&["census", "--pattern", "c3", "--n", "4", "--m", "3", "--verify"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let json = stdout_json(&out);
    assert_eq!(json["exact"], "4");
    assert_eq!(json["verified"], true);
    assert_eq!(json["sg"][0]["count"], "16");
    assert_eq!(json["sg"][1]["count"], "4");
}

#[test]
fn census_edge_pattern_mass_sits_at_m() {
    let out = run(&["census", "--pattern", "k2", "--n", "5", "--m", "4", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.trim().lines().collect();
    assert_eq!(lines[0], "t,count");
    for (t, line) in lines[1..].iter().enumerate() {
        let expect = if t == 4 { "210" } else { "0" };
        assert_eq!(*line, format!("{t},{expect}"));
    }
}

#[test]
fn census_exit_codes() {
    // out of oracle bounds for --verify
    let out = run(&["census", "--pattern", "c3", "--n", "9", "--m", "3", "--verify"]);
    assert_eq!(out.status.code(), Some(4));
    // infeasible m
    let out = run(&["census", "--pattern", "c3", "--n", "4", "--m", "7"]);
    assert_eq!(out.status.code(), Some(3));
    // unknown pattern
    let out = run(&["census", "--pattern", "c9", "--n", "4", "--m", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn census_uses_the_table_cache() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["census", "--pattern", "c3", "--n", "5", "--m", "6"])
        .env("SUBGRAPH_CENSUS_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let cached: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(cached.len(), 1, "one cache file per pattern/bounds");
    // second run must agree byte for byte while reading the cache
    let again = bin()
        .args(["census", "--pattern", "c3", "--n", "5", "--m", "6"])
        .env("SUBGRAPH_CENSUS_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn degseq_reports_the_saddle_summary() {
    let out = run(&["degseq", "--degrees", "1,3", "--edge-ratio", "2", "--n", "100"]);
    assert!(out.status.success());
    let json = stdout_json(&out);
    assert!((json["chi"].as_f64().unwrap() - 6f64.sqrt()).abs() < 1e-9);
    assert!((json["rho"].as_f64().unwrap() - 1.5).abs() < 1e-9);
    assert!((json["lambdas"][0]["lambda"].as_f64().unwrap() - 0.5625).abs() < 1e-9);
    assert!(json["mg"].is_string()); // 2m = 200 within the exact limit
}

#[test]
fn degseq_boundary_ratio_is_refused() {
    let out = run(&["degseq", "--degrees", "1,3", "--edge-ratio", "3", "--n", "100"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["degseq", "--degrees", "1,3", "--edge-ratio", "4", "--n", "100"]);
    assert_eq!(out.status.code(), Some(3));
}

fn read(path: &Path) -> Vec<u8> {
    std::fs::read(path).unwrap()
}

#[test]
fn sample_gnm_outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for out in [&a, &b] {
        let res = run(&[
            "sample", "gnm", "--pattern", "c3", "--n", "60", "--c", "0.5", "--samples", "400",
            "--seed", "9", "--out", out.to_str().unwrap(),
        ]);
        assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    }
    let csv = "gnm_c3_n60_m30_s9_c3.csv";
    let json = "gnm_c3_n60_m30_s9.json";
    assert_eq!(read(&a.join(csv)), read(&b.join(csv)));
    assert_eq!(read(&a.join(json)), read(&b.join(json)));
    let sidecar: serde_json::Value =
        serde_json::from_slice(&read(&a.join(json))).unwrap();
    assert_eq!(sidecar["model"], "gnm");
    assert_eq!(sidecar["rng_algorithm"], "chacha8");
    assert!((sidecar["lambda_target"][0].as_f64().unwrap() - 1.0 / 6.0).abs() < 1e-12);
    assert!(sidecar["tv_distance"][0].as_f64().is_some());
}

#[test]
fn sample_with_zero_samples_writes_empty_histograms() {
    let dir = tempfile::tempdir().unwrap();
    let res = run(&[
        "sample", "gnm", "--pattern", "c3", "--n", "30", "--m", "15", "--samples", "0",
        "--seed", "1", "--out", dir.path().to_str().unwrap(),
    ]);
    assert!(res.status.success());
    let csv = read(&dir.path().join("gnm_c3_n30_m15_s1_c3.csv"));
    assert_eq!(String::from_utf8(csv).unwrap(), "t,count\n");
}

#[test]
fn sample_dc_writes_per_cycle_files() {
    let dir = tempfile::tempdir().unwrap();
    let res = run(&[
        "sample", "dc", "--degrees", "1,3", "--edge-ratio", "2", "--n", "50", "--cycles",
        "3,4", "--samples", "200", "--seed", "11", "--condition-simple", "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    let prefix = "dc_d1-3_n50_m50_s11_simple";
    for f in [
        format!("{prefix}_cycle3.csv"),
        format!("{prefix}_cycle4.csv"),
        format!("{prefix}.json"),
    ] {
        assert!(dir.path().join(&f).exists(), "{f} missing");
    }
    let sidecar: serde_json::Value =
        serde_json::from_slice(&read(&dir.path().join(format!("{prefix}.json")))).unwrap();
    assert_eq!(sidecar["condition_simple"], true);
    assert!(sidecar["acceptance_rate"].as_f64().unwrap() > 0.0);
    assert!(sidecar["independence_gap"].as_f64().is_some());
    assert_eq!(sidecar["lambda_target"].as_array().unwrap().len(), 2);
}

#[test]
fn sample_dc_infeasible_parameters_exit_3() {
    let out = run(&[
        "sample", "dc", "--degrees", "1,3", "--m", "2", "--n", "3", "--cycles", "3",
        "--samples", "10", "--seed", "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
}
