use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn octacover(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_octacover"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = octacover(args);
    let code = out.status.code().unwrap_or(-1);
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stderr)));
    (v, code)
}

#[test]
fn verify_group_passes() {
    let (v, code) = json(&["verify-group"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["verdict"], "PASS");
    assert_eq!(v["octahedral_order"], 24);
    let checks = v["checks"].as_array().unwrap();
    let count = |k: &str| checks.iter().filter(|c| c["kind"] == k).count();
    assert_eq!(
        (count("involution"), count("edge"), count("non_edge")),
        (8, 12, 16)
    );
}

#[test]
fn corrupted_table_fails() {
    let (v, code) = json(&["verify-group", "--corrupt", "r2p"]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "FAIL");
    let first = v["first_failure"].as_str().unwrap();
    assert!(first.contains("r2p"), "{first}");
    let cube = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["kind"] == "cube")
        .unwrap();
    assert_eq!(cube["passed"], false);
}

#[test]
fn scattering_agrees_with_oracle() {
    let (v, code) = json(&[
        "scattering",
        "--level",
        "2",
        "--s-min",
        "2.2",
        "--s-max",
        "4",
        "--oracle-radius",
        "120",
    ]);
    assert_eq!(code, 0);
    assert!(v["max_relgap"].as_f64().unwrap() < 1e-3);
    assert_eq!(v["pole_scan"]["verdict"], "no poles");
    let (v, _) = json(&[
        "scattering",
        "--level",
        "1",
        "--s-min",
        "1.5",
        "--s-max",
        "2.5",
        "--grid",
        "11",
    ]);
    let rows = v["rows"].as_array().unwrap();
    let pole: Vec<&Value> = rows.iter().filter(|r| r["flag"] == "POLE").collect();
    assert_eq!(pole.len(), 1);
    assert_eq!(pole[0]["s"], 2.0);
}

#[test]
fn delta_estimates() {
    let (v, code) = json(&["delta", "--group", "ap", "--word-len", "14", "--bounds"]);
    assert_eq!(code, 0);
    let d = v["estimate"].as_f64().unwrap();
    assert!((1.15..=1.45).contains(&d), "{d}");
    assert!((v["bounds"]["lower"].as_f64().unwrap() - 0.001415).abs() < 1e-6);
    assert!((v["bounds"]["upper"].as_f64().unwrap() - 0.879482).abs() < 1e-6);
    let (v, _) = json(&["delta", "--group", "sa", "--word-len", "10"]);
    let d = v["estimate"].as_f64().unwrap();
    assert!((1.6..=2.0).contains(&d), "{d}");
}

#[test]
fn cover_report() {
    let (v, code) = json(&["cover", "--n", "1", "--seed", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["lambda1"], 8.0);
    assert_eq!(v["vertices"], 2);
    let dir = tempfile::tempdir().unwrap();
    let hist = dir.path().join("hist.csv");
    let (v, code) = json(&[
        "cover",
        "--n",
        "100",
        "--seed",
        "9",
        "--walk-steps",
        "500",
        "--histogram-out",
        hist.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["walk"]["lambda1_series"][0], 0.0);
    assert_eq!(v["walk"]["lambda1_series"].as_array().unwrap().len(), 501);
    let text = std::fs::read_to_string(&hist).unwrap();
    assert!(text.starts_with("bin_start,count\n"));
}

#[test]
fn identical_runs_are_byte_identical() {
    let args = [
        "cover",
        "--n",
        "30",
        "--seed",
        "11",
        "--walk-steps",
        "50",
        "--start",
        "random",
    ];
    assert_eq!(octacover(&args).stdout, octacover(&args).stdout);
    let args = ["bounds", "--seed", "2", "--horoball-samples", "2000"];
    assert_eq!(octacover(&args).stdout, octacover(&args).stdout);
}

#[test]
fn bounds_report_and_csv() {
    let (v, code) = json(&["bounds", "--seed", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["flattening_decreasing"], true);
    assert!(v["horoball"]["max_multiplicity"].as_u64().unwrap() <= 3);
    assert_eq!(v["cap_sweep"]["violations"], 0);
    let out = octacover(&[
        "bounds",
        "--seed",
        "1",
        "--format",
        "csv",
        "--horoball-samples",
        "100",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("T,delta,volume,bound,holds"));
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        let (vol, bound): (f64, f64) = (cells[2].parse().unwrap(), cells[3].parse().unwrap());
        assert!(vol <= bound && cells[4] == "true", "{line}");
    }
}

fn assert_invalid(args: &[&str], out: &Path) {
    let o = octacover(args);
    assert_eq!(
        o.status.code(),
        Some(2),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(!out.exists(), "{args:?} left {}", out.display());
}

#[test]
fn invalid_input_exits_two_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.json");
    let o = out.to_str().unwrap();
    assert_invalid(&["cover", "--n", "10", "--out", o], &out);
    assert_invalid(&["cover", "--n", "0", "--seed", "1", "--out", o], &out);
    assert_invalid(&["scattering", "--s-min", "0.5", "--out", o], &out);
    assert_invalid(&["scattering", "--oracle-radius", "1e6", "--out", o], &out);
    assert_invalid(
        &["delta", "--group", "ap", "--word-len", "30", "--out", o],
        &out,
    );
    assert_invalid(&["delta", "--base", "0,0,-1", "--out", o], &out);
    assert_invalid(
        &["bounds", "--seed", "1", "--lambda", "0.9", "--out", o],
        &out,
    );
    assert_invalid(&["verify-group", "--corrupt", "r9", "--out", o], &out);
    assert_invalid(&["scattering", "--format", "xml", "--out", o], &out);

    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"seed": 1, "params": {"n": 3, "colour": 2}}"#).unwrap();
    assert_invalid(
        &["cover", "--config", cfg.to_str().unwrap(), "--out", o],
        &out,
    );
    std::fs::write(&cfg, r#"{"command": "delta", "params": {}}"#).unwrap();
    assert_invalid(
        &["cover", "--config", cfg.to_str().unwrap(), "--out", o],
        &out,
    );
    std::fs::write(&cfg, r#"{"seed": 1, "extra": true}"#).unwrap();
    assert_invalid(
        &["cover", "--config", cfg.to_str().unwrap(), "--out", o],
        &out,
    );
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    let out = dir.path().join("result.json");
    std::fs::write(
        &cfg,
        format!(
            r#"{{"command": "cover", "seed": 4, "format": "json", "out": "{}", "params": {{"n": 8, "walk-steps": 10}}}}"#,
            out.display()
        ),
    )
    .unwrap();
    let o = octacover(&["cover", "--config", cfg.to_str().unwrap(), "--n", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["n"], 12);
    assert_eq!(v["seed"], 4);
    assert_eq!(v["walk"]["steps"], 10);
}
