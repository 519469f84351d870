//! End-to-end checks of the `binodal` binary: exit codes, output layout,
//! determinism, config precedence, and summary schema validity.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_binodal")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary should launch")
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("binodal-cli-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    dir
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name))
        .unwrap_or_else(|e| panic!("missing {name} in {}: {e}", dir.display()))
}

fn schema() -> jsonschema::JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas/summary.schema.json");
    let raw = fs::read_to_string(path).expect("schema ships with the repo");
    let doc: &'static serde_json::Value = Box::leak(Box::new(serde_json::from_str(&raw).unwrap()));
    jsonschema::JSONSchema::compile(doc).expect("schema compiles")
}

fn assert_schema_valid(dir: &Path) {
    let doc: serde_json::Value = serde_json::from_str(&read(dir, "summary.json")).unwrap();
    let schema = schema();
    let result = schema.validate(&doc);
    if let Err(errors) = result {
        let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
        panic!("summary.json violates the schema: {msgs:?}");
    }
}

#[test]
fn every_command_exits_zero_and_emits_a_valid_summary() {
    for (cmd, mu) in [
        ("jumpset", "1"),
        ("secondary", "0.5"),
        ("nucleus", "0.5"),
        ("qw", "0.5"),
        ("pcx", "1"),
        ("binodal", "0.5"),
    ] {
        let dir = tmp_dir(&format!("each-{cmd}"));
        let out = run(&[cmd, "--mu", mu, "--samples", "60", "--out", dir.to_str().unwrap()]);
        assert!(out.status.success(), "{cmd} failed: {}", String::from_utf8_lossy(&out.stderr));
        assert_schema_valid(&dir);
    }
}

#[test]
fn rerun_reproduces_outputs_byte_for_byte() {
    let dir_a = tmp_dir("det-a");
    let dir_b = tmp_dir("det-b");
    for dir in [&dir_a, &dir_b] {
        let out = run(&[
            "nucleus",
            "--mu",
            "0.5",
            "--samples",
            "101",
            "--mu-sweep",
            "0.25:1:0.25",
            "--out",
            dir.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    for name in ["profile.csv", "eps_inf_vs_mu.csv", "summary.json"] {
        assert_eq!(read(&dir_a, name), read(&dir_b, name), "{name} differs between runs");
    }
}

#[test]
fn liquid_limit_jump_set_lies_on_the_hyperbolas() {
    let dir = tmp_dir("liquid");
    let out = run(&["jumpset", "--mu", "0", "--samples", "40", "--out", dir.to_str().unwrap()]);
    assert!(out.status.success());
    let csv = read(&dir, "jumpset.csv");
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "eps0,eps_plus,eps_minus,d_plus,d_minus,weierstrass_ok"
    );
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        let eps0: f64 = cells[0].parse().unwrap();
        let ep: f64 = cells[1].parse().unwrap();
        let em: f64 = cells[2].parse().unwrap();
        assert!((ep * eps0 - 3.0).abs() < 1e-12, "high hyperbola violated: {line}");
        assert!((em * eps0 - 1.0).abs() < 1e-12, "low hyperbola violated: {line}");
    }
}

#[test]
fn w_point_row_matches_the_cubic_root() {
    let dir = tmp_dir("wpoint-row");
    let out = run(&["jumpset", "--mu", "1", "--samples", "16", "--out", dir.to_str().unwrap()]);
    assert!(out.status.success());
    let csv = read(&dir, "wpoints.csv");
    let row = csv.lines().nth(1).expect("one W-point row");
    let eps0: f64 = row.split(',').next().unwrap().parse().unwrap();
    let eps_minus: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
    assert!((eps0 - 1.7195).abs() < 1e-3, "eps0 = {eps0}");
    assert!((eps_minus - 0.6067).abs() < 1e-3, "eps_minus = {eps_minus}");
}

#[test]
fn liquid_limit_envelope_column_vanishes() {
    let dir = tmp_dir("qw-liquid");
    let out = run(&["qw", "--mu", "0", "--samples", "80", "--out", dir.to_str().unwrap()]);
    assert!(out.status.success());
    for name in ["qw.csv", "qw_asymptotic.csv"] {
        for line in read(&dir, name).lines().skip(1) {
            let qw: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
            assert!(qw.abs() <= 1e-10, "{name}: qw = {qw} in {line}");
        }
    }
}

#[test]
fn missing_w_point_warns_and_still_succeeds() {
    let dir = tmp_dir("no-wpoint");
    let out = run(&["jumpset", "--mu", "12.7", "--out", dir.to_str().unwrap()]);
    assert!(out.status.success(), "high-mu jumpset must still exit 0");
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("no W-point"), "expected a warning, got: {stderr}");
    let wpoints = read(&dir, "wpoints.csv");
    assert_eq!(wpoints.trim_end(), "eps0,eps_minus,alpha0", "wpoints must be header-only");
    let summary: serde_json::Value = serde_json::from_str(&read(&dir, "summary.json")).unwrap();
    assert!(summary["results"]["w_point"].is_null());
    assert!(!summary["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn config_errors_exit_two() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["jumpset", "--d1", "3", "--d2", "1"],
        vec!["jumpset", "--mu", "-1"],
        vec!["nucleus", "--mu-sweep", "3:1:0.5"],
        vec!["nucleus", "--mu-sweep", "abc"],
        vec!["jumpset", "--samples", "1"],
        vec!["jumpset", "--config", "/nonexistent/config.toml"],
    ];
    for args in cases {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn numerical_domain_errors_exit_three() {
    let dir = tmp_dir("exit3");
    let out = run(&["secondary", "--mu", "0", "--out", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("mu"), "unexpected message: {stderr}");
}

#[test]
fn flags_override_config_file_which_overrides_preset() {
    let dir = tmp_dir("precedence");
    fs::create_dir_all(&dir).unwrap();
    let toml_path = dir.join("cfg.toml");
    fs::write(&toml_path, "mu = 2.0\nd2 = 4.0\nsamples = 33\n").unwrap();

    // file only: mu and d2 come from the file, d1 from the preset
    let out_dir = dir.join("file");
    let out = run(&[
        "jumpset",
        "--config",
        toml_path.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let summary: serde_json::Value =
        serde_json::from_str(&read(&out_dir, "summary.json")).unwrap();
    assert_eq!(summary["params"]["mu"], 2.0);
    assert_eq!(summary["params"]["d1"], 1.0);
    assert_eq!(summary["params"]["d2"], 4.0);
    assert_eq!(summary["params"]["samples"], 33);

    // flag beats file
    let out_dir = dir.join("flag");
    let out = run(&[
        "jumpset",
        "--config",
        toml_path.to_str().unwrap(),
        "--mu",
        "0.5",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let summary: serde_json::Value =
        serde_json::from_str(&read(&out_dir, "summary.json")).unwrap();
    assert_eq!(summary["params"]["mu"], 0.5);

    // unknown keys are config errors
    fs::write(&toml_path, "mu = 2.0\nbogus = 1\n").unwrap();
    let out = run(&["jumpset", "--config", toml_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_format_emits_json_tables() {
    let dir = tmp_dir("json");
    let out = run(&[
        "qw",
        "--mu",
        "0.5",
        "--samples",
        "40",
        "--format",
        "json",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_str(&read(&dir, "qw.json")).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 40);
    for row in rows {
        assert!(row["eps"].is_number() && row["qw"].is_number());
        assert!(row["qw"].as_f64().unwrap() <= row["w"].as_f64().unwrap() + 1e-9);
    }
    assert!(!dir.join("qw.csv").exists());
}

#[test]
fn csv_cells_round_trip_doubles_exactly() {
    let dir = tmp_dir("roundtrip");
    let out = run(&["nucleus", "--mu", "0.5", "--samples", "50", "--out", dir.to_str().unwrap()]);
    assert!(out.status.success());
    let summary: serde_json::Value = serde_json::from_str(&read(&dir, "summary.json")).unwrap();
    let eps_inf_summary = summary["results"]["eps_inf"].as_f64().unwrap();
    let csv = read(&dir, "profile.csv");
    let first_row = csv.lines().nth(1).unwrap();
    let v: f64 = first_row.split(',').nth(1).unwrap().parse().unwrap();
    assert_eq!(v, eps_inf_summary, "17-digit CSV must round-trip the f64 exactly");
}
