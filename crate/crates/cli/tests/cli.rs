use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dirichlet"))
}

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

#[test]
fn analyze_dilation_example() {
    let cfg = config("arithmetic.json");
    let r = json(&run(&["analyze", "--config", cfg.to_str().unwrap()]));
    assert_eq!(r["schema"], 1);
    assert_eq!(r["command"], "analyze");
    let s = &r["symbols"][0];
    let b = &s["boundedness"];
    assert_eq!(b["bounded"], true);
    assert!((f(&b["operator_norm"]["value"]) - (-1.0f64).exp()).abs() < 1e-15);
    assert_eq!(b["compact"], true);
    assert!(b["schatten"].as_array().unwrap().iter().all(|p| p["member"] == true));
    assert_eq!(s["cyclicity"]["verdict"], "not_cyclic");
    assert_eq!(s["symmetry"]["verdict"], "never_complex_symmetric");
    assert_eq!(s["comparison"]["operator_norm"]["within_bound"], true);
    // complex values are {re, im} objects
    assert_eq!(s["b"]["re"], 1.0);
    assert_eq!(s["b"]["im"], 0.0);
    let d = &r["differences"][0];
    assert_eq!(d["result"]["compact"], false);
    assert!((f(&d["result"]["essential_norm"]["value"]) - 2.0).abs() < 1e-12);
}

#[test]
fn cyclic_trace_reaches_target() {
    let cfg = config("cyclic.json");
    let r = json(&run(&["cyclic", "--config", cfg.to_str().unwrap()]));
    let s = &r["symbols"][0];
    assert_eq!(s["cyclicity"]["verdict"], "cyclic");
    let c = &s["construction"];
    let trace = c["trace"].as_array().unwrap();
    let last = trace.last().unwrap();
    assert!(f(&last["measured_residual"]) <= 1e-2);
    for w in trace.windows(2) {
        assert!(f(&w[1]["predicted_residual"]) <= f(&w[0]["predicted_residual"]));
    }
    assert_eq!(c["polynomial"]["value_at_one"]["re"], 1.0);
    assert_eq!(c["approximation"]["within_epsilon"], true);
}

#[test]
fn forbidden_slope_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(config("arithmetic.json")).unwrap().replace(r#""a": 2,"#, r#""a": 0.5,"#);
    let path = dir.path().join("bad.json");
    std::fs::write(&path, text).unwrap();
    let out = run(&["analyze", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("a = 0 or a >= 1"));
}

#[test]
fn unreadable_and_malformed_configs_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    assert_eq!(run(&["norm", "--config", missing.to_str().unwrap()]).status.code(), Some(1));
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{ \"schema\": 1, ").unwrap();
    assert_eq!(run(&["norm", "--config", broken.to_str().unwrap()]).status.code(), Some(1));
    let cfg = config("arithmetic.json");
    assert_eq!(run(&["norm", "--config", cfg.to_str().unwrap(), "--horizon", "4"]).status.code(), Some(1));
    assert_eq!(run(&["norm", "--config", cfg.to_str().unwrap(), "--truncation", "1"]).status.code(), Some(1));
    assert_eq!(run(&["bogus", "--config", cfg.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config("arithmetic.json");
    let mut texts = Vec::new();
    for k in 0..3 {
        let out = dir.path().join(format!("r{k}.json"));
        let o = run(&["analyze", "--config", cfg.to_str().unwrap(), "--seed", "11", "--out", out.to_str().unwrap()]);
        assert!(o.status.success());
        assert!(o.stdout.is_empty());
        texts.push(std::fs::read(out).unwrap());
    }
    assert_eq!(texts[0], texts[1]);
    assert_eq!(texts[1], texts[2]);
    let r: Value = serde_json::from_slice(&texts[0]).unwrap();
    assert_eq!(r["seed"], 11);
}

#[test]
fn strict_mode_escalates_warnings() {
    let cfg = config("arithmetic.json");
    // symbol 2 (a = 1, b = i) has a window-only cyclicity verdict
    let out = run(&["analyze", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    let out = run(&["analyze", "--config", cfg.to_str().unwrap(), "--strict"]);
    assert_eq!(out.status.code(), Some(2));
    let clean = config("cyclic.json");
    assert_eq!(run(&["norm", "--config", clean.to_str().unwrap(), "--strict"]).status.code(), Some(0));
}

#[test]
fn csv_exports() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config("arithmetic.json");
    let csv = dir.path().join("csv");
    let o = run(&["compare", "--config", cfg.to_str().unwrap(), "--truncation", "8", "--csv-dir", csv.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(csv.join("section_0.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("row,col,re,im"));
    // a = 2: column j lands in row 2j, so C P_8 has 16 rows
    assert_eq!(lines.count(), 16 * 8);
    assert!(text.contains("\n2,1,0.36787944117144233,0.0\n"));

    let cyc = config("cyclic.json");
    let o = run(&["cyclic", "--config", cyc.to_str().unwrap(), "--csv-dir", csv.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(csv.join("trace_0.csv")).unwrap();
    assert!(text.starts_with("degree,predicted_residual,measured_residual\n"));
}

#[test]
fn pretty_prints_a_table() {
    let cfg = config("prefix_sum.json");
    let out = run(&["schatten", "--config", cfg.to_str().unwrap(), "--pretty"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("Schatten"));
    assert!(text.contains("S_0.5: member true"));
    assert!(text.contains("differs from the alternative closed form"));
}
