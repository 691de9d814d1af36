use std::process::{Command, Output};

fn nkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nkit"))
        .args(args)
        .env_remove("NKIT_PRECISION")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> serde_json::Value {
    let o = nkit(args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("JSON output")
}

fn mid(v: &serde_json::Value) -> f64 {
    v["mid"].as_str().unwrap().parse().unwrap()
}

#[test]
fn thresholds() {
    let v = json(&["threshold", "proj", "--n", "1", "--d", "1", "--C", "1", "--json"]);
    assert!((mid(&v["threshold"]) - 4.6192).abs() < 1e-4);
    assert!((mid(&v["irreducible_variant"]) - 3.9261).abs() < 1e-4);
    let v = json(&["threshold", "dyn", "--n", "1", "--D", "2", "--d", "1", "--C", "1"]);
    assert!((mid(&v["log10_threshold"]) - 39.01).abs() < 0.01);
    assert!(v["irreducible_variant"].is_null());
    let v = json(&["threshold", "main", "--d", "2", "--C", "1", "--R", "3"]);
    assert_eq!(v["threshold"]["mid"], "8");
    let v = json(&["threshold", "abvar", "--g", "1", "--d", "16", "--C", "1", "--h2", "0", "--n", "3"]);
    assert!((mid(&v["threshold"]) - 4.690).abs() < 1e-3);
}

#[test]
fn exit_codes() {
    assert_eq!(nkit(&["threshold", "main", "--d", "1", "--C", "1", "--R", "-1"]).status.code(), Some(2));
    assert_eq!(nkit(&["cm", "classpoly", "--disc", "5"]).status.code(), Some(2));
    assert_eq!(nkit(&["experiment", "--n", "8", "--cutoff", "log 5"]).status.code(), Some(3));
    assert_eq!(nkit(&["height", "--kind", "weil", "--input", "{"]).status.code(), Some(2));
}

#[test]
fn heights_and_dynamics() {
    let v = json(&["height", "--kind", "weil", "--input", "\"-3/4\""]);
    assert!((mid(&v) - 4f64.ln()).abs() < 1e-12);
    let v = json(&["height", "--kind", "projective", "--input", "[1, 2]"]);
    assert!((mid(&v) - 2f64.ln()).abs() < 1e-12);
    let v = json(&["dyn", "constants", "--n", "1", "--D", "2"]);
    assert_eq!(v["c1"], "20");
    assert_eq!(v["c2"], "1020847100762815390390123822295304634368");
    let map = r#"[{"2,0": 1}, {"0,2": 1}]"#;
    let v = json(&["dyn", "canonical", "--map", map, "--point", "[3, 2]"]);
    assert!((mid(&v["value"]) - 3f64.ln()).abs() < 1e-8);
    let v = json(&["dyn", "preperiodic", "--map", map, "--point", "[1, -1]"]);
    assert_eq!(v["result"], "preperiodic");
}

#[test]
fn cm_and_chow() {
    let v = json(&["cm", "classpoly", "--disc", "-4"]);
    assert_eq!(v["coefficients"], serde_json::json!(["-1728", "1"]));
    let o = nkit(&["cm", "profile", "--max-disc", "50", "--format", "csv"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("disc,class_number"));
    assert!(text.lines().any(|l| l.starts_with("-4,1,")));
    let cycle = r#"{"n": 1, "components": [{"mult": 1, "point": [1, 2]}]}"#;
    let v = json(&["philippon", "--cycle", cycle]);
    assert!((mid(&v["h_ph"]) - 0.5 * 5f64.ln()).abs() < 1e-6);
    let v = json(&["philippon", "--cycle", cycle, "--tilde"]);
    assert!((mid(&v["h_ph_tilde"]) - 2f64.ln()).abs() < 1e-6);
    let v = json(&["chow", "--cycle", cycle]);
    assert!(v["terms"].is_array());
}

#[test]
fn census_and_out_file() {
    let dir = std::env::temp_dir().join(format!("nkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("census.json");
    let o = nkit(&["experiment", "--cutoff", "log 2", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let first = std::fs::read_to_string(&out).unwrap();
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["total"], 8);
    // same config again, this time read from the file
    let cfg = dir.join("config.json");
    std::fs::write(&cfg, v["config"].to_string()).unwrap();
    let o = nkit(&["experiment", "--config", cfg.to_str().unwrap()]);
    assert_eq!(String::from_utf8(o.stdout).unwrap(), first);
    let md = nkit(&["experiment", "--cutoff", "0", "--format", "markdown"]);
    assert!(String::from_utf8(md.stdout).unwrap().contains("- total: 4"));
    let v = json(&["tower", "build", "--t", "1", "--count", "3"]);
    assert_eq!(v["steps"].as_array().unwrap().len(), 3);
    std::fs::remove_dir_all(&dir).ok();
}
