use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_krawtchouk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn spectrum_csv() {
    let out = run(&["spectrum", "--p", "0.5", "--N", "4", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("n,lambda_computed,lambda_formula,lambda_as")
    );
    let formula: Vec<f64> = lines
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert_eq!(formula, vec![2.0, 5.0, 6.0, 5.0, 2.0]);
}

#[test]
fn spectrum_smallest_case_json() {
    let v = json(&["spectrum", "--p", "0.3", "--N", "1", "--format", "json"]);
    assert_eq!(v["command"], "spectrum");
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    assert_eq!(v["params"]["N"], 1);
}

#[test]
fn invalid_probability_is_a_usage_error() {
    let out = run(&["spectrum", "--p", "1.5", "--N", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("p must lie in (0,1)"));
    assert_eq!(run(&["spectrum", "--N", "0"]).status.code(), Some(2));
    assert_eq!(run(&["coherent", "--z", "1"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn coherent_examples() {
    let v = json(&[
        "coherent", "--family", "disp", "--z", "0", "0", "--p", "0.5", "--N", "4",
    ]);
    let re: Vec<f64> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["re"].as_f64().unwrap())
        .collect();
    assert_eq!(re, vec![1.0, 0.0, 0.0, 0.0, 0.0]);

    let v = json(&[
        "coherent", "--family", "disp", "--z", "1", "0", "--p", "0.5", "--N", "1",
    ]);
    let rows = v["rows"].as_array().unwrap();
    assert!((rows[0]["prob"].as_f64().unwrap() - 1f64.cos().powi(2)).abs() < 1e-12);
    assert!((rows[1]["prob"].as_f64().unwrap() - 1f64.sin().powi(2)).abs() < 1e-12);

    let v = json(&[
        "coherent", "--family", "spin", "--xi", "0", "0", "--p", "0.5", "--N", "4",
    ]);
    let p0 = v["rows"][0]["prob"].as_f64().unwrap();
    assert!((p0 - 1.0).abs() < 1e-12);
}

#[test]
fn root_sum_at_zero_notes_continuity() {
    let v = json(&["coherent", "--family", "eq49", "--z", "0", "0", "--N", "3"]);
    let notes: Vec<&str> = v["notes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|n| n.as_str().unwrap())
        .collect();
    assert!(notes.iter().any(|n| n.contains("continuity")));
    assert!(notes.iter().any(|n| n.starts_with("calibration:")));
    assert_eq!(v["rows"][0]["prob"].as_f64(), Some(1.0));
}

#[test]
fn check_single_point() {
    let out = run(&["check", "--p", "0.5", "--N", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["report"]["pass"], true);
    let entries = v["report"]["entries"].as_array().unwrap();
    let comm = entries
        .iter()
        .find(|e| e["name"] == "commutator_diag")
        .unwrap();
    assert!(comm["notes"][0]
        .as_str()
        .unwrap()
        .starts_with("commutator_diag = N − 2n"));
    assert!(
        entries
            .iter()
            .any(|e| e["name"] == "as_spectrum"
                && e["notes"][0].as_str().unwrap().contains("n + 1/2"))
    );
}

#[test]
fn other_commands() {
    let v = json(&["overlap", "--z", "1", "0", "--p", "0.5", "--N", "4"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    let de = rows
        .iter()
        .find(|r| r["a"] == "disp" && r["b"] == "eq49")
        .unwrap();
    assert!((de["abs"].as_f64().unwrap() - 1.0).abs() < 1e-12);

    let v = json(&["roots", "--p", "0.5", "--N", "1"]);
    let x: Vec<f64> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["x"].as_f64().unwrap())
        .collect();
    assert!((x[0] + 0.5).abs() < 1e-15 && (x[1] - 0.5).abs() < 1e-15);
    let w: f64 = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["weight"].as_f64().unwrap())
        .sum();
    assert!((w - 1.0).abs() < 1e-14);

    let v = json(&["as-compare", "--p", "0.3", "--N", "6"]);
    assert_eq!(v["report"]["pass"], true);
    for r in v["rows"].as_array().unwrap() {
        assert!(r["residual"].as_f64().unwrap() < 1e-10);
    }
}

#[test]
fn writes_to_file() {
    let dir = std::env::temp_dir().join(format!("krawtchouk-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("roots.csv");
    let out = run(&[
        "roots",
        "--N",
        "3",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 5);
    std::fs::remove_dir_all(&dir).unwrap();
}
