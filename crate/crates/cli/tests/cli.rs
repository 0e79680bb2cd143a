use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gammatri"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    });
    (out.status.code().unwrap(), v)
}

fn rows(v: &Value) -> Vec<Vec<i64>> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_array().unwrap().iter().map(|c| c.as_str().unwrap().parse().unwrap()).collect())
        .collect()
}

fn polygon_file(dir: &Path, n: usize) -> String {
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let facets: Vec<[String; 2]> = (0..n).map(|i| [labels[i].clone(), labels[(i + 1) % n].clone()]).collect();
    let path = dir.join(format!("polygon{n}.json"));
    fs::write(&path, serde_json::json!({ "vertices": labels, "facets": facets }).to_string()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn pentagon_triangles() {
    let dir = TempDir::new().unwrap();
    let file = polygon_file(dir.path(), 5);
    let (code, v) = json(&["triangles", &file, "--facet", "v0,v1", "--out", "json"]);
    assert_eq!(code, 0);
    assert_eq!(v["degree"], 2);
    assert_eq!(rows(&v["f"]["rows"]), vec![vec![1], vec![2, 2], vec![1, 3, 2]]);
    assert_eq!(rows(&v["gamma"]["rows"]), vec![vec![1], vec![0], vec![0, 1]]);
    assert_eq!(v["gamma"]["poly"], "x + y^2");
}

#[test]
fn triangle_has_negative_gamma_entry() {
    let dir = TempDir::new().unwrap();
    let file = polygon_file(dir.path(), 3);
    let (code, v) = json(&["triangles", &file, "--facet", "v0,v1", "--out", "json"]);
    assert_eq!(code, 0);
    assert_eq!(rows(&v["gamma"]["rows"])[2], vec![0, -1]);
}

#[test]
fn export_then_triangles_gives_a3() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("a3.json");
    let path = path.to_str().unwrap();
    assert!(run(&["export", "--type", "A", "--rank", "3", "--output", path]).status.success());
    let (code, v) = json(&["triangles", path, "--out", "json"]);
    assert_eq!(code, 0);
    assert_eq!(rows(&v["f"]["rows"]), vec![vec![1], vec![3, 3], vec![3, 8, 5], vec![1, 6, 10, 5]]);
    assert_eq!(v["gamma"]["poly"], "x + 2xy + y^3");
    assert_eq!(v["gamma_vector"], serde_json::json!(["1", "3"]));

    let (code, v) = json(&["local", path, "--out", "json"]);
    assert_eq!(code, 0);
    assert_eq!(v["local_gamma"], "x");
}

#[test]
fn cluster_routes() {
    let (code, v) = json(&["cluster", "--type", "A", "--rank", "3", "--method", "model", "--out", "json"]);
    assert_eq!(code, 0);
    assert_eq!(v["gamma"], "x + 2xy + y^3");

    let (_, b5) = json(&["cluster", "--type", "B", "--rank", "5", "--out", "json"]);
    assert_eq!(
        rows(&b5["rows"]),
        vec![vec![1], vec![0], vec![0, 5], vec![0, 5], vec![0, 5, 10], vec![0, 5, 20]]
    );

    let (_, d6) = json(&["cluster", "--type", "D", "--rank", "6", "--out", "json"]);
    let (_, d6_sum) = json(&["cluster", "--type", "D", "--rank", "6", "--method", "local-sum", "--out", "json"]);
    assert_eq!(d6["rows"], d6_sum["rows"]);
    assert_eq!(rows(&d6["rows"])[6], vec![0, 4, 24, 8]);

    let (_, i5) = json(&["cluster", "--type", "I2", "--m", "5", "--method", "model", "--out", "json"]);
    let (_, i5f) = json(&["cluster", "--type", "I2", "--m", "5", "--out", "json"]);
    assert_eq!(i5["gamma"], i5f["gamma"]);
}

#[test]
fn model_method_rejects_other_types() {
    let out = run(&["cluster", "--type", "E", "--rank", "6", "--method", "model"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn diagram_file() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("h3.json");
    fs::write(&path, r#"{"vertices": ["1", "2", "3"], "edges": [["1", "2"], ["2", "3", 5]]}"#).unwrap();
    let (code, v) = json(&["diagram", path.to_str().unwrap(), "--out", "json"]);
    assert_eq!(code, 0);
    assert_eq!(v["types"], serde_json::json!(["H3"]));
    let (_, formula) = json(&["cluster", "--type", "H", "--rank", "3", "--out", "json"]);
    assert_eq!(v["rows"], formula["rows"]);
}

#[test]
fn series_and_family() {
    let (code, v) = json(&["series", "--name", "gA", "--order", "6", "--out", "json"]);
    assert_eq!(code, 0);
    assert_eq!(v["coefficients"].as_array().unwrap().len(), 6);
    let (_, sum) = json(&["series", "--name", "gA", "--order", "6", "--route", "sum", "--out", "json"]);
    assert_eq!(v["coefficients"], sum["coefficients"]);

    let (code, v) = json(&["family", "pell", "3", "--out", "json"]);
    assert_eq!(code, 0);
    assert_eq!(v["u"], "x + y^2");
}

#[test]
fn verify_tables_suite() {
    let out = run(&["verify", "--suite", "tables"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains("FAIL"));
    assert!(text.trim_end().ends_with("checks passed"));

    let (code, v) = json(&["verify", "--suite", "tables", "--out", "json"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
}

#[test]
fn error_paths() {
    let out = run(&["triangles", "/nonexistent/file.json", "--facet", "a,b"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent/file.json"));

    let dir = TempDir::new().unwrap();
    let file = polygon_file(dir.path(), 5);
    assert_eq!(run(&["triangles", &file]).status.code(), Some(2));
    assert_eq!(run(&["triangles", &file, "--facet", "v0,v2"]).status.code(), Some(2));

    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{ not json").unwrap();
    let out = run(&["diagram", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed JSON"));
}
