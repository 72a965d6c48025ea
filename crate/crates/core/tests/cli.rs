use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn assoc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_assoc"))
        .args(args)
        .env_remove("ASSOC_MAX_N")
        .output()
        .expect("run assoc")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn build(dir: &Path, construction: &str, n: usize) -> PathBuf {
    let path = dir.join(format!("{construction}{n}.json"));
    let o = assoc(&["build", "--construction", construction, "--n", &n.to_string(), "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    path
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn build_examples() {
    let dir = TempDir::new().unwrap();
    let p = build(dir.path(), "minkowski", 2);
    let doc = json(&std::fs::read_to_string(&p).unwrap());
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 5);

    let square = dir.path().join("square.json");
    std::fs::write(&square, r#"{"coords": [["0","0"],["1","0"],["1","1"],["0","1"]]}"#).unwrap();
    let o = assoc(&["build", "--construction", "secondary", "--params", square.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let doc = json(&stdout(&o));
    let coords: Vec<&Value> = doc["vertices"].as_array().unwrap().iter().map(|v| &v["coords"]).collect();
    assert_eq!(coords[0], &serde_json::json!(["1", "1/2", "1", "1/2"]));
    assert_eq!(coords[1], &serde_json::json!(["1/2", "1", "1/2", "1"]));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"n": 1, "a": {"1,1": "-1", "1,2": "1", "2,2": "1"}}"#).unwrap();
    let o = assoc(&["build", "--construction", "minkowski", "--params", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(!o.stderr.is_empty());

    let concave = dir.path().join("concave.json");
    std::fs::write(&concave, r#"{"coords": [["0","0"],["2","0"],["1","1/4"],["1","2"]]}"#).unwrap();
    assert_eq!(code(&assoc(&["build", "--construction", "secondary", "--params", concave.to_str().unwrap()])), 2);

    assert_eq!(code(&assoc(&["build", "--construction", "cluster", "--n", "8"])), 3);
}

#[test]
fn max_n_override() {
    let o = Command::new(env!("CARGO_BIN_EXE_assoc"))
        .args(["build", "--construction", "minkowski", "--n", "3"])
        .env("ASSOC_MAX_N", "2")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
}

#[test]
fn analyze_reports() {
    let dir = TempDir::new().unwrap();
    let o = assoc(&["analyze", build(dir.path(), "secondary", 3).to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&stdout(&o))["parallel_pairs"], serde_json::json!([]));

    let o = assoc(&["analyze", build(dir.path(), "minkowski", 3).to_str().unwrap()]);
    assert_eq!(
        json(&stdout(&o))["parallel_pairs"],
        serde_json::json!([[[0, 2], [1, 5]], [[0, 3], [2, 5]], [[0, 4], [3, 5]]])
    );

    let o = assoc(&["analyze", build(dir.path(), "cluster", 2).to_str().unwrap()]);
    assert_eq!(json(&stdout(&o))["parallel_pairs"].as_array().unwrap().len(), 2);

    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\"construction\": \"cluster\"").unwrap();
    assert_eq!(code(&assoc(&["analyze", broken.to_str().unwrap()])), 2);
    assert_eq!(code(&assoc(&["analyze", dir.path().join("missing.json").to_str().unwrap()])), 2);
}

#[test]
fn certification_failure_exits_4() {
    // a valid-looking file whose coordinates do not realize the labels
    let dir = TempDir::new().unwrap();
    let path = build(dir.path(), "minkowski", 2);
    let mut doc = json(&std::fs::read_to_string(&path).unwrap());
    let vs = doc["vertices"].as_array_mut().unwrap();
    let first = vs[0]["coords"].clone();
    vs[0]["coords"] = vs[1]["coords"].clone();
    vs[1]["coords"] = first;
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    let o = assoc(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code(&o), 4, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn compare_exit_codes() {
    let dir = TempDir::new().unwrap();
    let s2 = build(dir.path(), "secondary", 2);
    let m2 = build(dir.path(), "minkowski", 2);
    let c3 = build(dir.path(), "cluster", 3);
    let m3 = build(dir.path(), "minkowski", 3);

    let o = assoc(&["compare", s2.to_str().unwrap(), m2.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let r = json(&stdout(&o));
    assert_eq!(r["verdict"], "non-equivalent");
    assert_eq!(r["obstructions"][0]["fires"], true);

    let o = assoc(&["compare", c3.to_str().unwrap(), m3.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let r = json(&stdout(&o));
    assert_eq!(r["obstructions"][0]["fires"], false);
    assert_eq!(r["obstructions"][1]["fires"], true);

    // translated copy of m3
    let mut doc = json(&std::fs::read_to_string(&m3).unwrap());
    for v in doc["vertices"].as_array_mut().unwrap() {
        for c in v["coords"].as_array_mut().unwrap() {
            let x: i64 = c.as_str().unwrap().parse().unwrap();
            *c = Value::String((x + 1).to_string());
        }
    }
    let moved = dir.path().join("moved.json");
    std::fs::write(&moved, serde_json::to_string(&doc).unwrap()).unwrap();
    let o = assoc(&["compare", m3.to_str().unwrap(), moved.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let r = json(&stdout(&o));
    assert_eq!(r["witness"]["translation"], serde_json::json!(["1", "1", "1", "1"]));

    assert_eq!(code(&assoc(&["compare", m2.to_str().unwrap(), m3.to_str().unwrap()])), 2);
}

#[test]
fn verify_small() {
    let o = assoc(&["verify", "--n-max", "2", "--seed", "42"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("Catalan counts 2,5"));
    assert_eq!(code(&assoc(&["verify", "--n-max", "7"])), 3);
    assert_eq!(code(&assoc(&["verify", "--n-max", "0"])), 3);
}

#[test]
fn verify_with_failing_manifest() {
    let dir = TempDir::new().unwrap();
    let manifest = dir.path().join("m.json");
    std::fs::write(
        &manifest,
        r#"{"checks": [{"name": "custom", "anchor": "secondary polytope has no parallel facets",
            "kind": "secondary_no_parallel", "n_min": 2, "n_max": 2}]}"#,
    )
    .unwrap();
    let o = assoc(&["verify", "--n-max", "2", "--manifest", manifest.to_str().unwrap()]);
    assert_eq!(code(&o), 0);

    std::fs::write(
        &manifest,
        r#"{"checks": [{"name": "inverted", "anchor": "expectation inverted on purpose",
            "kind": "cluster_parallel_roots", "n_min": 2, "n_max": 2, "draws": 1, "expect_pass": false}]}"#,
    )
    .unwrap();
    let o = assoc(&["verify", "--n-max", "2", "--manifest", manifest.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL"));
    assert!(stdout(&o).contains("\"check\": \"inverted\""));
}

#[test]
fn exports() {
    let dir = TempDir::new().unwrap();
    let p = build(dir.path(), "minkowski", 2);
    let o = assoc(&["export", p.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 1 + 5);

    let off = dir.path().join("p.off");
    let o = assoc(&["export", p.to_str().unwrap(), "--format", "off", "--out", off.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&off).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("OFF"));
    let counts: Vec<usize> = lines.next().unwrap().split(' ').map(|x| x.parse().unwrap()).collect();
    assert_eq!(&counts[..2], &[5, 5]);

    assert_eq!(code(&assoc(&["export", p.to_str().unwrap(), "--format", "xyz"])), 2);
}

#[test]
fn round_trip_and_determinism() {
    let dir = TempDir::new().unwrap();
    for construction in ["secondary", "cluster", "minkowski"] {
        let p = build(dir.path(), construction, 3);
        let again = assoc(&["build", "--construction", construction, "--n", "3"]);
        assert_eq!(stdout(&again), std::fs::read_to_string(&p).unwrap());

        let exported = dir.path().join(format!("{construction}-export.json"));
        let o = assoc(&["export", p.to_str().unwrap(), "--format", "json", "--out", exported.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
        let a = assoc(&["analyze", p.to_str().unwrap()]);
        let b = assoc(&["analyze", exported.to_str().unwrap()]);
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout);
    }
    let a = assoc(&["verify", "--n-max", "2", "--seed", "7"]);
    let b = assoc(&["verify", "--n-max", "2", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
}
