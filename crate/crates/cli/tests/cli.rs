use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn hsk(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hsk"))
        .args(args)
        .arg("--cache")
        .arg(cache)
        .output()
        .expect("binary runs")
}

fn ok_json(args: &[&str], cache: &Path) -> Value {
    let out = hsk(args, cache);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn float(v: &Value) -> (f64, f64) {
    (
        v["float"]["re"].as_f64().unwrap(),
        v["float"]["im"].as_f64().unwrap(),
    )
}

#[test]
fn labels_at_two_two() {
    let dir = tempfile::tempdir().unwrap();
    let v = ok_json(&["labels", "--N", "2", "--K", "2"], dir.path());
    assert_eq!(v, json!([[], [1], [2]]));
}

#[test]
fn closure_of_empty_braid_is_loop_value() {
    let dir = tempfile::tempdir().unwrap();
    let v = ok_json(
        &[
            "closure",
            "--N",
            "2",
            "--K",
            "2",
            "--strands",
            "1",
            "--braid",
            "",
        ],
        dir.path(),
    );
    let (re, im) = float(&v);
    assert!((re - 2f64.sqrt()).abs() < 1e-12 && im.abs() < 1e-12);
    assert!(v["exact"]["num"].is_array());
}

#[test]
fn trace_of_a_generator() {
    let dir = tempfile::tempdir().unwrap();
    let v = ok_json(
        &[
            "trace",
            "--N",
            "2",
            "--K",
            "2",
            "--strands",
            "2",
            "--braid",
            "1",
        ],
        dir.path(),
    );
    let closure = ok_json(
        &["closure", "--N", "2", "--K", "2", "--braid", "1"],
        dir.path(),
    );
    let (a, b) = (float(&v), float(&closure));
    // closure = [N]^2 Tr
    assert!((a.0 * 2.0 - b.0).abs() < 1e-12 && (a.1 * 2.0 - b.1).abs() < 1e-12);
}

#[test]
fn gram_and_purify() {
    let dir = tempfile::tempdir().unwrap();
    let g = ok_json(&["gram", "--N", "2", "--K", "2", "--n", "3"], dir.path());
    assert_eq!(g["rank"], 4);
    assert_eq!(g["kernel_dim"], 2);
    let h = ok_json(
        &[
            "gram",
            "--N",
            "2",
            "--K",
            "2",
            "--n",
            "3",
            "--form",
            "hermitian",
            "--full",
        ],
        dir.path(),
    );
    assert_eq!(h["rank"], 4);
    assert_eq!(h["matrix"].as_array().unwrap().len(), 6);
    assert_eq!(h["kernel"].as_array().unwrap().len(), 2);
    let p = ok_json(&["purify", "--N", "2", "--K", "1", "--n", "2"], dir.path());
    assert_eq!(p, json!({"dim": 1, "radical_dim": 1}));
}

#[test]
fn fusion_commands() {
    let dir = tempfile::tempdir().unwrap();
    let v = ok_json(
        &[
            "fusion", "--N", "2", "--K", "2", "--a", "2", "--b", "2", "--c", "",
        ],
        dir.path(),
    );
    assert_eq!(v["n"], 1);
    let t = ok_json(&["fusion", "--N", "2", "--K", "2"], dir.path());
    let entries = t["entries"].as_array().unwrap();
    assert!(entries.contains(&json!({"a": [1], "b": [1], "c": [2], "n": 1})));
    assert!(!entries
        .iter()
        .any(|e| e["a"] == json!([2]) && e["b"] == json!([2]) && e["c"] == json!([2])));
    let out = hsk(&["fusion", "--N", "2", "--K", "2", "--a", "1"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn category_data() {
    let dir = tempfile::tempdir().unwrap();
    let q = ok_json(
        &["qdim", "--N", "2", "--K", "2", "--lambda", "1"],
        dir.path(),
    );
    assert!((float(&q).0 - 2f64.sqrt()).abs() < 1e-12);
    let t = ok_json(
        &["twist", "--N", "2", "--K", "2", "--lambda", ""],
        dir.path(),
    );
    assert_eq!(float(&t["theta"]), (1.0, 0.0));
    let s = ok_json(
        &["smatrix", "--N", "2", "--K", "2", "--balanced"],
        dir.path(),
    );
    assert_eq!(s["labels"], json!([[], [1], [2]]));
    assert!(float(&s["determinant"]).0.abs() + float(&s["determinant"]).1.abs() > 1e-6);
    let m = ok_json(
        &[
            "mfdim", "--N", "2", "--K", "2", "--label", "1", "--label", "1", "--label", "1",
            "--label", "1",
        ],
        dir.path(),
    );
    assert_eq!(m, json!(2));
    let m = ok_json(
        &["mfdim", "--N", "2", "--K", "2", "--genus", "1"],
        dir.path(),
    );
    assert_eq!(m, json!(3));
    let b = ok_json(
        &["blocks", "--N", "2", "--K", "2", "--n", "2", "--elements"],
        dir.path(),
    );
    assert_eq!(b["blocks"].as_array().unwrap().len(), 2);
    assert!(b["blocks"][0]["z"]["terms"].is_array());
}

#[test]
fn verify_passes_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let v = ok_json(
        &["verify", "--N", "2", "--K", "2", "--max-n", "5"],
        dir.path(),
    );
    assert_eq!(v["overall"], "pass");
    let gram3 = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "gram rank n=3 equals 4")
        .expect("gram check present");
    assert_eq!(gram3["status"], "pass");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(
        hsk(&["verify", "--N", "2", "--K", "1", "--max-n", "9"], d)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(hsk(&["labels"], d).status.code(), Some(2));
    assert_eq!(hsk(&["nonsense"], d).status.code(), Some(2));
    assert_eq!(
        hsk(&["gram", "--N", "2", "--K", "1", "--n", "7"], d)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        hsk(&["trace", "--N", "2", "--K", "1", "--braid", "x"], d)
            .status
            .code(),
        Some(2)
    );
    let out = hsk(&["dagger", "--N", "2", "--K", "1", "--lambda", "3"], d);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dagger"));
    assert_eq!(
        hsk(&["qint", "--N", "2", "--K", "1", "--j", "2"], d)
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn cache_is_transparent_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["blocks", "--N", "3", "--K", "2", "--n", "4", "--elements"];
    let cold = hsk(&args, dir.path());
    assert!(cold.status.success());
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    let warm = hsk(&args, dir.path());
    assert_eq!(cold.stdout, warm.stdout);

    let other = tempfile::tempdir().unwrap();
    let fresh = hsk(&args, other.path());
    assert_eq!(cold.stdout, fresh.stdout);

    // corrupt every entry; results must not change
    for e in std::fs::read_dir(dir.path()).unwrap() {
        std::fs::write(e.unwrap().path(), b"{\"key\":\"x\"}").unwrap();
    }
    let again = hsk(&args, dir.path());
    assert_eq!(cold.stdout, again.stdout);
}

#[test]
fn pretty_output_parses_to_the_same_value() {
    let dir = tempfile::tempdir().unwrap();
    let a = ok_json(
        &[
            "jw",
            "--N",
            "3",
            "--K",
            "2",
            "--strands",
            "3",
            "--kind",
            "sym",
        ],
        dir.path(),
    );
    let b = ok_json(
        &[
            "jw",
            "--N",
            "3",
            "--K",
            "2",
            "--strands",
            "3",
            "--kind",
            "sym",
            "--pretty",
        ],
        dir.path(),
    );
    assert_eq!(a, b);
    assert_eq!(a["n"], 3);
    assert_eq!(a["terms"].as_array().unwrap().len(), 6);
}
