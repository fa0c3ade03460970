use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn instances() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("instances")
}

fn run(instance: &Path, out: &Path, extra: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pavinglab"))
        .arg("--instance")
        .arg(instance)
        .arg("--out")
        .arg(out)
        .args(extra)
        .output()
        .unwrap()
}

fn write_instance(dir: &Path, text: &str) -> PathBuf {
    let path = dir.join("instance.json");
    std::fs::write(&path, text).unwrap();
    path
}

fn read_json(path: &Path) -> Value {
    serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn counts_are_ordered_by_spec_then_prime() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&instances().join("steinberg_count.json"), dir.path(), &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = std::fs::read_to_string(dir.path().join("count.csv")).unwrap();
    // Regular e fixes one full flag; e = 0 in GL_2 leaves all q + 1 lines.
    assert_eq!(csv, "spec_id,q,count\nsp4-regular,3,1\nsp4-regular,5,1\ngl2-zero,3,4\ngl2-zero,5,6\n");
    assert!(dir.path().join("run.meta.json").exists());
}

#[test]
fn decreasing_c_is_an_input_error_naming_the_index() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write_instance(
        dir.path(),
        r#"{"mode": "count", "q_list": [3], "specs": [{"form": "C", "parts": [4], "d": [0, 1, 2], "c": [0, 1, 2, 1, 4, 5]}]}"#,
    );
    let o = run(&inst, dir.path(), &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("index 3"), "{}", stderr(&o));
}

#[test]
fn unknown_fields_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write_instance(
        dir.path(),
        r#"{"mode": "count", "q_list": [3], "specs": [{"form": "C", "parts": [4], "d": [0, 1, 2], "c": [0, 1, 2, 3, 4, 5], "colour": 2}]}"#,
    );
    let o = run(&inst, dir.path(), &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("colour"));
}

#[test]
fn exhausted_budget_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write_instance(
        dir.path(),
        r#"{"mode": "count", "q_list": [5], "specs": [{"form": "A", "parts": [1, 1, 1, 1], "d": [0, 1, 2, 3, 4], "c": [0, 1, 2, 3, 4]}]}"#,
    );
    let o = run(&inst, dir.path(), &["--budget", "10"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn pave_output_is_byte_identical_across_runs_and_worker_counts() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let inst = instances().join("pave_suite.json");
    assert_eq!(run(&inst, a.path(), &["--jobs", "1"]).status.code(), Some(0));
    assert_eq!(run(&inst, b.path(), &["--jobs", "3"]).status.code(), Some(0));
    for f in ["certificate.json", "poincare.json", "audit.csv"] {
        assert_eq!(std::fs::read(a.path().join(f)).unwrap(), std::fs::read(b.path().join(f)).unwrap(), "{f}");
    }
    let polys = read_json(&a.path().join("poincare.json"));
    let c42 = polys.as_array().unwrap().iter().find(|p| p["id"] == "c42-0123").unwrap();
    assert_eq!(c42["coefficients"], serde_json::json!([2]));
    assert_eq!(c42["direct"], serde_json::json!([2]));
}

#[test]
fn non_distinguished_pave_suggests_the_minimal_levi() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write_instance(
        dir.path(),
        r#"{"mode": "pave", "specs": [{"id": "c22", "form": "C", "parts": [2, 2], "d": [0, 1], "c": [0, 1, 2, 3]}]}"#,
    );
    let o = run(&inst, dir.path(), &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("GL factors [2]"), "{}", stderr(&o));
}

#[test]
fn regular_pave_gives_polynomial_one() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write_instance(
        dir.path(),
        r#"{"mode": "pave", "specs": [{"form": "C", "parts": [4], "d": [0, 1, 2], "c": [0, 1, 2, 3, 4, 5]}]}"#,
    );
    assert_eq!(run(&inst, dir.path(), &[]).status.code(), Some(0));
    let polys = read_json(&dir.path().join("poincare.json"));
    assert_eq!(polys[0]["display"], "1");
    let cert = read_json(&dir.path().join("certificate.json"));
    assert_eq!(cert[0]["certificate"]["root"]["kind"], "regular_point");
}

#[test]
fn failed_holdout_exits_with_three_after_writing_results() {
    // q = 7 ≡ 3 (mod 4) sees a twisted form of this locus.
    let dir = tempfile::tempdir().unwrap();
    let inst = write_instance(
        dir.path(),
        r#"{"mode": "pave", "specs": [{"form": "C", "parts": [6, 2], "d": [0, 1, 2, 4], "c": [0, 1, 2, 3, 4, 5, 6, 7]}]}"#,
    );
    let o = run(&inst, dir.path(), &["--holdout-prime", "7"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(stderr(&o).contains("holdout"));
    assert!(dir.path().join("certificate.json").exists());
    assert_eq!(read_json(&dir.path().join("run.meta.json"))["exit_code"], 3);
}

#[test]
fn classify_ideal_reports_sequences_and_duality() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&instances().join("classify.json"), dir.path(), &[]).status.code(), Some(0));
    let out = read_json(&dir.path().join("classify.json"));
    assert_eq!(out[0]["c"], serde_json::json!([0, 0, 1]));
    assert_eq!(out[0]["self_dual"], Value::Null);
    assert_eq!(out[2]["self_dual"], true);
    assert_eq!(out[2]["c"], out[2]["dual"]);
}

#[test]
fn unnormalized_even_orthogonal_shape_gets_a_hint() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write_instance(
        dir.path(),
        r#"{"mode": "classify-ideal", "specs": [{"form": "BD", "m": 6, "d": [0, 2], "roots": [[1, -1, 0]]}]}"#,
    );
    let o = run(&inst, dir.path(), &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("swap the last two simple roots"), "{}", stderr(&o));
}

#[test]
fn validate_summarizes_each_spec() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write_instance(
        dir.path(),
        r#"{"mode": "validate", "specs": [
            {"id": "a", "form": "C", "parts": [4, 2], "d": [0, 1], "c": [0, 1, 2, 3]},
            {"id": "b", "form": "BD", "m": 8, "d": [0, 1]}
        ]}"#,
    );
    assert_eq!(run(&inst, dir.path(), &[]).status.code(), Some(0));
    let out = read_json(&dir.path().join("validate.json"));
    assert_eq!(out[0]["distinguished"], true);
    assert_eq!(out[0]["self_dual"], true);
    assert_eq!(out[0]["dim_flag_variety"], 5);
    assert_eq!(out[1]["distinguished"], Value::Null);
}

#[test]
fn poincare_full_counts_match_the_holdout() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&instances().join("polynomials.json"), dir.path(), &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = read_json(&dir.path().join("poincare.json"));
    assert_eq!(out[0]["coefficients"], serde_json::json!([1, 2, 2, 1]));
    assert_eq!(out[1]["display"], "4q + 1");
    assert!(out.as_array().unwrap().iter().all(|p| p["holdout_ok"] == true));
}

#[test]
fn log_level_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_pavinglab"))
        .env("PAVINGLAB_LOG", "info")
        .arg("--instance")
        .arg(instances().join("steinberg_count.json"))
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("count over 2 spec(s)"));
    assert!(o.stdout.is_empty());
}
