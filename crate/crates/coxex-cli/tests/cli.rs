use std::fs;
use std::process::Command;

use coxex_cli::{run_with, EXIT_FALSE, EXIT_INTERNAL, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["coxex".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(&argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap_or_else(|e| panic!("not JSON ({e}): {s}"))
}

fn write_input(dir: &tempfile::TempDir, name: &str, content: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, content).unwrap();
    path.display().to_string()
}

#[test]
fn gen_equations_b4() {
    let (code, out, _) = run(&["gen-equations", "--family", "B", "--n", "4"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v.as_array().unwrap().len(), 10);
    assert_eq!(v[0]["family"], "B");
}

#[test]
fn gen_equations_families() {
    let count = |args: &[&str]| json(&run(args).1).as_array().unwrap().len();
    assert_eq!(count(&["gen-equations", "--family", "B", "--n", "3"]), 1);
    assert_eq!(count(&["gen-equations", "--family", "E6"]), 27);
    assert_eq!(count(&["gen-equations", "--family", "E7"]), 127);
    assert_eq!(count(&["gen-equations", "--family", "D-cross", "--n", "3"]), 1);
    assert_eq!(count(&["gen-equations", "--family", "A", "--n", "4", "--k", "2"]), 1);
    let both = count(&["gen-equations", "--family", "D", "--n", "5"]);
    let even = count(&["gen-equations", "--family", "D+", "--n", "5"]);
    let odd = count(&["gen-equations", "--family", "D-", "--n", "5"]);
    assert_eq!(both, even + odd);
}

#[test]
fn gen_equations_out_dir() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("eqs");
    let (code, out, _) =
        run(&["gen-equations", "--family", "B", "--n", "4", "--out-dir", target.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["equations"], 10);
    let written = json(&fs::read_to_string(target.join("B_4.json")).unwrap());
    assert_eq!(written.as_array().unwrap().len(), 10);
}

#[test]
fn check_counterexample_is_false() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(&dir, "msets.json", r#"{"n": 3, "sets": [[], [1], [2], [3], [1, 2, 3]]}"#);
    let (code, out, _) = run(&["check", "--family", "B", "--n", "3", "--input", &input]);
    assert_eq!(code, EXIT_FALSE);
    let v = json(&out);
    assert_eq!(v["verdict"], false);
    assert_eq!(v["report"]["delta"], true);
    assert_eq!(v["report"]["strong"], false);
    assert_eq!(v["report"]["tropical"], false);
}

#[test]
fn check_true_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let full = write_input(&dir, "full.json", r#"{"n": 3, "sets": [[], [1], [2], [3], [1,2], [1,3], [2,3], [1,2,3]]}"#);
    assert_eq!(run(&["check", "--family", "B", "--n", "3", "--input", &full]).0, EXIT_OK);
    let u24 = write_input(&dir, "u24.json", r#"{"n": 4, "sets": [[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]]}"#);
    assert_eq!(run(&["check", "--family", "A", "--n", "4", "--k", "2", "--input", &u24]).0, EXIT_OK);
    let even = write_input(&dir, "even.json", r#"{"n": 4, "sets": [[], [1,2,3,4]]}"#);
    let (code, out, _) = run(&["check", "--family", "D", "--n", "4", "--input", &even]);
    assert_eq!(code, EXIT_FALSE);
    assert_eq!(json(&out)["report"]["even"], true);
    let labels = write_input(&dir, "e6.json", r#"["a1", "a2"]"#);
    let (code, out, _) = run(&["check", "--family", "E6", "--input", &labels]);
    assert_eq!(code, EXIT_OK, "{out}");
    let cross = write_input(&dir, "cross.json", r#"{"vertices": [1, -1]}"#);
    let (code, out, _) = run(&["check", "--family", "D-cross", "--n", "3", "--input", &cross]);
    assert_eq!(code, EXIT_FALSE);
    assert_eq!(json(&out)["report"]["coxeter_matroid"], false);
}

#[test]
fn usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(&dir, "m.json", r#"{"n": 3, "sets": [[1]]}"#);
    let bad = write_input(&dir, "bad.json", "{ not json");
    let empty = write_input(&dir, "empty.json", r#"{"n": 3, "sets": []}"#);
    for args in [
        vec!["frobnicate"],
        vec!["gen-equations", "--family", "Q", "--n", "3"],
        vec!["gen-equations", "--family", "B"],
        vec!["gen-equations", "--family", "A", "--n", "4"],
        vec!["gen-equations", "--family", "B", "--n", "2"],
        vec!["check", "--family", "B", "--n", "4", "--input", &input],
        vec!["check", "--family", "B", "--n", "3", "--input", &bad],
        vec!["check", "--family", "B", "--n", "3", "--input", &empty],
        vec!["check", "--family", "B", "--n", "3", "--input", "/nonexistent/file.json"],
        vec!["polytope", "--name", "dodecahedron"],
        vec!["realize", "--type", "A", "--n", "4"],
        vec!["verify", "--suite", "nope"],
        vec!["sample", "--family", "D", "--n", "4"],
    ] {
        let (code, _, err) = run(&args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn polytope_report() {
    let (code, out, _) = run(&["polytope", "--name", "2_21", "--report"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["vertices"], 27);
    assert_eq!(v["regularity"], 16);
    assert_eq!(v["facet_count"], 27);
    assert!(v["facets"].as_array().unwrap().iter().all(|f| f["antipodes"].as_array().unwrap().len() == 5));
    let v = json(&run(&["polytope", "--name", "3_21", "--report"]).1);
    assert_eq!(v["distance_profile"], serde_json::json!([27, 27, 1]));
    assert_eq!(v["antipodes"].as_array().unwrap().len(), 28);
    let v = json(&run(&["polytope", "--name", "cube(3)"]).1);
    assert_eq!(v["vertices"], 8);
}

#[test]
fn realize_is_seeded() {
    let a = run(&["realize", "--type", "D", "--n", "5", "--seed", "7"]);
    assert_eq!(a.0, EXIT_OK);
    assert_eq!(a, run(&["realize", "--type", "D", "--n", "5", "--seed", "7"]));
    assert_ne!(a.1, run(&["realize", "--type", "D", "--n", "5", "--seed", "8"]).1);
    let v = json(&a.1);
    assert_eq!(v["quadrics_vanish"], true);
    assert_eq!(v["coordinates"].as_array().unwrap().len(), 16);
    let v = json(&run(&["realize", "--type", "A", "--n", "5", "--k", "2", "--seed", "1"]).1);
    assert_eq!(v["coordinates"].as_array().unwrap().len(), 10);
    let v = json(&run(&["realize", "--type", "D-cross", "--n", "3", "--seed", "1"]).1);
    assert_eq!(v["coordinates"].as_array().unwrap().len(), 6);
}

#[test]
fn verify_all_small_and_deterministic() {
    let args = ["verify", "--suite", "all", "--max-n", "4", "--trials", "500", "--seed", "11"];
    let (code, out, err) = run(&args);
    assert_eq!(code, EXIT_OK, "{err}");
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert!(v["results"].as_array().unwrap().len() > 20);
    assert!(err.contains("PASS") && !err.contains("FAIL"));
    assert_eq!(out, run(&args).1);
}

#[test]
fn sample_command() {
    let (code, out, _) = run(&["sample", "--family", "B", "--n", "5", "--trials", "300", "--seed", "4"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["trials"], 300);
    assert_eq!(v["discrepancies"], 0);
    assert_eq!(out, run(&["sample", "--family", "B", "--n", "5", "--trials", "300", "--seed", "4"]).1);
}

#[test]
fn exit_code_constants() {
    assert_eq!((EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_INTERNAL), (0, 1, 2, 3));
}

#[test]
fn binary_honours_thread_cap() {
    let bin = env!("CARGO_BIN_EXE_coxex");
    let args = ["verify", "--suite", "exceptional", "--trials", "300"];
    let one = Command::new(bin).args(args).env("COXEX_THREADS", "1").output().unwrap();
    let four = Command::new(bin).args(args).env("COXEX_THREADS", "4").output().unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let bad = Command::new(bin).args(args).env("COXEX_THREADS", "zero").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}
