//! End-to-end command tests driving the in-process entry point, plus a few
//! spawned-binary checks for environment handling.

use std::path::PathBuf;
use std::process::Command;

use skalc::cli::run_from;

const TRIANGLE: &str = r#"{
  "vertices": ["1", "2", "3"],
  "edges": [
    {"incident": ["1", "2"], "entropy": 1},
    {"incident": ["1", "3"], "entropy": 1},
    {"incident": ["2", "3"], "entropy": "1"}
  ],
  "active": ["1", "2", "3"]
}"#;

const ADVERSARIAL: &str = r#"{
  "vertices": ["a", "b", "c", "d"],
  "edges": [
    {"incident": ["a", "b"], "entropy": 1},
    {"incident": ["b", "c"], "entropy": "3/2"},
    {"incident": ["c", "d"], "entropy": 1},
    {"incident": ["a", "c"], "entropy": "1/2"}
  ],
  "active": ["a", "b", "c"],
  "untrusted": ["d"],
  "wiretap_edges": [0]
}"#;

const LINEAR: &str = r#"{
  "bits": 2,
  "observers": {
    "u": [[1, 0]],
    "v": [[1, 0], [0, 1]]
  },
  "active": ["u", "v"]
}"#;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("skalc").chain(args.iter().copied());
    let code = run_from(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn temp_file(name: &str, content: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("skalc-cli-test-{}-{name}", std::process::id()));
    std::fs::write(&path, content).unwrap();
    path
}

#[test]
fn cs_on_the_triangle() {
    let input = temp_file("cs.json", TRIANGLE);
    let (code, out, _) = run(&["cs", "--input", input.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("quantity,exact,decimal\n"));
    assert!(out.contains("C_S,3/2,1.5\n"));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let input = temp_file("det.json", TRIANGLE);
    for format in ["table", "csv", "json"] {
        let args = ["cs-at", "--input", input.to_str().unwrap(), "--rate", "1", "--format", format];
        let (c1, o1, e1) = run(&args);
        let (c2, o2, e2) = run(&args);
        assert_eq!(c1, 0);
        assert_eq!((c1, &o1, &e1), (c2, &o2, &e2));
    }
}

#[test]
fn lazy_and_eager_flags_agree() {
    let input = temp_file("strategy.json", TRIANGLE);
    let base = ["rco", "--input", input.to_str().unwrap(), "--format", "csv"];
    let (_, lazy, _) = run(&base);
    let mut eager_args = base.to_vec();
    eager_args.extend(["--strategy", "eager"]);
    let (_, eager, _) = run(&eager_args);
    assert_eq!(lazy, eager);
}

#[test]
fn json_output_parses_and_keeps_exact_strings() {
    let input = temp_file("json.json", TRIANGLE);
    let (code, out, _) = run(&["rco", "--input", input.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code, 0);
    let rows: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows[0]["quantity"], "R_CO");
    assert_eq!(rows[0]["exact"], "3/2");
}

#[test]
fn curve_writes_the_requested_csv() {
    let input = temp_file("curve.json", TRIANGLE);
    let out_path = std::env::temp_dir().join(format!("skalc-cli-test-{}-curve.csv", std::process::id()));
    let (code, _, _) = run(&[
        "curve",
        "--input",
        input.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    let written = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(
        written,
        "R,C_S(R),R_decimal,C_S_decimal\n0,0,0,0\n3/2,3/2,1.5,1.5\n"
    );
    std::fs::remove_file(&out_path).ok();
}

#[test]
fn reduce_round_trips_through_the_document_format() {
    let input = temp_file("reduce.json", ADVERSARIAL);
    let (code, reduced_doc, _) = run(&["reduce", "--input", input.to_str().unwrap()]);
    assert_eq!(code, 0);
    let reduced_path = temp_file("reduced.json", &reduced_doc);

    // Capacity of the reduced document equals capacity of the original
    // with adversaries declared.
    let (c1, v1, _) = run(&["cs", "--input", input.to_str().unwrap(), "--format", "csv"]);
    let (c2, v2, _) = run(&["cs", "--input", reduced_path.to_str().unwrap(), "--format", "csv"]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(v1, v2);

    // The reduced document no longer mentions adversaries.
    assert!(!reduced_doc.contains("untrusted"));
    assert!(!reduced_doc.contains("wiretap_edges"));
}

#[test]
fn linear_documents_are_detected_and_solved() {
    let input = temp_file("linear.json", LINEAR);
    let (code, out, _) = run(&["rco", "--input", input.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(out.contains("R_CO,1,1\n"));
    let (code, out, _) = run(&["cs", "--input", input.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(out.contains("C_S,1,1\n"));
}

#[test]
fn counterexample_prints_the_gap() {
    let (code, out, _) = run(&["counterexample", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(out.contains("R_CO,3,3\n"));
    assert!(out.contains("C_S,1,1\n"));
    assert!(out.contains("\"lower bound via W = (a, b, c)\",2,2\n"));
    assert!(out.contains("gap to the stated complexity,1,1\n"));
}

#[test]
fn bounds_table_includes_the_helper_row_on_request() {
    let input = temp_file("bounds.json", TRIANGLE);
    let (code, out, _) = run(&[
        "bounds",
        "--input",
        input.to_str().unwrap(),
        "--rate",
        "1",
        "--helpers",
        "2",
        "--key-rate",
        "3/2",
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("lamination,capacity upper,1,1,1,0,yes"));
    assert!(out.contains("helper-set,helper rate lower,1/2,0.5"));
}

#[test]
fn parse_errors_exit_two() {
    let bad = temp_file("bad.json", "{\"vertices\": [\"a\"], \"edges\": 7}");
    let (code, _, err) = run(&["cs", "--input", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("error:"));

    let unknown = temp_file(
        "unknown.json",
        r#"{"vertices": ["a"], "edges": [{"incident": ["zzz"], "entropy": 1}], "active": ["a"]}"#,
    );
    let (code, _, _) = run(&["rco", "--input", unknown.to_str().unwrap()]);
    assert_eq!(code, 2);

    let missing = std::env::temp_dir().join("skalc-cli-test-does-not-exist.json");
    let (code, _, _) = run(&["rco", "--input", missing.to_str().unwrap()]);
    assert_eq!(code, 2);

    let (code, _, _) = run(&["cs", "--no-such-flag"]);
    assert_eq!(code, 2);

    // A linear document where a hypergraphical one is required.
    let linear = temp_file("linear-for-gk.json", LINEAR);
    let (code, _, _) = run(&["gk", "--input", linear.to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn size_limit_exits_three() {
    let vertices: Vec<String> = (1..=13).map(|i| format!("\"{i}\"")).collect();
    let doc = format!(
        "{{\"vertices\": [{v}], \"edges\": [{{\"incident\": [\"1\", \"2\"], \"entropy\": 1}}], \"active\": [{v}]}}",
        v = vertices.join(", ")
    );
    let input = temp_file("big.json", &doc);
    let (code, _, err) = run(&["rco", "--input", input.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(err.contains("enumeration limit"));
}

#[test]
fn infeasible_key_rate_exits_four() {
    let input = temp_file("rk.json", TRIANGLE);
    let (code, _, err) = run(&[
        "rs-at",
        "--input",
        input.to_str().unwrap(),
        "--key-rate",
        "2",
    ]);
    assert_eq!(code, 4);
    assert!(err.contains("exceeds the secrecy capacity 3/2"));
}

#[test]
fn verify_subcommand_runs_clean() {
    let (code, out, _) = run(&["verify", "--seed", "12", "--instances", "8"]);
    assert_eq!(code, 0);
    assert!(out.contains("duality"));
    assert!(out.contains("pass"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("SCHEMA.md"));
}

#[test]
fn spawned_binary_honors_the_enum_limit_override() {
    let vertices: Vec<String> = (1..=13).map(|i| format!("\"{i}\"")).collect();
    let doc = format!(
        "{{\"vertices\": [{v}], \"edges\": [{{\"incident\": [\"1\", \"2\"], \"entropy\": 1}}], \"active\": [{v}]}}",
        v = vertices.join(", ")
    );
    let input = temp_file("big-env.json", &doc);
    let bin = env!("CARGO_BIN_EXE_skalc");

    let blocked = Command::new(bin)
        .args(["rco", "--input", input.to_str().unwrap()])
        .env_remove("SKALC_ENUM_LIMIT")
        .output()
        .unwrap();
    assert_eq!(blocked.status.code(), Some(3));

    let allowed = Command::new(bin)
        .args(["rco", "--input", input.to_str().unwrap()])
        .env("SKALC_ENUM_LIMIT", "13")
        .output()
        .unwrap();
    assert_eq!(allowed.status.code(), Some(0));
    let err = String::from_utf8(allowed.stderr).unwrap();
    assert!(err.contains("overrides the default enumeration limit"));
}
