use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run_in(dir: &std::path::Path, args: &[&str]) -> (i32, Value, String) {
    let o: Output = Command::new(env!("CARGO_BIN_EXE_tracelattice"))
        .args(args)
        .env("TRACELATTICE_FIXTURES", dir)
        .output()
        .expect("binary runs");
    let v: Value = serde_json::from_slice(&o.stdout).expect("stdout is one JSON document");
    (o.status.code().unwrap(), v, String::from_utf8_lossy(&o.stderr).into_owned())
}

fn run(args: &[&str]) -> (i32, Value, String) {
    run_in(&fixtures(), args)
}

#[test]
fn aut_order_and_report_shape() {
    let (code, v, err) = run(&["aut", "cubic-1425", "zero"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "1");
    assert_eq!(v["results"]["order"], "4");
    assert!(v["timing_ms"].is_number());
    assert!(err.contains("= 4"));
}

#[test]
fn json_only_silences_stderr() {
    let (_, _, err) = run(&["--json-only", "lattice", "zsqrt2", "full"]);
    assert!(err.is_empty());
}

#[test]
fn no_timing_output_is_deterministic() {
    let a = run(&["--no-timing", "field", "sextic-453789"]).1;
    let b = run(&["--no-timing", "field", "sextic-453789"]).1;
    assert!(a.get("timing_ms").is_none());
    assert_eq!(a, b);
}

#[test]
fn isometry_verdicts_set_the_exit_code() {
    let (code, v, _) = run(&["iso", "cubic-229-alt", "cubic-fund-229", "full"]);
    assert_eq!((code, v["verdict"].as_bool()), (0, Some(true)));
    let (code, v, _) = run(&["iso", "cubic-1425", "cubic-c3-49", "zero"]);
    assert_eq!((code, v["verdict"].as_bool()), (2, Some(false)));
    // every isometry is one fixed isometry composed with an automorphism
    let (code, v, _) = run(&["iso", "q-2688656", "q-disc-eq", "full", "--all"]);
    assert_eq!(code, 0);
    let aut = run(&["aut", "q-disc-eq", "full"]).1;
    assert_eq!(v["results"]["count"].to_string(), aut["results"]["order"].as_str().unwrap());
}

#[test]
fn lift_and_survey_find_the_non_liftable_pair() {
    let (code, v, _) = run(&["lift", "q-2688656", "q-disc-eq", "zero"]);
    assert_eq!(code, 2);
    let s = &v["results"]["summary"];
    assert_eq!(s["total"], 48);
    assert_eq!(s["lifted"], 16);
    let (code, v, _) = run(&["survey"]);
    assert_eq!(code, 0);
    let f = v["results"]["findings"].as_array().unwrap();
    assert_eq!(f.len(), 1);
    assert_eq!(f[0]["k"], "q-2688656");
    assert_eq!(f[0]["l"], "q-disc-eq");
}

#[test]
fn shape_and_theorem() {
    // cyclic cubic fields all have hexagonal shape
    let (code, v, _) = run(&["shape", "cubic-c3-49", "cubic-c3-81"]);
    assert_eq!((code, v["verdict"].as_bool()), (0, Some(true)));
    let (code, v, _) = run(&["shape", "cubic-1425", "cubic-c3-49"]);
    assert_eq!((code, v["verdict"].as_bool()), (2, Some(false)));
    let (code, v, _) = run(&["theorem", "cubic-229-alt", "cubic-fund-229"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["asserted"], true);
    assert_eq!(v["results"]["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn casimir_of_identity_and_of_a_non_isometry() {
    let dir = tempfile::tempdir().unwrap();
    let id = dir.path().join("id.json");
    std::fs::write(&id, r#"{"map": [[1,0,0],[0,1,0],[0,0,1]]}"#).unwrap();
    let (code, v, _) = run(&["casimir", "cubic-1425", "cubic-1425", id.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["orthogonal"], true);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"[["1","0","0"],["0","1/2","0"],["0","0","1"]]"#).unwrap();
    let (code, v, _) = run(&["casimir", "cubic-1425", "cubic-1425", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(v["results"]["orthogonal"], false);
}

#[test]
fn bhargava_subcommands() {
    let (code, v, _) = run(&["bhargava", "disc", "1", "0", "-3", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["disc"], "81");
    let pair = r#"{"a":[1,0,0,1,0,1],"b":[0,0,0,1,0,-1]}"#;
    let (code, v, _) = run(&["bhargava", "assoc", pair]);
    assert_eq!((code, v["verdict"].as_bool()), (0, Some(true)));
    let g = r#"{"g2":[[1,1],[0,1]],"g3":[[1,0,0],[0,1,0],[0,0,1]]}"#;
    let (code, v, _) = run(&["bhargava", "act", g, pair]);
    assert_eq!(code, 0);
    // (A, B) goes to (A + B, B)
    assert_eq!(v["results"]["pair"]["a"][3], "2");
    assert_eq!(v["results"]["pair"]["a"][5], "0");
    assert_eq!(v["results"]["pair"]["b"], serde_json::json!(["0", "0", "0", "1", "0", "-1"]));
}

#[test]
fn errors_exit_with_one() {
    let (code, v, _) = run(&["field", "no-such-field"]);
    assert_eq!(code, 1);
    assert!(v["error"]["message"].as_str().unwrap().contains("no-such-field"));
    let (code, _, _) = run(&["lift", "zsqrt2", "zsqrt2", "full"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["bhargava", "resolvent", "{\"a\": [1, 2]}"]);
    assert_eq!(code, 1);
}

#[test]
fn malformed_fixture_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("broken.json"), r#"{"label": "broken", "poly": ["x"]}"#).unwrap();
    let (code, v, _) = run_in(dir.path(), &["survey"]);
    assert_eq!(code, 1);
    assert!(v["error"].is_object());
}

#[test]
fn budget_exhaustion_exits_with_three() {
    let (code, _, _) = run(&["--budget", "3", "aut", "sextic-453789", "full"]);
    assert_eq!(code, 3);
}

fn max_abs_number(v: &Value) -> f64 {
    match v {
        Value::Number(n) => n.as_f64().unwrap().abs(),
        Value::Array(a) => a.iter().map(max_abs_number).fold(0.0, f64::max),
        Value::Object(o) => o.values().map(max_abs_number).fold(0.0, f64::max),
        _ => 0.0,
    }
}

#[test]
fn reports_follow_the_schema() {
    let allowed = ["schema", "command", "inputs", "results", "verdict", "error", "timing_ms"];
    let runs: [&[&str]; 5] = [
        &["--no-timing", "field", "q-2688656"],
        &["--no-timing", "aut", "sextic-453789", "zero"],
        &["--no-timing", "theorem", "q-2688656", "q-disc-eq"],
        &["--no-timing", "bhargava", "covariant", r#"{"a":[1,2,3,4,5,6],"b":[-1,0,2,5,-3,1]}"#],
        &["--no-timing", "field", "missing"],
    ];
    for args in runs {
        let (_, v, _) = run(args);
        let o = v.as_object().unwrap();
        assert!(o.keys().all(|k| allowed.contains(&k.as_str())), "{o:?}");
        assert_eq!(o["schema"], "1");
        assert_eq!(o["command"].as_array().unwrap().len(), args.len());
        assert!(o.contains_key("results") != o.contains_key("error"));
        // bare JSON numbers are only used for small counts
        assert!(max_abs_number(&v) < 1e6, "{args:?}");
        let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        assert_eq!(again, v);
    }
    let (_, v, _) = run(&["field", "q-2688656"]);
    assert_eq!(v["results"]["disc"], "4410944");
}
