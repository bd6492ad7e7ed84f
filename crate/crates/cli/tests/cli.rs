use std::process::{Command, Output};

use serde_json::Value;

fn xoppak(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xoppak")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn statuses(v: &Value) -> Vec<(String, String)> {
    v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["check"].as_str().unwrap().to_string(), c["status"].as_str().unwrap().to_string()))
        .collect()
}

#[test]
fn construct_laguerre_marks_gaps() {
    let out = xoppak(&["construct", "--kind", "laguerre", "--F1", "1", "--alpha", "-3/2", "--n", "0..4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["schema"], "xoppak/1");
    let polys = v["polynomials"].as_array().unwrap();
    assert_eq!(polys.len(), 5);
    assert_eq!(polys[0]["coeffs"], serde_json::json!(["-1"]));
    assert_eq!(polys[1]["excluded"], true);
    assert_eq!(v["omega"], serde_json::json!(["-1/2", "-1"]));
}

#[test]
fn construct_meixner_degree_zero() {
    let out = xoppak(&["construct", "--kind", "meixner", "--F1", "1", "--a", "1/2", "--c", "3", "--n", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["polynomials"][0]["coeffs"], serde_json::json!(["1"]));
    assert_eq!(v["operator"]["terms"].as_array().unwrap().len(), 3);
}

#[test]
fn usage_and_parameter_errors_exit_2() {
    let out = xoppak(&["construct", "--kind", "meixner", "--F1", "1", "--a", "1", "--c", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("a = 1"));
    assert_eq!(xoppak(&["construct", "--kind", "meixner", "--F1", "1", "--a", "1/2"]).status.code(), Some(2));
    assert_eq!(xoppak(&["construct", "--kind", "laguerre", "--alpha", "1/2"]).status.code(), Some(2));
    assert_eq!(xoppak(&["construct", "--kind", "laguerre", "--F1", "1,1", "--alpha", "1/2"]).status.code(), Some(2));
    assert_eq!(xoppak(&["frobnicate"]).status.code(), Some(2));
    let out = xoppak(&["verify", "--kind", "laguerre", "--F1", "1", "--alpha", "1/2", "--checks", "duality"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_eigen_passes() {
    let out = xoppak(&["verify", "--kind", "meixner", "--F1", "1", "--a", "1/2", "--c", "3", "--checks", "eigen,structure"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(statuses(&v), vec![("eigen".into(), "pass".into()), ("structure".into(), "pass".into())]);
    assert_eq!(v["ok"], true);
}

#[test]
fn verify_reports_admissibility_witnesses() {
    let out = xoppak(&["verify", "--kind", "meixner", "--F1", "1", "--a", "1/2", "--c", "-7/2", "--checks", "admissible,norms"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["checks"][0]["status"], "fail_expected");
    assert_eq!(v["checks"][0]["witnesses"], serde_json::json!(["x=0", "x=3"]));
    assert_eq!(v["checks"][1]["status"], "refused");
}

#[test]
fn verify_laguerre_norms() {
    let out = xoppak(&["verify", "--kind", "laguerre", "--F1", "1", "--alpha", "-3/2", "--checks", "norms,nonvanish", "--rel-tol", "1e-8"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(statuses(&v), vec![("norms".into(), "pass".into()), ("nonvanish".into(), "pass".into())]);
}

#[test]
fn krawtchouk_runs_exact_checks_only() {
    let out = xoppak(&["verify", "--kind", "krawtchouk", "--F2", "1", "--a", "1/3", "--N", "6", "--checks", "eigen,norms"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(statuses(&v), vec![("eigen".into(), "pass".into()), ("norms".into(), "refused".into())]);
}

#[test]
fn construct_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("family.json");
    let p = path.to_str().unwrap();
    for args in [
        vec!["--kind", "meixner", "--F1", "1,3", "--F2", "2", "--a", "2/3", "--c", "5/2", "--n", "0..7"],
        vec!["--kind", "laguerre", "--F1", "2", "--F2", "1", "--alpha", "-1/2"],
        vec!["--kind", "krawtchouk", "--F1", "1", "--a", "1/4", "--N", "5"],
    ] {
        let mut c = vec!["construct"];
        c.extend(&args);
        c.extend(["--out", p]);
        assert_eq!(xoppak(&c).status.code(), Some(0));

        let mut v = vec!["verify"];
        v.extend(&args);
        v.extend(["--checks", "eigen", "--against", p]);
        let out = xoppak(&v);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
        assert_eq!(statuses(&json_of(&out))[1], ("construct_roundtrip".into(), "pass".into()));
    }

    // a tampered coefficient is caught and fails the run
    let text = std::fs::read_to_string(&path).unwrap();
    let mut doc: Value = serde_json::from_str(&text).unwrap();
    doc["polynomials"][0]["coeffs"][0] = Value::from("12345/7");
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = xoppak(&["verify", "--kind", "krawtchouk", "--F1", "1", "--a", "1/4", "--N", "5", "--checks", "eigen", "--against", p]);
    assert_eq!(out.status.code(), Some(4));
    let v = json_of(&out);
    assert_eq!(v["checks"][1]["status"], "fail");
    assert_eq!(v["checks"][1]["witnesses"], serde_json::json!(["polynomials differs"]));
}

#[test]
fn sweep_small_box() {
    let out = xoppak(&["--jobs", "2", "sweep", "--max-elem", "3", "--max-card", "3", "--a", "1/2", "--c", "3", "--alpha", "1/2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["counterexamples"].as_array().unwrap().len(), 0);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4 * v["pairs"].as_u64().unwrap() as usize);
    // the ({1}, {}) cell is an exact equality
    let cell: Vec<&Value> = rows.iter().filter(|r| r["f1"] == serde_json::json!([1]) && r["f2"] == serde_json::json!([])).collect();
    assert!(cell.iter().filter(|r| r["check"] == "invariance").all(|r| r["status"] == "pass"));
    assert!(cell.iter().all(|r| r["status"] == "pass" || r["status"] == "refused"));
    // rows come in lexicographic pair order
    let keys: Vec<(Vec<i64>, Vec<i64>)> = rows
        .iter()
        .step_by(4)
        .map(|r| {
            let s = |k: &str| r[k].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect::<Vec<_>>();
            (s("f1"), s("f2"))
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn sweep_empty_and_csv() {
    let out = xoppak(&["sweep", "--max-card", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["rows"], serde_json::json!([]));

    let out = xoppak(&["sweep", "--max-elem", "2", "--max-card", "1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "f1,f2,family,params,check,status,witnesses");
    assert_eq!(lines.len(), 1 + 4 * 4);
    assert!(lines[1..].iter().all(|l| l.contains(",pass,") || l.contains(",refused,")));
    assert!(lines[1..].iter().filter(|l| l.contains(",invariance,")).all(|l| l.contains(",pass,")));
}

#[test]
fn admissible_verb() {
    let out = xoppak(&["admissible", "--F1", "1", "--alpha", "-3/2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["admissible"], true);
    let out = xoppak(&["admissible", "--F1", "1", "--c", "-7/2"]);
    let v = json_of(&out);
    assert_eq!(v["admissible"], false);
    assert_eq!(v["witnesses"], serde_json::json!([0, 3]));
    assert_eq!(xoppak(&["admissible", "--F1", "1"]).status.code(), Some(2));
}
