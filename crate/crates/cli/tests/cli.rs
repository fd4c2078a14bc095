use std::process::Command;

use completion_lab_cli::audit::registry;
use completion_lab_cli::{parse_invocation, run};
use serde_json::Value;

const Z4: &str = r#"{"type":"cyclic","n":4}"#;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("completion-lab").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out, err) = invoke(&full);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

fn verdicts(v: &Value) -> Vec<(String, String)> {
    v["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["id"].as_str().unwrap().to_string(), c["verdict"].as_str().unwrap().to_string()))
        .collect()
}

fn no_numbers(v: &Value) -> bool {
    match v {
        Value::Number(_) => false,
        Value::Array(a) => a.iter().all(no_numbers),
        Value::Object(m) => m.values().all(no_numbers),
        _ => true,
    }
}

#[test]
fn jpowers_example() {
    let v = json(&["jpowers", "--group", Z4, "--field", "F2", "--max-l", "6"]);
    assert_eq!(v["schema"], "completion-lab/1");
    assert_eq!(v["command"], "jpowers");
    assert_eq!(v["results"]["dims"], serde_json::json!(["4", "3", "2", "1", "0"]));
    assert!(verdicts(&v).contains(&("cyclic-powers".into(), "CONFIRMED".into())));
    assert!(no_numbers(&v));
}

#[test]
fn laurent_example() {
    let v = json(&["laurent-report", "--p", "2", "--l-max", "7"]);
    let orders: Vec<&str> =
        v["results"]["orders"]["rows"].as_array().unwrap().iter().map(|r| r["order"].as_str().unwrap()).collect();
    assert_eq!(orders, ["2", "4", "4", "8", "8", "8", "8"]);
    let vs = verdicts(&v);
    assert!(vs.contains(&("orders-listed".into(), "CONFIRMED".into())));
    assert!(vs.contains(&("band-orders".into(), "MISMATCH".into())));
    assert!(vs.contains(&("graded-3".into(), "MISMATCH".into())));
}

#[test]
fn text_and_json_agree_on_verdicts() {
    let args = ["completion-profile", "--group", r#"{"type":"cyclic","n":12}"#, "--field", "F3"];
    let v = json(&args);
    let (code, text, _) = invoke(&args);
    assert_eq!(code, 0);
    for (id, verdict) in verdicts(&v) {
        assert!(text.lines().any(|l| l.contains(&id) && l.contains(&verdict)), "{id} {verdict}\n{text}");
    }
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["jpowers"],
        vec!["jpowers", "--group", "{not json"],
        vec!["jpowers", "--group", r#"{"type":"cyclic","n":4,"extra":1}"#],
        vec!["jpowers", "--group", Z4, "--field", "F4"],
        vec!["series", "--kind", "congruence", "--n", "3"],
        vec!["audit-all", "--rows", "nothing-matches"],
        vec!["no-such-command"],
    ] {
        let (code, out, err) = invoke(&args);
        assert_eq!(code, 2, "{args:?}: {err}");
        assert!(out.is_empty());
        assert!(!err.is_empty());
    }
}

#[test]
fn help_exits_0() {
    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("audit-all"));
}

#[test]
fn element_cap_exits_3() {
    let bin = env!("CARGO_BIN_EXE_completion-lab");
    let sl = r#"{"type":"sl","n":3,"ring":{"type":"zmod","m":4}}"#;
    let out = Command::new(bin)
        .args(["series", "--kind", "lcs", "--group", sl])
        .env("COMPLETION_LAB_MAX_ELEMENTS", "1000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    let out = Command::new(bin).args(["jpowers", "--group", Z4]).env("COMPLETION_LAB_MAX_ELEMENTS", "many").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn section_search_outside_the_claim_is_not_applicable() {
    let v = json(&["section-search", "--group", r#"{"type":"cyclic","n":12}"#, "--onto", r#"{"type":"cyclic","n":3}"#]);
    assert_eq!(v["results"]["verdict"]["verdict"], "FOUND");
    assert_eq!(verdicts(&v), [("no-splitting".to_string(), "N/A".to_string())]);
}

#[test]
fn nonsplit_small_example() {
    let v = json(&["nonsplit-cert", "--group", Z4, "--onto", r#"{"type":"cyclic","n":2}"#]);
    assert_eq!(v["results"]["verdict"]["verdict"], "NONSPLIT_CERTIFIED");
    assert_eq!(verdicts(&v), [("nonsplit".to_string(), "CONFIRMED".to_string())]);
}

#[test]
fn cohomology_and_tower() {
    let v = json(&["cohomology", "--group", r#"{"type":"cyclic","n":6}"#, "--p", "3"]);
    assert!(verdicts(&v).iter().all(|(_, x)| x == "CONFIRMED"));
    let tower = r#"{"levels":[{"type":"cyclic","n":2},{"type":"cyclic","n":4}],"p":2}"#;
    let v = json(&["tower", "--tower", tower]);
    assert_eq!(verdicts(&v), [("tower-comparison".to_string(), "N/A".to_string())]);
    let v = json(&["tower", "--tower", tower, "--discrete-h1", "1", "--discrete-h2", "0"]);
    assert_eq!(v["results"]["consistency"]["verdict"], "CONSISTENT");
}

#[test]
fn audit_rows_filter() {
    let v = json(&["audit-all", "--rows", "laurent,graded/i3"]);
    let vs = verdicts(&v);
    assert!(vs.iter().all(|(id, _)| id.starts_with("laurent/") || id == "graded/i3"));
    assert_eq!(vs.len(), 11);
    let mismatches: Vec<&str> = vs.iter().filter(|(_, x)| x == "MISMATCH").map(|(id, _)| id.as_str()).collect();
    assert_eq!(mismatches, ["laurent/ideal-l3", "laurent/ideal-l4", "graded/i3"]);
    let (code, text, _) = invoke(&["audit-all", "--rows", "laurent"]);
    assert_eq!(code, 0);
    assert!(text.contains("MISMATCH     laurent/ideal-l3"));
}

#[test]
fn registry_rows_parse_and_reproduce() {
    let rows = registry();
    assert!(rows.len() >= 20);
    let mut ids: Vec<&str> = rows.iter().map(|r| r.id.as_str()).collect();
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), rows.len());
    for r in &rows {
        let inv = parse_invocation(&r.argv).unwrap_or_else(|e| panic!("{}: {e}", r.id));
        assert_eq!(inv.argv(), r.argv, "{}", r.id);
    }
    let audit = json(&["audit-all", "--rows", "completion,laurent/ideal-l3"]);
    for row in audit["results"]["rows"].as_array().unwrap() {
        let id = row["id"].as_str().unwrap();
        let r = rows.iter().find(|r| r.id == id).unwrap();
        let args: Vec<&str> = r.argv.iter().map(String::as_str).collect();
        let single = json(&args);
        let claim = single["verdicts"].as_array().unwrap().iter().find(|c| c["id"] == r.claim).unwrap();
        assert_eq!(claim["verdict"], row["verdict"], "{id}");
        assert_eq!(claim["detail"], row["detail"], "{id}");
    }
}

#[test]
fn budget_zero_degrades_to_inconclusive() {
    let v = json(&["audit-all", "--rows", "laurent", "--budget-secs", "0"]);
    for c in v["verdicts"].as_array().unwrap() {
        assert_eq!(c["verdict"], "INCONCLUSIVE");
        assert!(c["detail"].as_str().unwrap().contains("budget"));
    }
}
