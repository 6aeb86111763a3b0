use std::fs;
use std::process::{Command, Output};

use serde_json::{json, Value};
use wkring::json::{CTableDoc, KTableDoc, SteinbergDoc};

fn wkring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wkring")).args(args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let out = wkring(args);
    let doc = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{args:?}: stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    });
    (out.status.code().expect("exit code"), doc)
}

const SPLIT_B2: &str = r#"{"rays": [[1,0],[1,1],[0,1]], "cones": [[0],[1],[2],[0,1],[1,2]]}"#;

#[test]
fn ktable_a1_golden() {
    let (code, doc) = run_json(&["ktable", "--type", "A1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["kgb_rank"], 2);
    assert_eq!(doc["products"]["s1|s1"], json!([{ "w": "s1", "coef": { "1": 4, "s1": -4 } }]));
    assert_eq!(doc["products"]["1|s1"], json!([{ "w": "s1", "coef": { "1": 1, "s1": 0 } }]));
    let keys: Vec<&String> = doc["products"].as_object().unwrap().keys().collect();
    assert_eq!(keys, ["1|1", "1|s1", "s1|1", "s1|s1"]);
}

#[test]
fn ktable_a2_is_symmetric_with_unit_row() {
    let (code, doc) = run_json(&["ktable", "--type", "A2"]);
    assert_eq!(code, 0);
    let t: KTableDoc = serde_json::from_value(doc).unwrap();
    assert_eq!(t.products.len(), 36);
    let names = ["1", "s1", "s2", "s1.s2", "s2.s1", "s1.s2.s1"];
    for a in names {
        let unit = &t.products[&format!("1|{a}")];
        assert_eq!(unit.len(), 1);
        assert_eq!(unit[0].w, a);
        for b in names {
            assert_eq!(t.products[&format!("{a}|{b}")], t.products[&format!("{b}|{a}")]);
        }
    }
}

#[test]
fn verify_a2_prop18_passes() {
    let (code, doc) = run_json(&["verify", "--type", "A2", "--suite", "prop1.8"]);
    assert_eq!(code, 0);
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["suites"][0]["suite"], "prop1.8");
    assert!(doc["suites"][0]["checks"].as_u64().unwrap() > 0);
}

#[test]
fn verify_a1_all_suites_pass() {
    let (code, doc) = run_json(&["verify", "--type", "A1"]);
    assert_eq!(code, 0, "{doc}");
    let suites: Vec<&str> = doc["suites"].as_array().unwrap().iter().map(|s| s["suite"].as_str().unwrap()).collect();
    for s in ["prop1.8", "lemma1.9", "membership", "two-path-product", "pushdown", "toric-decomp"] {
        assert!(suites.contains(&s), "{s} missing");
    }
}

#[test]
fn verify_b2_membership_passes() {
    let (code, doc) = run_json(&["verify", "--type", "B2", "--suite", "membership"]);
    assert_eq!(code, 0);
    assert_eq!(doc["suites"][0]["checks"], 200);
}

#[test]
fn ctable_f4_is_gated() {
    let (code, doc) = run_json(&["ctable", "--type", "F4"]);
    assert_eq!(code, 1);
    assert_eq!(doc["error"]["kind"], "RankBoundExceeded");
}

#[test]
fn unknown_suite_is_a_validation_error() {
    let (code, doc) = run_json(&["verify", "--type", "A1", "--suite", "prop18"]);
    assert_eq!(code, 1);
    assert_eq!(doc["error"]["kind"], "UnknownSuite");
}

#[test]
fn bad_arguments_give_json_errors() {
    let (code, doc) = run_json(&["roots", "--type", "E9"]);
    assert_eq!(code, 1);
    assert_eq!(doc["error"]["kind"], "InvalidCartanLabel");
    let (code, doc) = run_json(&["frobnicate", "--type", "A1"]);
    assert_eq!(code, 1);
    assert_eq!(doc["error"]["kind"], "Usage");
    let (code, doc) = run_json(&["toric-check", "--type", "A2"]);
    assert_eq!(code, 1);
    assert_eq!(doc["error"]["kind"], "Usage");
    let (code, _) = run_json(&["weyl", "--type", "A5", "--max-rank", "3"]);
    assert_eq!(code, 1);
}

#[test]
fn output_is_deterministic_and_round_trips() {
    let a = wkring(&["ctable", "--type", "A2"]);
    let b = wkring(&["ctable", "--type", "A2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let doc: Value = serde_json::from_slice(&a.stdout).unwrap();
    let typed: CTableDoc = serde_json::from_value(doc.clone()).unwrap();
    assert_eq!(serde_json::to_value(&typed).unwrap(), doc);
    assert_eq!(typed.basis.len(), 6);
    assert_eq!(typed.products.len(), 36);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("steinberg.json");
    let out = wkring(&["steinberg", "--type", "B2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(&path).unwrap();
    let st: SteinbergDoc = serde_json::from_str(&text).unwrap();
    assert_eq!(st.basis.len(), 8);
    assert_eq!(wkring(&["steinberg", "--type", "B2"]).stdout, text.as_bytes());
}

#[test]
fn weyl_and_csets_a2() {
    let (_, w) = run_json(&["weyl", "--type", "A2"]);
    assert_eq!(w["order"], 6);
    assert_eq!(w["elements"][5], json!({ "w": "s1.s2.s1", "length": 3, "descents": [1, 2] }));
    let (_, c) = run_json(&["csets", "--type", "A2"]);
    assert_eq!(c["csets"][0], json!({ "I": [], "elements": ["1"] }));
    assert_eq!(c["csets"][3]["I"], json!([1, 2]));
    assert_eq!(c["csets"][3]["elements"], json!(["s1.s2.s1"]));
    let (_, r) = run_json(&["roots", "--type", "B2"]);
    assert_eq!(r["positive_roots"].as_array().unwrap().len(), 4);
}

#[test]
fn toric_check_on_a_subdivision() {
    let dir = tempfile::tempdir().unwrap();
    let fan = dir.path().join("fan.json");
    fs::write(&fan, SPLIT_B2).unwrap();
    let good = dir.path().join("good.json");
    // e^{χ} against 1 across the wall with χ = α1 − α2, i.e. ω-coordinates (3, −4)
    fs::write(
        &good,
        r#"{"3": {"terms": [{"exp": [0,0], "coef": "1"}]}, "4": {"terms": [{"exp": [3,-4], "coef": "1"}]}}"#,
    )
    .unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"3": {"terms": [{"exp": [0,0], "coef": "1"}]}, "4": {"terms": [{"exp": [1,0], "coef": "1"}]}}"#)
        .unwrap();
    let fan = fan.to_str().unwrap();
    let (code, doc) = run_json(&["toric-check", "--type", "B2", "--fan", fan, "--family", good.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(doc["maximal_cones"], json!([3, 4]));
    assert_eq!(doc["fixed_points"], 128);
    assert_eq!(doc["localization"], true);
    let (_, doc) = run_json(&["toric-check", "--type", "B2", "--fan", fan, "--family", bad.to_str().unwrap()]);
    assert_eq!(doc["localization"], false);

    let (code, doc) = run_json(&["verify", "--type", "B2", "--suite", "toric-decomp", "--fan", fan]);
    assert_eq!(code, 0, "{doc}");

    let holey = dir.path().join("holey.json");
    fs::write(&holey, r#"{"rays": [[1,0],[1,1],[0,1]], "cones": [[0],[2],[0,1],[1,2]]}"#).unwrap();
    let (code, doc) = run_json(&["toric-check", "--type", "B2", "--fan", holey.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(doc["error"]["kind"], "NotFaceClosed");
}

#[test]
fn timeout_exits_3_with_progress() {
    let (code, doc) = run_json(&["steinberg", "--type", "F4", "--timeout", "0.2"]);
    assert_eq!(code, 3);
    assert_eq!(doc["error"]["kind"], "Timeout");
    assert!(doc["progress"]["stage"].is_string());
}
