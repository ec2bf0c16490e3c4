use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

use odolat_cli::json::ReportFile;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn odolat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_odolat")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn classify(a: &str, b: &str, extra: &[&str]) -> (Value, ReportFile) {
    let (a, b) = (data(a), data(b));
    let mut args = vec!["classify", a.as_str(), b.as_str()];
    args.extend_from_slice(extra);
    let out = odolat(&args);
    let v = json(&out);
    let report: ReportFile = serde_json::from_value(v.clone()).expect("report schema");
    report.check().expect("implication chain");
    (v, report)
}

#[test]
fn classify_reflexive_all_yes() {
    let (_, r) = classify("a.json", "a.json", &[]);
    for v in [&r.conjugate, &r.isomorphic, &r.cont_orbit_equivalent, &r.orbit_equivalent] {
        assert_eq!(v.answer, "Yes");
    }
}

#[test]
fn classify_quartic_pair_conjugate() {
    let (v, r) = classify("ex6A.json", "ex6B.json", &[]);
    assert_eq!(r.conjugate.answer, "Yes");
    assert_eq!(r.conjugate.level, Some(r.depth));
    assert!(r.warnings.iter().any(|w| w == &format!("groups equal through depth {} for all relevant primes", r.depth)));
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys.len(), 10);
}

#[test]
fn classify_swapped_diagonal() {
    let (v, r) = classify("d35.json", "d53.json", &[]);
    assert_eq!(r.conjugate.answer, "No");
    assert_eq!(v["conjugate"]["witness"]["kind"], "truncation");
    assert_eq!(v["conjugate"]["witness"]["j"], 1);
    assert_eq!(r.isomorphic.answer, "Yes");
    assert_eq!(v["isomorphic"]["witness"]["rows"], serde_json::json!([["0", "1"], ["1", "0"]]));
    assert_eq!(r.orbit_equivalent.answer, "Yes");
}

#[test]
fn fast_path_only_leaves_searches_unknown() {
    let (v, r) = classify("d35.json", "d53.json", &["--fast-path-only"]);
    assert_eq!(r.isomorphic.answer, "Unknown");
    assert_eq!(v["isomorphic"]["witness"]["kind"], "exhausted");
    assert!(r.config.fast_path_only);
}

#[test]
fn flags_are_recorded() {
    let (_, r) = classify("d35.json", "d53.json", &["--depth", "5", "--search-bound", "1", "--time-budget", "500"]);
    assert_eq!(r.depth, 5);
    assert_eq!(r.config.depth, Some(5));
    assert_eq!(r.config.search_bound, 1);
    assert_eq!(r.config.time_budget_ms, 500);
}

#[test]
fn report_is_byte_identical_across_runs() {
    let (a, b) = (data("ex6A.json"), data("d35.json"));
    let one = odolat(&["classify", &a, &a]);
    let two = odolat(&["classify", &a, &a]);
    assert_eq!(one.stdout, two.stdout);
    let one = odolat(&["classify", &b, &data("d53.json")]);
    let two = odolat(&["classify", &b, &data("d53.json")]);
    assert_eq!(one.stdout, two.stdout);
}

#[test]
fn density_of_identity_is_no() {
    let v = json(&odolat(&["density", &data("i.json")]));
    assert_eq!(v["dense"], "No");
    let v = json(&odolat(&["density", &data("d35.json")]));
    assert_eq!(v["dense"], "Yes");
}

#[test]
fn factor_quartic_irreducible() {
    let v = json(&odolat(&["factor", &data("quartic.json")]));
    assert_eq!(v["irreducible"], true);
    assert_eq!(v["factors"].as_array().unwrap().len(), 1);
    assert_eq!(v["factors"][0]["coeffs"], serde_json::json!(["9", "0", "1", "0", "1"]));
}

#[test]
fn good_basis_output() {
    let v = json(&odolat(&["good-basis", &data("a.json"), "--i", "2"]));
    let mp = &v["MP"];
    assert_eq!(mp[0][1], "0");
    assert_eq!(mp[1][1], v["a"]);
}

#[test]
fn cocycle_half_on_two_z() {
    let v = json(&odolat(&["cocycle", &data("g2z.json"), "--h", "1/2", "--verify"]));
    assert_eq!(v, serde_json::json!({"identity": true, "tau": ["1/2"], "eform2": true}));
    let out = odolat(&["cocycle", &data("g2z.json"), "--h", "1/2", "--verify"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.find("identity").unwrap() < text.find("tau").unwrap());
}

#[test]
fn cocycle_table_output() {
    let v = json(&odolat(&["cocycle", &data("g2z.json"), "--h", "1/2"]));
    assert_eq!(v["index"], "2");
    assert_eq!(v["table"]["0"], serde_json::json!(["0"]));
    assert_eq!(v["table"]["1"], serde_json::json!(["1"]));
}

#[test]
fn cocycle_outside_dual_exits_3() {
    let out = odolat(&["cocycle", &data("g2z.json"), "--h", "1/3"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dual"));
}

#[test]
fn verify_swap_and_rational_witness() {
    let v = json(&odolat(&["verify", &data("swap.json"), &data("d35.json"), &data("d53.json")]));
    assert_eq!(v["answer"], "Yes");
}

#[test]
fn invalid_inputs_exit_2() {
    let out = odolat(&["classify", &data("ragged.json"), &data("a.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("rows[1]"));
    let out = odolat(&["density", &data("singular.json")]);
    assert_eq!(out.status.code(), Some(2));
    let out = odolat(&["density", &data("missing.json")]);
    assert_eq!(out.status.code(), Some(2));
    let out = odolat(&["classify", &data("a.json"), &data("g2z.json")]);
    assert_eq!(out.status.code(), Some(2));
    let out = odolat(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn big_numbers_are_strings() {
    let (v, _) = classify("ex6A.json", "ex6A.json", &[]);
    let rows = &v["conjugate"]["witness"]["rows"];
    assert!(rows[0][0].is_string());
}
