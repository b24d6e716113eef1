use std::process::{Command, Output};

use serde_json::Value;

fn jantzen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jantzen")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = jantzen(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn sl2_layers_report() {
    let v = json(&["layers", "--type", "A1", "--weight", "1", "--json", "--no-cache"]);
    assert_eq!(v["loewy_length"], 2);
    let layers = v["layers"].as_array().unwrap();
    assert_eq!(layers.len(), 2);
    assert_eq!(layers[0]["simples"][0]["z_word"], "1");
    assert_eq!(layers[1]["simples"][0]["z_word"], "e");
    assert_eq!(v["sum_formula"], "pass");
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys.len(), 9);
}

#[test]
fn json_field_order_is_stable() {
    let out = jantzen(&["layers", "--type", "A2", "--weight", "0,1", "--json", "--no-cache"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let order = ["\"type\"", "\"weight\"", "\"mu\"", "\"w_word\"", "\"J\"", "\"loewy_length\"", "\"layers\"", "\"sum_formula\"", "\"details\""];
    let pos: Vec<usize> = order.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|p| p[0] < p[1]));
}

#[test]
fn a2_suite_sumcheck_passes() {
    let out = jantzen(&["sumcheck", "--type", "A2", "--suite", "--no-cache"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn nonintegral_block_is_trivial() {
    let v = json(&["block", "--type", "A2", "--weight", "-1/3,-1/3", "--json", "--no-cache"]);
    assert_eq!(v["order"], 1);
    assert_eq!(v["integral_simples"].as_array().unwrap().len(), 0);
    assert_eq!(v["reps"], serde_json::json!(["e"]));
}

#[test]
fn kl_polynomial_lookup() {
    let v = json(&["kl", "--type", "A3", "--x", "2", "--w", "2 1 3 2", "--json", "--no-cache"]);
    assert_eq!(v["coeffs"], serde_json::json!([1, 1]));
    let v = json(&["kl", "--type", "B2", "--block-of", "1/2,1", "--x", "e", "--w", "1 2", "--json", "--no-cache"]);
    assert_eq!(v["coxeter_matrix"], serde_json::json!([[1, 2], [2, 1]]));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["parabolic", "--type", "B2", "--I", "1", "--weight", "1,1", "--json", "--no-cache"];
    let a = jantzen(&args);
    let b = jantzen(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn warm_cache_matches_no_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = |extra: &[&'static str]| {
        let mut v = vec!["conjecture", "--type", "B3", "--weight", "1,1,1", "--json"];
        v.extend_from_slice(extra);
        v.into_iter().map(String::from).collect::<Vec<_>>()
    };
    let run = |a: Vec<String>| jantzen(&a.iter().map(String::as_str).collect::<Vec<_>>());
    let mut cold_args = args(&["--cache"]);
    cold_args.push(cache.to_string());
    let cold = run(cold_args.clone());
    assert!(std::fs::read_dir(dir.path()).unwrap().any(|e| e.unwrap().file_name().to_string_lossy().starts_with("kl-")));
    let warm = run(cold_args);
    let none = run(args(&["--no-cache"]));
    assert!(cold.status.success());
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(warm.stdout, none.stdout);
}

#[test]
fn oracle_agrees_for_sl2() {
    let v = json(&["oracle", "--type", "A1", "--weight", "1", "--depth", "8", "--json", "--no-cache"]);
    assert_eq!(v["pass"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 9);
}

#[test]
fn input_errors_exit_two_with_one_line() {
    for args in [
        &["layers", "--type", "A2", "--weight", "1,x"][..],
        &["layers", "--type", "Q7", "--weight", "1"],
        &["layers", "--type", "A2", "--weight", "1"],
        &["oracle", "--type", "A2", "--weight", "1,1", "--depth", "9"],
        &["oracle", "--type", "A3", "--weight", "1,1,1", "--depth", "1"],
        &["kl", "--type", "A2", "--x", "1 2", "--w", "1"],
        &["parabolic", "--type", "A2", "--I", "3", "--weight", "1,1"],
    ] {
        let mut full = args.to_vec();
        full.push("--no-cache");
        let out = jantzen(&full);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert_eq!(err.trim_end().lines().count(), 1, "{err}");
    }
    assert_eq!(jantzen(&["sumcheck", "--type", "A2"]).status.code(), Some(2));
}
