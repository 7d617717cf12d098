//! End-to-end smoke tests for the `normgraph` binary.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_normgraph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn payload(out: &Output) -> serde_json::Value {
    let v: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("stdout is a JSON result");
    assert_eq!(v["status"], "ok", "command failed: {v}");
    v["payload"].clone()
}

#[test]
fn field_descriptor_roundtrips() {
    let out = run(&["field", "--p", "3", "--k", "2"]);
    assert!(out.status.success());
    let p = payload(&out);
    assert_eq!(p["p"], 3);
    assert_eq!(p["n"], 2);
    assert_eq!(p["modulus"].as_array().unwrap().len(), 3);
}

#[test]
fn explicit_modulus_is_honoured() {
    let out = run(&[
        "field", "--p", "2", "--k", "12", "--modulus",
        "1,1,0,1,0,1,1,1,0,0,0,0,1",
    ]);
    assert!(out.status.success());
    let p = payload(&out);
    // the residue class of X is primitive for this modulus
    let prim: Vec<u64> = serde_json::from_value(p["primitive"].clone()).unwrap();
    let mut expected = vec![0u64; 12];
    expected[1] = 1;
    assert_eq!(prim, expected);
}

#[test]
fn diffset_list_and_verify() {
    let out = run(&["diffset", "list", "--q", "4"]);
    assert!(out.status.success());
    let p = payload(&out);
    assert_eq!(p["h1"].as_array().unwrap().len(), 5);
    assert_eq!(p["h2"].as_array().unwrap().len(), 5);

    let out = run(&["diffset", "verify", "--q", "4"]);
    assert!(out.status.success());
    let p = payload(&out);
    assert_eq!(p["kind"], "diff-set");
    assert_eq!(p["lambda"], 1);
}

#[test]
fn singer_equivalence_reports_ok() {
    let out = run(&["diffset", "singer-equivalence", "--q", "5"]);
    assert!(out.status.success());
    assert_eq!(payload(&out)["equivalent"], true);
}

#[test]
fn general_diffset_verify() {
    let out = run(&["diffset", "verify", "--q", "3", "--t", "4"]);
    assert!(out.status.success());
    let p = payload(&out);
    assert_eq!(p["lambda"], 4);
    assert_eq!(p["set"].as_array().unwrap().len(), 13);
}

#[test]
fn mixedrep_planar_factors_multiply_back() {
    let out = run(&["mixedrep", "--q", "5", "--A", "20"]);
    assert!(out.status.success());
    let p = payload(&out);
    assert!(p["h1_factor"]["power"].is_u64());
    assert!(p["h2_factor"]["power"].is_u64());
}

#[test]
fn mixedrep_rejects_identity() {
    let out = run(&["mixedrep", "--q", "5", "--A", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "fail");
}

#[test]
fn mixedrep_rejects_non_norm_one() {
    let out = run(&["mixedrep", "--q", "5", "--A", "17"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn normsys_solve_3eq_reference_solution_set() {
    let out = run(&["normsys", "solve-norm1", "--q", "5"]);
    assert!(out.status.success());
    assert_eq!(payload(&out)["count"], 12);
}

#[test]
fn normsys_find_six_and_verify_roundtrip() {
    let dir = std::env::temp_dir().join("normgraph-smoke-six");
    let path = dir.with_extension("json");
    let out = run(&[
        "normsys", "find-six", "--q", "5", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(payload(&out)["method"], "char2mod3");
    let out = run(&["verify", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(payload(&out)["verified"], true);
}

#[test]
fn normsys_eta_sum_is_minus_one() {
    let out = run(&["normsys", "eta-sum", "--q", "7"]);
    assert!(out.status.success());
    assert_eq!(payload(&out)["eta_sum"], -1);
}

#[test]
fn normsys_sigma_check_passes() {
    let out = run(&["normsys", "sigma-check", "--q", "8"]);
    assert!(out.status.success());
}

#[test]
fn ng_degree_law_and_search() {
    let out = run(&["ng", "degree-law", "--q", "3"]);
    assert!(out.status.success());
    assert_eq!(payload(&out)["degree"], 26);

    let out = run(&["ng", "k46-search", "6", "--q", "2"]);
    assert!(out.status.success());
    assert_eq!(payload(&out)["found"], false);
}

#[test]
fn ng_k46_build_and_verify() {
    let dir = std::env::temp_dir().join("normgraph-smoke-k46");
    let path = dir.with_extension("json");
    let out = run(&[
        "ng", "k46-build", "--q", "7", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(payload(&out)["kind"], "biclique");
    let out = run(&["verify", path.to_str().unwrap()]);
    assert!(out.status.success());
}

#[test]
fn ng_count_exact_small() {
    let out = run(&["ng", "count-k46", "--q", "2"]);
    assert!(out.status.success());
    assert_eq!(payload(&out)["exact"], 0);
}

#[test]
fn repro_f16_passes() {
    let out = run(&["repro", "f16"]);
    assert!(out.status.success());
    assert_eq!(payload(&out)["pass"], true);
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["diffset", "list"]); // missing --q
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn claim_failures_exit_1() {
    // q = 2 has no six-solution element in characteristic 2 without the
    // squaring trick, and the scan reports exhaustion
    let out = run(&["normsys", "find-six", "--q", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn budget_exhaustion_exits_3() {
    let out = run(&[
        "ng", "k46-search", "6", "--q", "5", "--budget-seconds", "0",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn reruns_are_byte_identical_modulo_timing() {
    let strip = |out: &Output| {
        let mut v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v.to_string()
    };
    let a = run(&["normsys", "find-six", "--q", "11"]);
    let b = run(&["normsys", "find-six", "--q", "11"]);
    assert_eq!(strip(&a), strip(&b));
}
