use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_congruent-theta")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = run(args);
    let v =
        serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (v, out.status.code().unwrap())
}

#[test]
fn cusps_json() {
    let (v, code) = json(&["cusps", "--level", "36", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], 12);
    assert_eq!(v["eis_dim"], 11);
    assert_eq!(v["cusps"].as_array().unwrap().len(), 12);
    assert_eq!(v["cusps"][11], serde_json::json!([1, 0]));
}

#[test]
fn unconstructible_basis_exits_2() {
    let out = run(&["basis", "--prime", "5", "--power", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("5^2"));
}

#[test]
fn basis_json_has_expansions_and_values() {
    let (v, code) = json(&["basis", "--prime", "2", "--power", "4", "--terms", "10", "--values", "--json"]);
    assert_eq!(code, 0);
    let elements = v["elements"].as_array().unwrap();
    assert_eq!(elements.len(), 5);
    assert!(elements.iter().all(|e| e.get("cusp_values").is_some() && e.get("expansion").is_some()));
}

#[test]
fn text_and_json_agree_on_counts() {
    let text = run(&[
        "repcount",
        "--gram",
        "2,0,0,0,0,2,0,0,0,0,2,0,0,0,0,2",
        "--residues",
        "1,1,1,1",
        "--moduli",
        "3,3,3,3",
        "--n",
        "103",
    ]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("r(103) = 28"));
    let (v, _) = json(&[
        "repcount",
        "--gram",
        "2,0,0,0,0,2,0,0,0,0,2,0,0,0,0,2",
        "--residues",
        "1,1,1,1",
        "--moduli",
        "3,3,3,3",
        "--n",
        "103",
        "--json",
    ]);
    assert_eq!(v["count"], 28);
}

#[test]
fn bad_gram_is_a_usage_error() {
    let out = run(&[
        "repcount",
        "--gram",
        "3,0,0,0,0,2,0,0,0,0,2,0,0,0,0,2",
        "--residues",
        "1,1,1,1",
        "--moduli",
        "3,3,3,3",
        "--n",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let short = run(&["repcount", "--gram", "2,0", "--residues", "1,1,1,1", "--moduli", "3,3,3,3", "--n", "1"]);
    assert_eq!(short.status.code(), Some(2));
}

#[test]
fn curve_count_direct_agrees() {
    let (v, code) = json(&["curve-count", "--curve", "0,0,0,0,1", "--p", "7", "--k", "3", "--direct", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["N_1"], 12);
    assert_eq!(v["N_k"], v["N_k_direct"]);
    let bad = run(&["curve-count", "--curve", "0,0,0,0,1", "--p", "3"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn decompose_theta_at_level_16() {
    let (v, code) = json(&["decompose", "--theta", "1,2", "--level", "16", "--terms", "200", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["residual_zero"], true);
    let nonzero: Vec<_> = v["coeffs"].as_array().unwrap().iter().filter(|c| c["coeff"][0] != 0).collect();
    assert_eq!(nonzero.len(), 1);
    assert_eq!(nonzero[0]["name"], "E16,5");
    assert_eq!(nonzero[0]["coeff"], serde_json::json!([16, 1]));
}

#[test]
fn decompose_reads_a_series_file() {
    let (series, _) = json(&["theta", "--residue", "0", "--modulus", "2", "--terms", "120", "--json"]);
    let path = std::env::temp_dir().join(format!("ct-target-{}.json", std::process::id()));
    std::fs::write(&path, series["series"].to_string()).unwrap();
    let (v, code) =
        json(&["decompose", "--target", path.to_str().unwrap(), "--level", "16", "--terms", "120", "--json"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 0);
    let coeff =
        |name: &str| v["coeffs"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap()["coeff"].clone();
    assert_eq!(coeff("E16,1"), serde_json::json!([1, 1]));
    assert_eq!(coeff("E16,5"), serde_json::json!([8, 1]));
}

#[test]
fn verify_exit_codes_follow_failures() {
    let (v, code) = json(&["verify", "--suite", "r13-general", "--json"]);
    assert_eq!((code, v["failed"].as_u64()), (0, Some(0)));
    assert_eq!(v["tolerance"], 0);
    let (v, code) = json(&["verify", "--suite", "linrel-36", "--json"]);
    assert_eq!(code, 1);
    assert!(v["failed"].as_u64().unwrap() > 0);
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn version_prints_manifest_hash() {
    let out = run(&["--version"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let hash = text.split_whitespace().last().unwrap();
    assert_eq!(hash.len(), 64);
    assert_eq!(hash, congruent_theta::verify::manifest_hash());
}
