use std::process::{Command, Output};

use serde_json::Value;

fn conicq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conicq")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = conicq(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn table1_dihedral_row() {
    let v = json(&["quotient", "table1", "--kind", "D", "--param", "3", "--a", "1", "--c", "1"]);
    assert_eq!((v["n"].as_u64(), v["m"].as_u64()), (Some(8), Some(2)));
    assert_eq!(v["group"], "D6");
}

#[test]
fn contract_swapped_chain() {
    let v = json(&["chain", "contract", "--chain", "-3,-1,-3,-1,-3;swap"]);
    assert_eq!(v["fate"], "singular");
    assert_eq!(v["trace"].as_array().unwrap().last().unwrap(), &serde_json::json!([-1, -1]));
}

#[test]
fn a5_orbit_lengths() {
    let v = json(&["group", "orbits", "--kind", "A5"]);
    assert_eq!(v["lengths"], serde_json::json!([12, 20, 30]));
}

#[test]
fn validation_errors_exit_2() {
    for args in [
        &["quotient", "table1", "--kind", "D", "--param", "4", "--b", "3"][..],
        &["group", "info", "--kind", "Q8"],
        &["chain", "contract", "--chain", "-3,-1,-2;swap"],
        &["chain", "expand", "--k", "6", "--a", "4"],
        &["example", "build", "--u", "4", "--mus", "1,2"],
        &["quotient", "count", "--input", "/nonexistent.json"],
        &["reproduce", "all", "--only", "12"],
    ] {
        let out = conicq(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn schema_errors_name_the_field() {
    let dir = std::env::temp_dir().join(format!("conicq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("bad.json");
    std::fs::write(&p, r#"{"group":"C2","orbits":[{"length":2,"stabilizer_order":1,"fibre_kind":"singular","swap":"sideways"}],"has_k_point":true}"#).unwrap();
    let out = conicq(&["quotient", "count", "--input", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("orbits[0].swap"));
}

#[test]
fn built_model_round_trips_through_count_and_verify() {
    let dir = std::env::temp_dir().join(format!("conicq-rt-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("model.json");
    let ps = p.to_str().unwrap();
    let out = conicq(&["example", "build", "--u", "2", "--mus", "1,2,3,4", "--output", ps]);
    assert!(out.status.success());
    let count = json(&["quotient", "count", "--input", ps]);
    assert_eq!((count["n"].as_u64(), count["m"].as_u64()), (Some(8), Some(4)));
    assert_eq!(count["rationality"], "not-rational");
    let verify = json(&["example", "verify", "--input", ps]);
    assert_eq!(verify["x_rationality"], "rational");
    assert_eq!(verify["failures"], serde_json::json!([]));
}

#[test]
fn output_is_deterministic_across_jobs() {
    let a = conicq(&["compare", "family", "--count", "3", "--seed", "7", "--jobs", "1"]);
    let b = conicq(&["compare", "family", "--count", "3", "--seed", "7", "--jobs", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let s1 = conicq(&["quotient", "scan-theorem", "--k-max", "4", "--n-max", "8"]);
    let s2 = conicq(&["quotient", "scan-theorem", "--k-max", "4", "--n-max", "8", "--jobs", "4"]);
    assert_eq!(s1.stdout, s2.stdout);
}

#[test]
fn scaled_tuples_are_equivalent() {
    let v = json(&["compare", "pair", "--mus-a", "1,2,3,4,5,6,7,8", "--mus-b", "2,4,6,8,10,12,14,16"]);
    assert_eq!(v["result"]["verdict"], "equivalent");
    let v = json(&["compare", "pair", "--mus-a", "1,2,3", "--mus-b", "1,2,5"]);
    assert_eq!(v["result"]["verdict"], "no-conclusion");
}

#[test]
fn stabilized_fibre_stays_singular() {
    let v = json(&["example", "stabilized", "--kind", "D", "--param", "3"]);
    assert_eq!(v["stabilized_fate"], "singular");
    assert_eq!(v["h_order"], 3);
}

#[test]
fn definability_agrees_over_listed_fields() {
    for f in ["Q", "Qi", "Qisqrt2", "Qsqrt5", "Qzeta5", "Qzeta12"] {
        for kind in ["A4", "S4", "C5", "D10"] {
            let v = json(&["group", "definability", "--kind", kind, "--field", f]);
            assert_eq!(v["disagreements"], 0, "{kind} over {f}");
        }
    }
}

#[test]
fn reproduce_single_criterion() {
    let out = conicq(&["reproduce", "all", "--only", "3"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("PASS criterion 3"));
}
