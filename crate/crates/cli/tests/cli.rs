use std::process::{Command, Output};

use serde_json::Value;

fn nilab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilab"))
        .args(args)
        .env("NILAB_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_sl3_passes() {
    let out = nilab(&["verify", "--family", "A", "--rank", "2", "--samples", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["meta"]["command"], "verify");
    assert_eq!(doc["meta"]["samples"], 3);
    let checks = doc["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["pass"] == true));
    assert!(checks.iter().any(|c| c["name"] == "pumping"));
    assert_eq!(doc["results"]["shift_rank"], 3);
}

#[test]
fn index_minimal_sl3_orbit() {
    let out = nilab(&["index", "--family", "A", "--n", "3", "--partition", "2,1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["results"];
    assert_eq!(r["ind"], 0);
    assert_eq!(r["hypothesis_ok"], true);
    assert_eq!(r["s"], 1);
    assert_eq!(r["det"], "8*t1");
}

#[test]
fn index_defaults_to_the_principal_orbit() {
    let out = nilab(&["index", "--family", "C", "--rank", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["meta"]["partition"], "4");
    assert_eq!(doc["results"]["scope"], "core");
}

#[test]
fn hypothesis_violation_exits_2() {
    let out = nilab(&["index", "--family", "B", "--n", "7", "--partition", "3,3,1"]);
    assert_eq!(out.status.code(), Some(2));
    let r = &json(&out)["results"];
    assert_eq!(r["hypothesis_ok"], false);
    assert_eq!(r["ind"], Value::Null);
    assert_eq!(r["dims"]["delta"], 2);

    let out = nilab(&["convolution", "--family", "B", "--n", "7", "--partition", "3,3,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn write_failure_exits_1() {
    let dir = std::env::temp_dir();
    let out = nilab(&[
        "index",
        "--family",
        "A",
        "--rank",
        "1",
        "--output",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot write output"));
}

#[test]
fn usage_errors_exit_3() {
    let cases: &[&[&str]] = &[
        &["index", "--family", "A", "--n", "3", "--partition", "2,2"],
        &["index", "--family", "C", "--n", "4", "--partition", "3,1"],
        &["index", "--family", "A", "--n", "3", "--partition", "x"],
        &["index", "--family", "E", "--rank", "2"],
        &["index", "--family", "A"],
        &["index", "--family", "A", "--rank", "2", "--n", "3"],
        &["table", "--family", "A", "--n", "3", "--partition", "3"],
        &["verify", "--family", "A", "--rank", "2", "--samples", "0"],
        &["verify", "--family", "A", "--rank", "2", "--bogus"],
        &["frobnicate"],
    ];
    for args in cases {
        let out = nilab(args);
        assert_eq!(out.status.code(), Some(3), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    assert_eq!(nilab(&["--help"]).status.code(), Some(0));
}

#[test]
fn table_csv() {
    let out = nilab(&["table", "--family", "A", "--n", "4", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("n,partition,dim_delta,s,ind,hypothesis_ok,gamma_nonzero")
    );
    let rows: Vec<&str> = lines.collect();
    // partitions of 2, 3, 4 without the zero orbits
    assert_eq!(rows.len(), 1 + 2 + 4);
    assert_eq!(rows[0], "2,2,1,1,0,true,true");
    assert!(rows.iter().any(|r| r.starts_with("4,\"2,2\",")));
    assert!(rows.iter().all(|r| r.contains(",0,true,")));
}

#[test]
fn table_is_reproducible() {
    let args = ["table", "--family", "C", "--n", "6", "--seed", "7"];
    let a = nilab(&args);
    let b = nilab(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn output_file_matches_stdout() {
    let path = std::env::temp_dir().join(format!("nilab-decompose-{}.json", std::process::id()));
    let args = ["decompose", "--family", "B", "--rank", "2"];
    let direct = nilab(&args);
    let mut with_file = args.to_vec();
    with_file.extend(["--output", path.to_str().unwrap()]);
    let out = nilab(&with_file);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
    std::fs::remove_file(&path).unwrap();
    let r = &json(&direct)["results"];
    assert_eq!(r["dims"], serde_json::json!([2, 4, 4]));
}

#[test]
fn convolution_sl3() {
    let out = nilab(&["convolution", "--family", "A", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let pairs = json(&out)["results"]["pairs"].as_array().unwrap().clone();
    assert_eq!(pairs.len(), 4);
    let p12 = pairs.iter().find(|p| p["i"] == 1 && p["j"] == 2).unwrap();
    assert_eq!(p12["c_actual"], "4/3");
    assert_eq!(p12["c_printed"], "2/3");
    assert_eq!(p12["grad"], "18*E[1,3]");
}
