use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_twistfree"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn twistfree");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn realizable_verdicts_and_exit_codes() {
    let out = run(&["realizable"], r#"{"rank":1,"theta":["x1^-1"],"phi":[1]}"#);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "not_realizable");
    assert_eq!(v["witness"], "x1");
    assert_eq!(v["kernel_basis"], serde_json::json!([[1]]));

    let out = run(&["realizable"], r#"{"rank":2,"theta":["x2","x1"],"phi":[0,0]}"#);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], "realizable");
}

#[test]
fn unknown_exits_two() {
    // The shortest witnesses have length 2, so a cap of 1 cannot settle the lattice obstruction.
    let input = r#"{"rank":2,"theta":["x2 x1^-1 x2^-1","x2^-1"],"phi":[1,0]}"#;
    let out = run(&["realizable", "--max-witness-length", "1"], input);
    let v = json(&out);
    assert_eq!(v["verdict"], "unknown", "{v}");
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["realizable"], input);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "not_realizable");
    assert_eq!(v["witness"], "x1 x2^-1");
}

#[test]
fn invalid_orientation_reports_generator() {
    let out = run(&["realizable"], r#"{"rank":2,"theta":["x2","x1"],"phi":[1,0]}"#);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["at"], "phi[0]");
    assert!(v["error"].as_str().unwrap().contains("x1"));
}

#[test]
fn malformed_input_is_enveloped() {
    for (args, input, at) in [
        (vec!["realizable"], "not json", "input"),
        (vec!["realizable"], r#"{"rank":1,"theta":["x2"],"phi":[0]}"#, "theta[0]"),
        (vec!["realizable"], r#"{"rank":2,"theta":["x1 x2","x2"],"phi":[0,0]}"#, "theta"),
        (vec!["canonical-form", "--matrix", "1 1; 0 1"], "", "matrix"),
        (vec!["covers", "RP2n"], "", "cover"),
        (vec!["covers", "S1xS2n", "--max-index", "60"], "", "max_index"),
    ] {
        let out = run(&args, input);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        let v = json(&out);
        assert_eq!(v["at"], at, "{args:?}: {v}");
        assert!(v["error"].is_string());
    }
}

#[test]
fn canonical_form_output() {
    let out = run(&["canonical-form"], "0 1 0; 1 0 0; 0 0 -1");
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!((v["k"].as_u64(), v["r"].as_u64(), v["s"].as_u64()), (Some(1), Some(0), Some(1)));
    assert_eq!(v["verified"], true);
}

#[test]
fn classify_vc_outputs() {
    let out = run(&["classify-vc"], r#"{"shape":"ZsemiZ2","phi_z":0,"phi_t":1}"#);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["orbit_space"], "RPsharpRP");

    let out = run(&["classify-vc"], r#"{"shape":"Z2","phi_t":0}"#);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["orbit_space"].is_null());
    assert!(v["reason"].is_string());

    let out = run(&["classify-vc"], r#"{"shape":"Q8"}"#);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn covers_rows_sorted() {
    let out = run(&["covers", "S1xS2n", "--max-index", "12"], "");
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rows = v["rows"].as_array().unwrap();
    let idx: Vec<u64> = rows.iter().map(|r| r["index"].as_u64().unwrap()).collect();
    assert!(idx.windows(2).all(|w| w[0] <= w[1]));
    assert!(rows.iter().any(|r| r["group"]["family"] == "Dihedral" && r["base"] == "RPsharpRP"));
    assert!(!rows
        .iter()
        .any(|r| r["base"] == "S1xRP2n" && r["group"]["family"] == "Cyclic" && r["group"]["k"].as_u64().unwrap() % 4 == 0));
}

#[test]
fn free_product_and_claim() {
    let out = run(&["free-product"], r#"[{"rank":1,"theta":["x1^-1"]},{"rank":2,"theta":["x2","x1"]}]"#);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rank = v["group"]["rank"].as_u64().unwrap();
    assert_eq!(rank, 1 + 2 + 1);
    assert_eq!(v["factors"].as_array().unwrap().len(), 2);

    let claim = format!(r#"{{"group":{},"claim":{{"fixed":[],"swaps":[[1,2]],"lambdas":[]}}}}"#, r#"{"rank":2,"theta":["x2","x1"]}"#);
    let out = run(&["verify-dyer-scott"], &claim);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["holds"], true);
}

#[test]
fn action_model_echoes_seed() {
    let input = r#"{"rank":1,"theta":["x1"],"phi":[1]}"#;
    let a = run(&["verify-action", "--samples", "64", "--seed", "99"], input);
    let b = run(&["verify-action", "--samples", "64", "--seed", "99"], input);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["seed"], 99);
    assert_eq!(v["passed"], true);
}

#[test]
fn pretty_rendering() {
    let out = run(&["--pretty", "covers", "RPsharpRP", "--max-index", "4"], "");
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Cyclic(2)"));
    assert!(serde_json::from_str::<Value>(&text).is_err());
}

#[test]
fn keys_are_sorted() {
    let out = run(&["realizable"], r#"{"rank":1,"theta":["x1^-1"],"phi":[1]}"#);
    let text = String::from_utf8(out.stdout).unwrap();
    let pos = |k: &str| text.find(&format!("\"{k}\"")).unwrap();
    assert!(pos("budget") < pos("kernel_basis") && pos("kernel_basis") < pos("verdict"));
}
