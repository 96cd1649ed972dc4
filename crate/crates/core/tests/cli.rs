use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotgauss")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("one JSON object")
}

#[test]
fn compute_trefoil() {
    let out = run(&["compute", "--code", "O1+U2+O3+U1+O2+U3+"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["schema_version"], "1");
    let p = &r["payload"];
    assert_eq!((p["v2"].as_i64(), p["v3"].as_i64(), p["lk"].as_i64(), p["g"].as_i64()), (Some(1), Some(4), Some(3), Some(1)));
    assert_eq!(p["status"], "Positive");
    let kink = report(&run(&["compute", "--code", "O1-U1-"]));
    assert_eq!(kink["payload"]["status"], "AlmostPositive");
    assert_eq!(kink["payload"]["v3"], 0);
}

#[test]
fn pd_input_and_oracle() {
    let out = run(&["oracle", "--code", "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]"]);
    assert_eq!(out.status.code(), Some(0));
    let p = &report(&out)["payload"];
    assert_eq!(p["det"], 3);
    assert_eq!(p["v2"], 1);
}

#[test]
fn payloads_are_deterministic() {
    let args = ["enumerate", "--crossings", "3..6", "--filter", "positive,reduced,connected", "--emit", "codes"];
    let a = report(&run(&args));
    let b = report(&run(&args));
    assert_eq!(a["payload"], b["payload"]);
    assert!(a["payload"]["total"].as_u64().unwrap() > 0);
}

#[test]
fn verify_exit_codes() {
    let out = run(&["verify", "--theorem", "lm2", "--max-crossings", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let p = &report(&out)["payload"];
    assert_eq!(p["counterexamples"], Value::Array(vec![]));
    assert_eq!(p["pass"], true);
    let out = run(&["verify", "--theorem", "th1", "--max-crossings", "12"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors() {
    let out = run(&["compute", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert_eq!(run(&["compute", "--code", "O1+U2+"]).status.code(), Some(2));
    assert_eq!(run(&["make", "--pretzel", "2,2,1"]).status.code(), Some(2));
}

#[test]
fn csv_emission() {
    let out = run(&["enumerate", "--crossings", "3", "--filter", "positive", "--emit", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("code,c,s,g,lk,v2,v3,writhe,status"));
    assert!(lines.any(|l| l == "O1+U2+O3+U1+O2+U3+,3,2,1,3,1,4,3,positive"));
}

#[test]
fn make_and_double() {
    let p = report(&run(&["make", "--twist", "5", "--variant", "apu"]));
    assert_eq!(p["payload"]["c"], 5);
    let d = report(&run(&["double", "--clasp", "+", "--fixture", "3_1"]));
    assert_eq!(d["payload"]["c"], 20);
    let code = d["payload"]["code"].as_str().unwrap().to_string();
    let v = report(&run(&["compute", "--code", &code, "--invariants", "v3"]));
    assert_eq!(v["payload"]["v3"], -8);
    let m = report(&run(&["move", "--code", "O1+U2+O3+U1+O2+U3+", "--op", "t2bar", "--at", "1"]));
    assert_eq!(m["payload"]["c"], 5);
}

#[test]
fn fixture_override() {
    let dir = std::env::temp_dir().join(format!("knotgauss-fixtures-{}", std::process::id()));
    std::fs::write(&dir, "kink\tO1+U1+\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_knotgauss"))
        .args(["compute", "--fixture", "kink"])
        .env("KNOTGAUSS_FIXTURES", &dir)
        .output()
        .unwrap();
    std::fs::remove_file(&dir).unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["payload"]["c"], 1);
    assert_eq!(run(&["compute", "--fixture", "kink"]).status.code(), Some(2));
}

#[test]
fn sampled_property() {
    let out = run(&["verify", "--property", "loop-signature", "--samples", "10", "--max-crossings", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["payload"]["counterexamples"], Value::Array(vec![]));
    // no positive diagrams below three crossings
    let out = run(&["verify", "--property", "loop-signature", "--samples", "10", "--max-crossings", "2"]);
    assert_eq!(out.status.code(), Some(2));
}
