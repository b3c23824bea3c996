use std::process::{Command, Output};

use serde_json::Value;

fn goursat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_goursat")).args(args).output().unwrap()
}

fn code(args: &[&str]) -> i32 {
    goursat(args).status.code().unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_slice(&goursat(args).stdout).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["integrate", "--integrand", "t^2/(t^3-1)^(1/3)"]), 0);
    assert_eq!(code(&["diagnose", "--integrand", "t/(t^3-1)^(1/3)"]), 2);
    assert_eq!(code(&["diagnose", "--integrand", "1/(t^5-1)^(1/2)"]), 3);
    assert_eq!(code(&["diagnose", "--integrand", "1/(t^3-1)^(1/4)"]), 3);
    assert_eq!(code(&["diagnose", "--integrand", "1/(("]), 1);
    assert_eq!(code(&["frobnicate"]), 1);
}

#[test]
fn json_report_shape() {
    let v = json(&["integrate", "--integrand", "t^2/(t^3-1)^(1/3)", "--json"]);
    assert_eq!(v["status"], "elementary");
    assert_eq!(v["exponent"], "1/3");
    assert_eq!(v["antiderivative"], "(1/2)*(t^3-1)^(2/3)");
    assert_eq!(v["verified"], true);
    for k in ["S", "alpha", "beta", "c", "K"] {
        assert!(v["canonical"][k].is_string(), "{k}");
    }
    for k in ["H0", "H1", "H2", "phi0", "phi1", "phi2"] {
        assert!(v["projections"][k].is_string(), "{k}");
    }
    let reds = v["reductions"].as_array().unwrap();
    assert_eq!(reds[1]["name"], "J2");
    assert_eq!(reds[1]["integrand"], "u");

    let v = json(&["diagnose", "--integrand", "t/((t^2-1)*(t^2-4))^(1/2)", "--json"]);
    assert!(v["canonical"].is_null());
    for k in ["F0", "F1", "F2", "F3"] {
        assert!(v["projections"][k].is_string(), "{k}");
    }

    let v = json(&["diagnose", "--integrand", "t/(t^3-1)^(1/3)", "--json"]);
    assert_eq!(v["obstruction"]["certified"], true);
    assert_eq!(v["obstruction"]["phi"], "1");
}

#[test]
fn output_is_deterministic() {
    let args = ["integrate", "--integrand", "(1 + 5*t^2 - 7*t/(t^3+1))/(t^3-1)^(1/3)", "--json"];
    let a = goursat(&args).stdout;
    assert!(!a.is_empty());
    assert_eq!(a, goursat(&args).stdout);
}

#[test]
fn batch_reports_worst_code() {
    let path = std::env::temp_dir().join(format!("goursat-batch-{}.txt", std::process::id()));
    std::fs::write(&path, "t^2/(t^3-1)^(1/3)\n# comment\n\nt/(t^3-1)^(1/3)\n").unwrap();
    let out = goursat(&["diagnose", "--batch", path.to_str().unwrap(), "--json"]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(out.status.code(), Some(2));
    let lines: Vec<Value> = String::from_utf8(out.stdout).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["input"], "t^2/(t^3-1)^(1/3)");
    assert_eq!(lines[0]["status"], "elementary");
    assert_eq!(lines[1]["status"], "obstructed-certified-nonelementary");
}

#[test]
fn verify_command() {
    let good = ["verify", "--antiderivative", "(1/2)*(t^3-1)^(2/3)", "--integrand", "t^2/(t^3-1)^(1/3)", "--json"];
    assert_eq!(code(&good), 0);
    assert_eq!(json(&good)["verified"], true);
    let bad = ["verify", "--antiderivative", "t", "--integrand", "t^2/(t^3-1)^(1/3)", "--json"];
    assert_eq!(code(&bad), 2);
    let v = json(&bad);
    assert_eq!(v["verified"], false);
    assert!(v["discrepancy"].is_string());
}
