use serde_json::Value;
use std::process::{Command, Output};

fn lrlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lrlab"))
        .args(args)
        .env("LRLAB_OFFLINE", "1")
        .env("LRLAB_CACHE_DIR", std::env::temp_dir().join("lrlab-cli-test-cache"))
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = lrlab(&full);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{args:?}: {e}\nstdout: {}\nstderr: {}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    });
    (v, out.status.code().unwrap())
}

#[test]
fn raising_primes_below_20() {
    let (v, code) = json(&["raising-primes", "--curve", "11a1", "--bound", "20"]);
    assert_eq!(code, 0);
    assert_eq!(v["primes"], serde_json::json!([7, 13, 17, 19]));
}

#[test]
fn explicit_coefficients_match_label() {
    let (a, _) = json(&["raising-primes", "--curve", "11a1", "--bound", "50"]);
    let (b, _) = json(&["raising-primes", "--curve", "0,-1,1,-10,-20", "--bound", "50"]);
    assert_eq!(a["primes"], b["primes"]);
}

#[test]
fn lift_check_reports_plus_minus_one() {
    let (v, code) = json(&["lift-check", "--q", "3", "--precision", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["solution_count"], 2);
    assert_eq!(v["all_in_mu2"], true);
}

#[test]
fn qform_certificate() {
    let (v, code) = json(&["qform", "--curve", "11a1", "--place", "7"]);
    assert_eq!(code, 0);
    let text = v.to_string();
    assert!(text.contains("NotNorm"), "{text}");
}

#[test]
fn analyze_exit_codes() {
    assert_eq!(lrlab(&["analyze", "--curve", "11a1"]).status.code(), Some(0));
    assert_eq!(lrlab(&["analyze", "--curve", "35a1"]).status.code(), Some(0));
    // trivial at 2: a standing hypothesis fails
    assert_eq!(lrlab(&["analyze", "--curve", "1,0,1,-5,-5"]).status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(lrlab(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(lrlab(&["raising-primes"]).status.code(), Some(2));
    assert_eq!(lrlab(&["local", "--curve", "11a1", "--place", "7", "--sign", "-1"]).status.code(), Some(2));
}

#[test]
fn walk_is_deterministic() {
    let args = ["selmer-sim", "--seed-dim", "1", "--target", "4", "--seed", "9"];
    let (a, code) = json(&args);
    let (b, _) = json(&args);
    assert_eq!(code, 0);
    assert_eq!(a, b);
    let path: Vec<i64> = a["dimension_path"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
    assert_eq!(path.first(), Some(&1));
    assert_eq!(path.last(), Some(&4));
    assert!(path.windows(2).all(|w| (w[0] - w[1]).abs() == 1), "{path:?}");
}

#[test]
fn table_format_is_default() {
    let out = lrlab(&["raising-primes", "--curve", "11a1", "--bound", "20"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("primes") && l.ends_with("7, 13, 17, 19")), "{text}");
}

#[test]
fn audit_runs_offline() {
    let (v, code) = json(&["audit"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
}
