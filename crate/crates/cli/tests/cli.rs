use std::process::{Command, Output};

use serde_json::Value;

fn dqm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dqm")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn derive_e_five_times() {
    let out = dqm(&["derive", "--q", "5", "E", "5"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().next(), Some("E^6 + (1/(T^5-T)) h^2"));
}

#[test]
fn derive_zero_is_identity() {
    let out = dqm(&["derive", "h", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().next(), Some("h"));
}

#[test]
fn expand_h_leading_terms() {
    // -1 = 1 in characteristic 2
    let out = dqm(&["expand", "h", "40", "--q", "4"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("t + t^10 + "), "{}", stdout(&out));
    let out = dqm(&["expand", "h", "20", "--q", "5"]);
    assert_eq!(stdout(&out).trim(), "-t - t^17 + O(t^20)");
}

#[test]
fn basis_of_weight_zero() {
    let out = dqm(&["basis", "0", "0", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn ideal_checks_set_exit_status() {
    let out = dqm(&["ideal", "Pd", "--d", "T", "--n-max", "64"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).starts_with("PASS"));
    let out = dqm(&["ideal", "g", "--q", "4", "--n-max", "8"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("at n = 1"));
}

#[test]
fn errors_exit_with_two() {
    assert_eq!(dqm(&["derive", "E +", "1"]).status.code(), Some(2));
    assert_eq!(dqm(&["derive", "E", "1", "--q", "6"]).status.code(), Some(2));
    assert_eq!(dqm(&["ideal", "pd"]).status.code(), Some(2));
}

#[test]
fn field_from_parts_and_file() {
    let a = stdout(&dqm(&["derive", "--p", "3", "--e", "2", "E", "3"]));
    let b = stdout(&dqm(&["derive", "--q", "9", "E", "3"]));
    assert_eq!(a, b);
    let dir = std::env::temp_dir().join(format!("dqm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("field.txt");
    std::fs::write(&path, "p = 3\ne = 2\n").unwrap();
    let c = stdout(&dqm(&["derive", "--field", path.to_str().unwrap(), "E", "3"]));
    assert_eq!(a, c);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_output_round_trips() {
    let out = dqm(&["derive", "--q", "5", "E g", "3", "--json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let text = v["text"].as_str().unwrap().to_string();
    let back = stdout(&dqm(&["derive", "--q", "5", &text, "0", "--json"]));
    let w: Value = serde_json::from_str(&back).unwrap();
    assert_eq!(v["result"], w["result"]);
    assert_eq!(v["grading"], w["grading"]);
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "congruence", "--q", "5", "--json"];
    let a = stdout(&dqm(&args));
    assert_eq!(a, stdout(&dqm(&args)));
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["pass"], Value::Bool(true));
    assert!(!v["checks"].as_array().unwrap().is_empty());
}
