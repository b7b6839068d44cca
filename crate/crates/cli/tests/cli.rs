use std::process::Command;

use serde_json::Value;

fn wander(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_wander")).args(args).output().expect("binary runs");
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).expect("utf-8"))
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let (code, out) = wander(&all);
    (code, serde_json::from_str(&out).expect("valid json"))
}

#[test]
fn classify_intro_example() {
    let (code, v) = json(&["classify", "--map", "example:intro"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["result"]["reduced_map"], "z^2");
    assert_eq!(v["result"]["classification"], "nontrivial(2)");
    assert_eq!(v["result"]["bad_classes"], serde_json::json!(["-1"]));
    let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys, ["command", "input", "result", "status", "warnings"]);
}

#[test]
fn exit_codes() {
    assert_eq!(json(&["classify", "--map", "z/(z-z)"]).0, 1);
    assert_eq!(json(&["classify", "--map", "z^2 +"]).1["result"]["error"], "syntax_error");
    assert_eq!(json(&["example", "--name", "ex9.9"]).1["result"]["error"], "unknown_example");
    assert_eq!(json(&["wander", "--map", "z^2", "--field", "fp:5"]).0, 2);
    assert_eq!(json(&["julia", "--map", "z^2", "--depth", "1"]).0, 2);
    assert_eq!(json(&["wander", "--map", "z^2", "--count", "2", "--depth", "3", "--require-julia"]).0, 2);
}

#[test]
fn orbit_and_push() {
    let (code, v) = json(&["orbit", "--map", "example:ex6.1", "--class", "-3", "--depth", "6", "--horizon", "64"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"]["hit_bad"], 3);
    assert_eq!(v["result"]["pushed"]["class"], "1");
    assert_eq!(v["result"]["pushed"]["last_bad_hit"], 3);
}

#[test]
fn disks_and_newton() {
    let (_, v) = json(&["newton", "--poly", "z^2+T*z+T^3"]);
    assert_eq!(v["result"]["segments"][0]["slope"], -2);
    assert_eq!(v["result"]["segments"][1]["slope"], -1);
    let (code, v) = json(&["disk-image", "--map", "z^2", "--center", "1", "--radius-val", "1", "--kind", "closed"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["center"], "1");
    assert_eq!(v["result"]["radius_valuation"], 1);
    let (code, v) = json(&["injectivity", "--map", "z^2", "--center", "1", "--radius-val", "1"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["verdict"], "injective");
}

#[test]
fn example_list_and_conjugate() {
    let (_, v) = json(&["example", "--list"]);
    assert!(v["result"]["examples"].as_array().unwrap().len() >= 11);
    let (_, v) = json(&["example", "--name", "ex6.2"]);
    assert_eq!(v["warnings"].as_array().unwrap().len(), 1);
    let (code, v) = json(&["conjugate", "--map", "T*z^2+z+1", "--mobius", "T,0,0,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["conjugated"]["map"], "z^2 + z + T");
}

#[test]
fn text_output_and_determinism() {
    let args = ["wander", "--map", "example:cyclotomic:2", "--count", "3", "--depth", "5"];
    let (code, a) = wander(&args);
    assert_eq!(code, 0);
    assert!(a.starts_with("command: wander\nstatus: ok\n"));
    assert_eq!(a, wander(&args).1);
    let (_, v) = json(&args);
    for c in v["result"]["certificates"].as_array().unwrap() {
        assert_eq!(c["component_types"].as_array().unwrap().len(), 4);
    }
}
