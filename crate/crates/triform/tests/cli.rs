//! End-to-end tests of the `triform` binary: exit codes, JSON contract,
//! seed resolution, float snapping, and byte-level determinism.

use serde_json::Value;
use std::process::{Command, Output};

fn triform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_triform"))
        .args(args)
        .env_remove("TRIFORM_SEED")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {:?}", out.stdout))
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn classify_reports_zero_set_membership() {
    let out = triform(&["classify", "--n", "4", "--alpha", "-3,-3,5"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["command"], "classify");
    assert_eq!(v["config"]["n"], 4);
    assert_eq!(v["config"]["alpha"][0], "-3");
    assert_eq!(v["result"]["in_zero_set"], true);
    assert_eq!(v["result"]["pole"]["is_pole"], true);
}

#[test]
fn classify_accepts_the_spectral_chart() {
    let out = triform(&["classify", "--n", "4", "--lambda", "1/2,1/3,1/5"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["config"]["lambda"][0], "1/2");
    assert_eq!(v["result"]["pole"]["is_pole"], false);
    assert_eq!(v["result"]["in_zero_set"], false);
}

#[test]
fn small_dimension_is_a_domain_error() {
    let out = triform(&["classify", "--n", "3", "--alpha", "0,0,0"]);
    assert_eq!(code(&out), 3);
    let v = json_of(&out);
    assert_eq!(v["error"]["kind"], "dimension");
    assert!(!out.stderr.is_empty(), "diagnostic goes to stderr");
}

#[test]
fn malformed_values_are_usage_errors() {
    let out = triform(&["eval", "--n", "4", "--alpha", "x,y,z", "--a", "0,0,0"]);
    assert_eq!(code(&out), 2);
    assert_eq!(json_of(&out)["error"]["kind"], "usage");

    let out = triform(&["classify", "--n", "4", "--alpha", "1,2"]);
    assert_eq!(code(&out), 2);

    let out = triform(&["verify", "--suite", "nonsense"]);
    assert_eq!(code(&out), 2);
    assert_eq!(json_of(&out)["error"]["kind"], "usage");
}

#[test]
fn missing_arguments_are_usage_errors() {
    let out = triform(&["eval", "--n", "4"]);
    assert_eq!(code(&out), 2);
    assert_eq!(json_of(&out)["error"]["kind"], "usage");
}

#[test]
fn frozen_normalization_constant() {
    let out = triform(&["brint", "--n", "4", "--alpha", "0,0,0"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    let re = v["result"]["value"]["re"].as_f64().unwrap();
    assert!((re - 1.327743785422975).abs() < 1e-12, "got {re}");
    assert_eq!(v["result"]["value"]["im"].as_f64().unwrap(), 0.0);
}

#[test]
fn frozen_first_order_evaluation() {
    let out = triform(&["eval", "--n", "4", "--alpha", "0,0,0", "--a", "1,0,0"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    let re = v["result"]["value"]["re"].as_f64().unwrap();
    assert!((re - 1.907565482749495).abs() < 1e-12, "got {re}");
    assert_eq!(v["result"]["exact_zero"], false);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["mc", "--n", "4", "--alpha", "-1,-1,-1", "--samples", "20000", "--seed", "7"];
    let first = triform(&args);
    let second = triform(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());
}

#[test]
fn seed_env_var_matches_explicit_flag() {
    let flagged = triform(&[
        "mc", "--n", "4", "--alpha", "-1,-1,-1", "--samples", "10000", "--seed", "99",
    ]);
    let env = Command::new(env!("CARGO_BIN_EXE_triform"))
        .args(["mc", "--n", "4", "--alpha", "-1,-1,-1", "--samples", "10000"])
        .env("TRIFORM_SEED", "99")
        .output()
        .expect("binary runs");
    assert_eq!(code(&flagged), 0);
    assert_eq!(flagged.stdout, env.stdout);
    assert_eq!(json_of(&flagged)["config"]["seed"], 99);
}

#[test]
fn malformed_seed_env_is_a_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_triform"))
        .args(["mc", "--n", "4", "--alpha", "0,0,0", "--samples", "1000"])
        .env("TRIFORM_SEED", "not-a-seed")
        .output()
        .expect("binary runs");
    assert_eq!(code(&out), 2);
    assert_eq!(json_of(&out)["error"]["kind"], "usage");
}

#[test]
fn float_mode_records_snapped_rationals() {
    let out = triform(&[
        "eval", "--float", "--n", "4", "--alpha", "-1.5,0.5,0.25", "--a", "0,0,0",
    ]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["config"]["float"], true);
    assert_eq!(v["config"]["alpha"][0], "-3/2");
    assert_eq!(v["config"]["alpha"][1], "1/2");
    assert_eq!(v["config"]["alpha"][2], "1/4");
}

#[test]
fn float_mode_rejects_unsnappable_input() {
    let out = triform(&["brint", "--float", "--n", "4", "--alpha", "inf,0,0"]);
    assert_eq!(code(&out), 2);
    assert_eq!(json_of(&out)["error"]["kind"], "usage");
}

#[test]
fn witness_reports_absence_on_the_zero_set() {
    let out = triform(&["witness", "--n", "4", "--alpha", "-3,-3,5"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["result"]["found"], false);
    assert_eq!(v["result"]["in_zero_set"], true);
}

#[test]
fn witness_finds_a_nonvanishing_index_off_the_zero_set() {
    let out = triform(&["witness", "--n", "4", "--alpha", "-11,1,1"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["result"]["found"], true);
    assert_eq!(v["result"]["order"], 3);
}

#[test]
fn pole_of_the_unnormalized_form_is_a_domain_error() {
    let out = triform(&["brint", "--n", "4", "--alpha", "-3,0,0"]);
    assert_eq!(code(&out), 3);
    assert_eq!(json_of(&out)["error"]["kind"], "pole");
}

#[test]
fn divergent_kernel_is_refused() {
    let out = triform(&["mc", "--n", "4", "--alpha", "-7/2,0,0", "--samples", "1000"]);
    assert_eq!(code(&out), 3);
    assert_eq!(json_of(&out)["error"]["kind"], "divergence");
}

#[test]
fn verify_suite_reports_every_property() {
    let out = triform(&["verify", "--suite", "specfun", "--seed", "0"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["report"]["passed"], true);
    assert_eq!(v["config"]["seed"], 0);
    let props = v["report"]["properties"].as_array().unwrap();
    assert!(props.len() >= 4);
    assert!(props.iter().all(|p| p["passed"] == true));
}

#[test]
fn bidiff_emits_the_exact_basis() {
    let out = triform(&["bidiff", "--n", "4", "--k", "1", "--lambda1", "0", "--lambda2", "0"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["result"]["nullity"], 1);
    assert_eq!(v["result"]["basis"][0][0], "1");
    assert_eq!(v["result"]["basis"][0][1], "-3/4");
    assert_eq!(v["result"]["basis"][0][2], "-3/4");
    assert_eq!(v["result"]["in_plane_zero_set"], true);
}

#[test]
fn text_output_renders_flat_lines() {
    let out = triform(&["brint", "--output", "text", "--n", "4", "--alpha", "0,0,0"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("command = \"brint\""), "{text}");
    assert!(text.contains("result.value.re = 1.327743785422975"), "{text}");
    assert!(serde_json::from_str::<Value>(&text).is_err(), "text mode is not JSON");
}

#[test]
fn help_and_version_exit_cleanly() {
    let out = triform(&["--help"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("classify"));
    let out = triform(&["--version"]);
    assert_eq!(code(&out), 0);
}
