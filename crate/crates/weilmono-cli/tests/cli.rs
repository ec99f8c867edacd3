//! Binary-level tests: exit codes, report shapes, determinism, and the
//! ceiling environment variable.

use std::process::{Command, Output};

use weilmono_cli::suite::{self, GridConfig, Status};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weilmono"))
        .args(args)
        .env_remove("WEILMONO_CEILING")
        .output()
        .expect("spawn weilmono")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn tau_trivial_certificate_exits_zero() {
    let out = run(&["vtest", "--variant", "tau-trivial", "--q", "2", "--n", "3", "--m", "1",
        "--modulus", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["report"]["verdict"], "HOLDS");
    assert_eq!(v["params"]["modulus"], 7);
}

#[test]
fn w1_refutation_exits_two_with_witness() {
    let out = run(&["vtest", "--variant", "W1", "--q", "2", "--n", "4", "--s", "5", "--t",
        "1/7", "--modulus", "105"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["report"]["verdict"], "FAILS");
    let w = &v["report"]["counterexample"];
    assert_eq!(w["N"], 1);
    assert!(w["x"].as_str().unwrap().contains('/'));
}

#[test]
fn degenerate_shape_fails_honestly() {
    // no sheaf family exists at (2,4,2), but the inequality itself is still a
    // well-posed computation and genuinely fails
    let out = run(&["vtest", "--variant", "tau-trivial", "--q", "2", "--n", "4", "--m", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["report"]["counterexample"]["x"], "1/3");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["vtest", "--variant", "nonsense", "--q", "2", "--n", "3"]).status.code(),
        Some(1));
    assert_eq!(run(&["spectrum", "--q", "2"]).status.code(), Some(1));
    assert_eq!(run(&["family", "--q", "3", "--n", "3", "--m", "1", "--b", "1", "--c", "3",
        "--j", "1", "--kind", "Hj", "--phi", "x/y"]).status.code(), Some(1));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
}

#[test]
fn help_exits_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["vtest", "--help"]).status.code(), Some(0));
}

#[test]
fn family_example_shape() {
    let out = run(&["family", "--q", "3", "--n", "3", "--m", "1", "--b", "1", "--c", "3",
        "--j", "1", "--kind", "Hj"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let up = v["report"]["shape"]["upstairs"]["exps"].as_array().unwrap();
    let dn = v["report"]["shape"]["downstairs"]["exps"].as_array().unwrap();
    assert_eq!((up.len(), dn.len()), (13, 5));
    assert_eq!(v["report"]["shape"]["D"], 13);
    assert_eq!(v["report"]["shape"]["W"], 8);
    // QmodZ values serialize as "num/den" strings
    assert!(up.iter().all(|x| x.as_str().unwrap().contains('/')));
}

#[test]
fn json_is_byte_identical_across_runs() {
    let args = ["family", "--q", "3", "--n", "3", "--m", "1", "--b", "1", "--c", "3", "--j",
        "1", "--kind", "Hj"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["audit", "--q", "2", "--n", "3", "--m", "1", "--b", "1", "--c", "2",
        "--fields", "2,2^3,2^6"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["acceptance", "--qs", "2"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn trace_csv_has_fixed_columns() {
    let out = run(&["trace", "--q", "2", "--n", "3", "--m", "1", "--b", "1", "--c", "2",
        "--all-j", "--field", "2^3", "--sweep", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("u_index,j,value"));
    assert_eq!(lines.count(), 7);
}

#[test]
fn invalid_family_rejected_before_dispatch() {
    let out = run(&["trace", "--q", "2", "--n", "4", "--m", "2", "--b", "1", "--c", "1",
        "--j", "0", "--field", "2^2", "--u", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn ceiling_env_var_limits_field_size() {
    let args = ["trace", "--q", "2", "--n", "3", "--m", "1", "--b", "1", "--c", "2", "--j",
        "0", "--field", "2^6", "--u", "1"];
    let denied = Command::new(env!("CARGO_BIN_EXE_weilmono"))
        .args(args)
        .env("WEILMONO_CEILING", "16")
        .output()
        .unwrap();
    assert_eq!(denied.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&denied.stderr).contains("ceiling"));
    // an explicit flag overrides the environment
    let allowed = Command::new(env!("CARGO_BIN_EXE_weilmono"))
        .args(args)
        .arg("--ceiling")
        .arg("64")
        .env("WEILMONO_CEILING", "16")
        .output()
        .unwrap();
    assert_eq!(allowed.status.code(), Some(0));
}

#[test]
fn audit_passes_on_reference_family() {
    let out = run(&["audit", "--q", "2", "--n", "3", "--m", "1", "--b", "1", "--c", "2",
        "--fields", "2,2^3,2^6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["report"]["verdict"], "PASS");
    assert_eq!(v["report"]["e_passing"], serde_json::json!([0]));
}

#[test]
fn restricted_suite_passes_as_subset() {
    let out = run(&["acceptance", "--qs", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["all_pass"], true);
    let criteria = v["criteria"].as_array().unwrap();
    assert_eq!(criteria.len(), 10);
    assert!(criteria.iter().all(|c| c["status"] == "PASS" || c["status"] == "N/A"));
}

#[test]
fn corrupted_family_marks_not_applicable() {
    // bC - cB = 2 fails validation; the criteria over the family grid must
    // report N/A, not FAIL
    let grid = GridConfig { qs: vec![3], families: vec![(3, 3, 1, 1, 2)], ..Default::default() };
    let laws = suite::trace_function_laws(&grid);
    assert_eq!(laws.status, Status::NotApplicable, "{}", laws.detail);
    assert!(laws.detail.contains("invalid"));
    let audits = suite::monodromy_audits(&grid);
    assert_eq!(audits.status, Status::NotApplicable, "{}", audits.detail);
}

#[test]
fn empty_grid_is_all_not_applicable() {
    let grid = GridConfig { qs: vec![], families: vec![], ..Default::default() };
    let summary = suite::acceptance_suite(&grid);
    assert!(summary.all_pass);
    assert!(summary.criteria.iter().all(|c| c.status == Status::NotApplicable));
}
