use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_so-center")).args(args).env_remove("SO_CENTER_THREADS").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn build_center_small_ranks() {
    let o = run(&["build-center", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["rank"], 2);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert_eq!(terms[0]["mono"], serde_json::json!([]));
    assert_eq!(terms[0]["coeff"], serde_json::json!([[2, "1", "1", "0", "1"]]));
    assert_eq!(terms[1]["mono"], serde_json::json!([[2, 1], [2, 1]]));

    let o = run(&["build-center", "--n", "0", "--format", "text"]);
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn element_json_round_trips() {
    let o = run(&["build-center", "--n", "4"]);
    let e: so_center::uea::Element = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(e, *so_center::center::build_c(4));
}

#[test]
fn specialised_parameter() {
    let o = run(&["build-center", "--n", "3", "--u", "1/2", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains('u'));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["build-center", "--n", "-1"],
        vec!["build-center"],
        vec!["verify", "central", "--n", "99"],
        vec!["verify", "gt-lemmas", "--n", "5", "--lambda", "1,2"],
        vec!["verify", "gt-lemmas", "--n", "5", "--lambda", "1,0", "--ell", "0"],
        vec!["build-center", "--n", "3", "--u", "x"],
        vec!["pfaffian", "--m", "0", "--check"],
        vec!["frobnicate"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_commands_pass() {
    let o = run(&["verify", "central", "--n", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["ok"], true);
    assert_eq!(v["residual_terms"], 0);
    assert!(v["witness"].is_null());

    let o = run(&["verify", "hc", "--n", "6", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(u^2 - H^2)(u^2 - T1^2)(u^2 - T2^2)"));

    let o = run(&["verify", "pfaffian", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn gt_lemmas_report() {
    let o = run(&["verify", "gt-lemmas", "--n", "5", "--lambda", "2,1", "--ell", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let reports = json(&o);
    let reports = reports.as_array().unwrap();
    for lemma in ["pipi", "no_x", "x2", "x1"] {
        let r = reports.iter().find(|r| r["lemma"] == lemma).unwrap();
        assert_eq!(r["pass"], true);
        assert_eq!(r["lambda"], serde_json::json!([2, 1]));
        assert_eq!(r["ell"], 1);
        assert!(r["max_residual"].as_f64().unwrap() < 1e-8);
    }
    // An impossible tolerance turns every inexact check into a failure.
    let o = run(&["verify", "gt-lemmas", "--n", "6", "--lambda", "2,1", "--ell", "-1", "--tolerance", "1e-300"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn pfaffian_command() {
    let o = run(&["pfaffian", "--m", "1", "--format", "text"]);
    assert_eq!(stdout(&o).trim(), "A[2,1]");
    let o = run(&["pfaffian", "--m", "2", "--check", "--hc", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("Iwasawa identity: pass"));
    assert!(s.contains("gamma(PF_4) = (-i)^2*H*T1"));
    let v = json(&run(&["pfaffian", "--m", "2", "--hc"]));
    assert_eq!(v["hc"]["ok"], true);
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let a = run(&["build-center", "--n", "5"]);
    let b = run(&["build-center", "--n", "5", "--threads", "1"]);
    assert_eq!(a.stdout, b.stdout);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c5.json");
    let o = run(&["build-center", "--n", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
}

#[test]
fn thread_count_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_so-center")).args(["verify", "central", "--n", "4"]).env("SO_CENTER_THREADS", "2").output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_so-center")).args(["verify", "central", "--n", "4"]).env("SO_CENTER_THREADS", "0").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}
