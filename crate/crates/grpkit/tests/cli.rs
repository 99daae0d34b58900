use std::path::PathBuf;
use std::process::{Command, Output};

use grpkit::ReportEnvelope;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grpkit"))
        .args(args)
        .env_remove("GRPKIT_SEED")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn envelope(args: &[&str]) -> (i32, ReportEnvelope) {
    let mut a = args.to_vec();
    a.push("--json");
    let o = run(&a);
    (o.status.code().unwrap(), serde_json::from_slice(&o.stdout).unwrap())
}

#[test]
fn verify_counterexample_text_lists_fifteen_claims() {
    let o = run(&["verify-counterexample"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("[PASS] claim-")).count(), 15);
    assert!(out.contains("Conjecture 1 refuted"));
}

#[test]
fn verify_counterexample_json_keeps_stdout_pure() {
    let o = run(&["verify-counterexample", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let e: ReportEnvelope = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(e.command, "verify-counterexample");
    assert_eq!(e.result["overall"], true);
    assert_eq!(e.result["claims"].as_array().unwrap().len(), 15);
    assert!(e.elapsed_ms.is_none());
    assert!(String::from_utf8_lossy(&o.stderr).contains("Conjecture 1 refuted"));
}

#[test]
fn verdict_is_seed_independent() {
    let (c0, e0) = envelope(&["verify-counterexample"]);
    let (c7, e7) = envelope(&["verify-counterexample", "--seed", "7"]);
    assert_eq!((c0, c7), (0, 0));
    assert_eq!(e0.result["overall"], e7.result["overall"]);
    assert_eq!(e7.inputs["seed"], "7");
}

#[test]
fn timings_are_opt_in() {
    let (_, e) = envelope(&["verify-counterexample", "--timings"]);
    assert!(e.elapsed_ms.is_some());
    assert!(e.result["claims"][0].get("micros").is_some());
}

#[test]
fn json_round_trips() {
    let o = run(&["criterion", "lili", "--atlas", "S4", "--json"]);
    let text = stdout(&o);
    let e: ReportEnvelope = serde_json::from_str(&text).unwrap();
    let again: ReportEnvelope = serde_json::from_str(&e.to_json()).unwrap();
    assert_eq!(e, again);
    assert_eq!(e.to_json().trim_end(), text.trim_end());
}

#[test]
fn lili_on_s4_fails_at_an_index_four_maximal() {
    let o = run(&["criterion", "lili", "--atlas", "S4"]);
    assert_eq!(o.status.code(), Some(1));
    let (code, e) = envelope(&["criterion", "lili", "--atlas", "S4"]);
    assert_eq!(code, 1);
    let bad: Vec<_> = e.result["witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|w| w["ok"] == false)
        .collect();
    assert!(!bad.is_empty());
    assert!(bad.iter().all(|w| w["maximal_index"] == 4 && w["value"] == 4));
}

#[test]
fn criterion_examples() {
    assert_eq!(run(&["criterion", "huppert", "--atlas", "S3"]).status.code(), Some(0));
    assert_eq!(run(&["criterion", "lili", "--atlas", "a5"]).status.code(), Some(1));
    let (_, e) = envelope(&["criterion", "lili", "--atlas", "A5"]);
    let ws = e.result["witnesses"].as_array().unwrap();
    assert!(ws.iter().any(|w| w["value"] == 6 && w["class"] == "composite"));
}

#[test]
fn text_and_json_verdicts_agree() {
    let cases: &[&[&str]] = &[
        &["criterion", "huppert", "--atlas", "A4"],
        &["criterion", "kramer", "--atlas", "D12"],
        &["criterion", "lili", "--atlas", "SL(2,3)"],
        &["criterion", "wang", "--atlas", "S4", "--subgroup-gens", "(1 2)(3 4),(1 3)(2 4)"],
        &["criterion", "theorem2", "--atlas", "S3", "--subgroup-gens", "(1 2 3)"],
        &["corpus", "fstar-chain"],
    ];
    for args in cases {
        let text = run(args);
        let (code, e) = envelope(args);
        assert_eq!(text.status.code(), Some(code), "{args:?}");
        let holds = e.result.get("holds").or_else(|| e.result.get("pass")).unwrap();
        assert_eq!(holds == true, code == 0, "{args:?}");
        let first = stdout(&text);
        let word = if code == 0 { ["holds", "PASS"] } else { ["fails", "FAIL"] };
        assert!(word.iter().any(|w| first.contains(w)), "{args:?}");
    }
}

#[test]
fn group_file_source() {
    let f = data("s4.grp");
    let (code, e) = envelope(&["criterion", "huppert", "--group", &f]);
    assert_eq!(code, 1);
    assert_eq!(e.inputs["group"], f);
}

#[test]
fn exit_code_two_on_errors() {
    let s4_v4 = "(1 2)(3 4),(1 3)(2 4)";
    for args in [
        vec!["criterion", "lili", "--atlas", "S6"],
        vec!["criterion", "lili"],
        vec!["criterion", "theorem2", "--atlas", "S4"],
        vec!["criterion", "theorem2", "--atlas", "S4", "--subgroup-gens", "(1 2)"],
        vec!["criterion", "theorem2", "--atlas", "S4", "--subgroup-gens", "(1 5)"],
        vec!["criterion", "theorem2", "--atlas", "S4", "--subgroup-gens", s4_v4, "--formation", "nilpotent"],
        vec!["criterion", "huppert", "--group", "/nonexistent.grp"],
        vec!["criterion", "huppert", "--atlas", "S4", "--subgroup-gens", s4_v4],
        vec!["criterion", "huppert", "--atlas", "A5", "--bound-brute", "10"],
        vec!["corpus", "nothing"],
        vec!["verify-counterexample", "--bound-enum", "100"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn bound_error_names_the_claim() {
    let o = run(&["verify-counterexample", "--bound-enum", "100"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("claim-"));
}

#[test]
fn seed_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_grpkit"))
        .args(["atlas", "--json"])
        .env("GRPKIT_SEED", "11")
        .output()
        .unwrap();
    let e: ReportEnvelope = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(e.inputs["seed"], "11");
    let bad = Command::new(env!("CARGO_BIN_EXE_grpkit"))
        .arg("atlas")
        .env("GRPKIT_SEED", "x")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn corpus_exits_zero() {
    for check in ["schmid-shemetkov", "lili-equiv", "theorem2-soundness"] {
        let (code, e) = envelope(&["corpus", check]);
        assert_eq!(code, 0, "{check}");
        assert_eq!(e.result["rows"].as_array().unwrap().len(), 20);
    }
}

#[test]
fn module_info_on_permutation_module() {
    let (code, e) = envelope(&["module-info", &data("a4_perm_gf2.mod")]);
    assert_eq!(code, 0);
    // GF(2)-permutation module of A4 on 4 points: uniserial 1/2/1.
    assert_eq!(e.result["composition_factor_dims"], serde_json::json!([1, 1, 2]));
    assert_eq!(e.result["socle_dim"], 1);
    assert_eq!(e.result["radical_dim"], 3);
    assert_eq!(e.result["indecomposable"], true);
}
