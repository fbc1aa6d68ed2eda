mod common;

use common::*;
use serde_json::Value;

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(fixture(&format!("golden/{name}"))).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = bha(&all);
    let v = serde_json::from_str(&stdout(&out)).unwrap_or_else(|e| panic!("{e}: {}", stdout(&out)));
    (out.status.code().unwrap(), v)
}

#[test]
fn decompose_fk3_matches_golden() {
    let fk3 = path("fk3.bha");
    let out = bha(&["decompose", &fk3, "--coideal", "K12", "--format", "json", "--no-timing"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text, golden("fk3.decompose.K12.json"));
    for needle in [
        r#""hilbert_A":[1,3,4,3,1]"#,
        r#""hilbert_K":[1,1]"#,
        r#""hilbert_Abar":[1,2,2,1]"#,
        r#""phi_bijective":true"#,
    ] {
        assert!(text.contains(needle), "missing {needle}");
    }
}

#[test]
fn timing_is_the_only_difference() {
    let fk3 = path("fk3.bha");
    let (code, mut timed) = json(&["decompose", &fk3, "--coideal", "K12"]);
    assert_eq!(code, 0);
    let timing = timed.as_object_mut().unwrap().remove("timing").expect("timing present");
    assert!(timing.as_object().unwrap().contains_key("total_s"));
    let expected: Value = serde_json::from_str(&golden("fk3.decompose.K12.json")).unwrap();
    assert_eq!(timed, expected);
}

#[test]
fn run_reports_match_goldens() {
    for n in [2, 3] {
        let file = path(&format!("fk{n}.bha"));
        let out = bha(&["run", &file, "--format", "json", "--no-timing"]);
        assert_eq!(out.status.code(), Some(0), "fk{n}");
        assert_eq!(stdout(&out), golden(&format!("fk{n}.run.json")), "fk{n}");
    }
}

#[test]
fn reports_validate_against_schema() {
    let fk3 = path("fk3.bha");
    let broken = path("broken.bha");
    let runs: Vec<Vec<&str>> = vec![
        vec!["run", &fk3],
        vec!["check", &fk3],
        vec!["hilbert", &fk3],
        vec!["decompose", &fk3, "--coideal", "K13"],
        vec!["canmap", &fk3, "--coideal", "K12"],
        vec!["freeness", &fk3, "--coideal", "K23"],
        vec!["hopfmod", &fk3],
        vec!["decompose", &broken, "--coideal", "X"],
        vec!["fk", "2"],
    ];
    for args in runs {
        let (_, v) = json(&args);
        validate(&v).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    }
    for name in ["fk2.run.json", "fk3.run.json", "fk3.decompose.K12.json"] {
        let v: Value = serde_json::from_str(&golden(name)).unwrap();
        validate(&v).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
    let mut bad: Value = serde_json::from_str(&golden("fk3.decompose.K12.json")).unwrap();
    bad["status"] = "maybe".into();
    assert!(validate(&bad).is_err());
    let mut bad: Value = serde_json::from_str(&golden("fk3.decompose.K12.json")).unwrap();
    bad["tasks"][0]["hilbert_A"] = serde_json::json!([1, -3]);
    assert!(validate(&bad).is_err());
}

#[test]
fn broken_coideal_exits_one_with_witness() {
    let broken = path("broken.bha");
    let out = bha(&["decompose", &broken, "--coideal", "X"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("witness: v12*v13"), "{text}");
    let (code, v) = json(&["decompose", &broken, "--coideal", "X"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "fail");
    assert_eq!(v["tasks"][0]["coideal_witness"]["element"], "v12*v13");
}

#[test]
fn input_errors_exit_two() {
    for name in ["syntax", "undeclared", "not_yd", "inhomogeneous", "unknown_coideal"] {
        let file = path(&format!("negative/{name}.bha"));
        let out = bha(&["run", &file]);
        assert_eq!(out.status.code(), Some(2), "{name}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.starts_with("error:"), "{name}: {err}");
    }
    let fk3 = path("fk3.bha");
    let cases: Vec<Vec<&str>> = vec![
        vec!["decompose", &fk3, "--coideal", "K99"],
        vec!["decompose", &fk3],
        vec!["hilbert", "/nonexistent.bha"],
        vec!["hilbert", &fk3, "--field", "fp:32004"],
        vec!["hilbert", &fk3, "--field", "r"],
        vec!["hilbert", &fk3, "--format", "yaml"],
        vec!["frobnicate"],
        vec!["fk", "1"],
    ];
    for args in cases {
        assert_eq!(bha(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn fk_emit_prints_fixture() {
    for n in [2, 3, 4] {
        let out = bha(&["fk", &n.to_string(), "--emit"]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(stdout(&out), std::fs::read_to_string(fixture(&format!("fk{n}.bha"))).unwrap());
    }
}

#[test]
fn fk_without_emit_runs_the_builtin_tasks() {
    let (code, v) = json(&["fk", "3", "--no-timing"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "fk 3");
    assert_eq!(v["tasks"].as_array().unwrap().len(), 6);
}

#[test]
fn prime_field_and_threads_agree_with_rationals() {
    let fk3 = path("fk3.bha");
    let (code, q) = json(&["decompose", &fk3, "--coideal", "K12", "--no-timing"]);
    assert_eq!(code, 0);
    let (code, p) = json(&["decompose", &fk3, "--coideal", "K12", "--no-timing", "--field", "fp:32003", "--jobs", "2"]);
    assert_eq!(code, 0);
    assert_eq!(p["field"], "F_32003");
    for key in ["hilbert_A", "hilbert_K", "hilbert_Abar", "phi_bijective", "section", "verdict"] {
        assert_eq!(p["tasks"][0][key], q["tasks"][0][key], "{key}");
    }
    let (_, one) = json(&["run", &fk3, "--no-timing", "--jobs", "1"]);
    let (_, four) = json(&["run", &fk3, "--no-timing", "--jobs", "4"]);
    assert_eq!(one, four);
}

#[test]
fn max_degree_and_seed_flags() {
    let fk3 = path("fk3.bha");
    let (code, v) = json(&["hilbert", &fk3, "--max-degree", "3", "--no-timing"]);
    assert_eq!(code, 0);
    assert_eq!(v["max_degree"], 3);
    assert_eq!(v["tasks"][0]["hilbert"], serde_json::json!([1, 3, 4, 3]));
    assert_eq!(v["tasks"][0]["stabilized"], false);
    let (_, a) = json(&["check", &fk3, "--seed", "7", "--no-timing"]);
    let (_, b) = json(&["check", &fk3, "--seed", "7", "--no-timing"]);
    assert_eq!(a, b);
    assert_eq!(a["seed"], 7);
}

#[test]
fn text_is_the_default_format() {
    let out = bha(&["hilbert", &path("fk3.bha")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("hilbert [1, 3, 4, 3, 1] total 12"), "{text}");
    assert!(text.ends_with("status: pass\n"));
}
