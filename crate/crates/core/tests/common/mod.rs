#![allow(dead_code)]

pub mod oracle;

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn fixture(name: &str) -> PathBuf {
    fixtures().join(name)
}

pub fn schema_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../report.schema.json")
}

pub fn bha(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bha"))
        .args(args)
        .output()
        .expect("bha runs")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

/// Every `.bha` file under `fixtures/`, recursively, sorted.
pub fn all_documents() -> Vec<PathBuf> {
    fn walk(dir: PathBuf, out: &mut Vec<PathBuf>) {
        for entry in std::fs::read_dir(dir).expect("fixtures readable") {
            let p = entry.unwrap().path();
            if p.is_dir() {
                walk(p, out);
            } else if p.extension().is_some_and(|e| e == "bha") {
                out.push(p);
            }
        }
    }
    let mut out = Vec::new();
    walk(fixtures(), &mut out);
    out.sort();
    out
}

pub fn validate(report: &serde_json::Value) -> Result<(), String> {
    let schema: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(schema_path()).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).map_err(|e| e.to_string())?;
    let errors: Vec<String> = validator.iter_errors(report).map(|e| format!("{e} at {}", e.instance_path())).collect();
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors.join("; "))
    }
}
