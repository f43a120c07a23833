use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn grouplab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grouplab")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = grouplab(&all);
    (out.status.code().unwrap(), serde_json::from_slice(&out.stdout).unwrap())
}

#[test]
fn report_envelope() {
    let (code, v) = json(&["parse", &data("surface1.grp")]);
    assert_eq!(code, 0);
    for key in ["command", "tool_version", "inputs", "config", "verdict", "result"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["command"], "parse");
    assert!(v.get("timings").is_none());
    let (_, v) = json(&["--timings", "parse", &data("surface1.grp")]);
    assert!(v.get("timings").is_some());
}

#[test]
fn primitivity_exit_codes() {
    let (code, v) = json(&["primitive-relator", &data("klein.grp")]);
    assert_eq!((code, &v["verdict"], &v["result"]["primitive"]), (1, &"fail".into(), &false.into()));
    assert_eq!(v["result"]["coefficient_gcd"], "2");
    for f in ["surface1.grp", "surface2.grp", "free2.grp"] {
        let (code, v) = json(&["primitive-relator", &data(f)]);
        assert_eq!((code, &v["result"]["primitive"]), (0, &true.into()), "{f}");
    }
}

#[test]
fn nilpotent_quotient_layers() {
    let (code, v) = json(&["nq", &data("klein.grp"), "--class", "2"]);
    assert_eq!(code, 0);
    let text = v["result"].to_string();
    assert!(text.contains("Z/2"), "{text}");
}

#[test]
fn braid_torsion() {
    let (code, v) = json(&["torsion", "--braid", "3", "--class", "2"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["verdict"], "torsion");
    assert_eq!(v["result"]["witnesses"][0]["order"], 3);
    let (code, v) = json(&["torsion", "--strands", "3", "--class", "3"]);
    assert_eq!((code, &v["result"]["verdict"]), (0, &"torsion_free".into()));
}

#[test]
fn links() {
    let (code, v) = json(&["link-primitive", &data("hopf.json")]);
    assert_eq!((code, &v["result"]["primitive"]), (0, &true.into()));
    let (code, v) = json(&["link-primitive", &data("unlinked_mod2.json")]);
    assert_eq!((code, &v["result"]["primitive"]), (1, &false.into()));
}

#[test]
fn zones_and_power_lemma() {
    assert_eq!(json(&["zones", "--r", "5", "--width", "10", "--height", "10"]).0, 0);
    assert_eq!(json(&["power-lemma", "--fixture", "q16"]).0, 0);
    assert_eq!(json(&["power-lemma", "--matrix", &data("matrix.json")]).0, 0);
    assert_eq!(json(&["tau-check", "--max-m", "1"]).0, 0);
}

#[test]
fn input_errors() {
    let out = grouplab(&["nq", "/nonexistent.grp", "--class", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert_eq!(grouplab(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(grouplab(&["nq", &data("klein.grp"), "--class", "9"]).status.code(), Some(2));
    assert_eq!(grouplab(&["torsion", "--braid", "7", "--class", "2"]).status.code(), Some(2));
}

#[test]
fn sequential_matches_parallel() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("config");
        v
    };
    for args in [vec!["tau-check", "--max-m", "2"], vec!["torsion", "--braid", "3", "--class", "3"]] {
        let par = strip(json(&args).1);
        let mut seq_args = vec!["--sequential"];
        seq_args.extend(args.iter().copied());
        assert_eq!(par, strip(json(&seq_args).1));
    }
}
