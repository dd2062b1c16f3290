use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use polyverse::interchange::Interchange;
use polyverse::naturalmodel::mk_corrupted_universe;
use serde_json::Value;
use tempfile::TempDir;

fn polyverse<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_polyverse")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn write(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn capture(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let out = polyverse(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    write(dir, name, &stdout(&out))
}

fn summary(out: &Output) -> Value {
    let last = stdout(out).lines().last().unwrap().to_string();
    serde_json::from_str::<Value>(&last).unwrap()["summary"].clone()
}

fn arg(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn suites_pass_with_exit_zero() {
    for suite in ["coherence", "unique-adjustment", "type-isos"] {
        let out = polyverse(["run", suite, "--seed", "3", "--count", "3"]);
        assert_eq!(out.status.code(), Some(0), "{suite}");
        assert_eq!(summary(&out)["failed"], 0);
    }
}

#[test]
fn reports_are_byte_identical_for_the_same_seed() {
    for format in ["json", "text"] {
        let args = ["run", "extension-composition", "--seed", "17", "--count", "4", "--format", format];
        let first = polyverse(args);
        let second = polyverse(args);
        assert_eq!(first.stdout, second.stdout);
        assert!(!first.stdout.is_empty());
    }
    let other = polyverse(["run", "extension-composition", "--seed", "18", "--count", "4"]);
    assert_ne!(other.stdout, polyverse(["run", "extension-composition", "--seed", "17", "--count", "4"]).stdout);
}

#[test]
fn generate_is_reproducible_and_round_trips() {
    let dir = TempDir::new().unwrap();
    for kind in ["polynomial", "morphism", "universe"] {
        let a = polyverse(["generate", kind, "--seed", "8"]);
        let b = polyverse(["generate", kind, "--seed", "8"]);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{kind}");
        write(&dir, &format!("{kind}.json"), &stdout(&a));
    }
    let check = polyverse(["cell", "check", arg(&dir.path().join("morphism.json"))]);
    assert_eq!(check.status.code(), Some(0));
    let isos = polyverse(["model", "isos", arg(&dir.path().join("universe.json"))]);
    assert_eq!(isos.status.code(), Some(0));
}

#[test]
fn corrupted_universe_fails_with_witnesses() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "corrupted.json", &mk_corrupted_universe().to_json_string());
    let out = polyverse(["model", "check", arg(&path)]);
    assert_eq!(out.status.code(), Some(1));
    let failures: Vec<Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap())
        .filter(|r| r["outcome"] == "fail")
        .collect();
    assert!(!failures.is_empty());
    assert!(failures.iter().all(|r| r["witness"].as_str().is_some_and(|w| !w.is_empty())));
}

#[test]
fn builtin_universes_pass_every_model_check() {
    let dir = TempDir::new().unwrap();
    for which in ["bool", "skewed"] {
        let path = capture(&dir, &format!("{which}.json"), &["model", "builtin", which]);
        let out = polyverse(["model", "check", arg(&path), "--format", "text"]);
        assert_eq!(out.status.code(), Some(0), "{which}: {}", stdout(&out));
        assert!(stdout(&out).contains("PASS"));
        assert!(!stdout(&out).contains("FAIL"));
    }
}

#[test]
fn input_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", "{\"I\": [");
    let out = polyverse(["poly", "compose", arg(&bad), arg(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));

    let missing = dir.path().join("missing.json");
    assert_eq!(polyverse(["poly", "extend", arg(&missing), arg(&missing)]).status.code(), Some(2));
    assert_eq!(polyverse(["run", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(polyverse(["generate", "sheaf"]).status.code(), Some(2));
}

#[test]
fn a_map_that_is_not_functional_is_rejected() {
    let dir = TempDir::new().unwrap();
    let map = write(&dir, "map.json", r#"{"dom": ["b"], "cod": ["a"], "map": [["b", "a"], ["b", "a"]]}"#);
    assert_eq!(polyverse(["internal", "cat", arg(&map)]).status.code(), Some(2));
}

#[test]
fn cap_exhaustion_everywhere_exits_with_three() {
    let out = polyverse(["run", "coherence", "--seed", "1", "--count", "2", "--cap", "1"]);
    assert_eq!(out.status.code(), Some(3), "{}", stdout(&out));
    let s = summary(&out);
    assert_eq!(s["cap_exceeded"], s["checks"]);
}

#[test]
fn compose_and_extend_produce_interchange_records() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "f.json",
        r#"{"I":["i"],"B":["b0","b1"],"A":["a"],"J":["i"],"s":[["b0","i"],["b1","i"]],"f":[["b0","a"],["b1","a"]],"t":[["a","i"]]}"#,
    );
    let ff = polyverse(["poly", "compose", arg(&f), arg(&f)]);
    assert_eq!(ff.status.code(), Some(0));
    let composite: Value = serde_json::from_str(&stdout(&ff)).unwrap();
    // X ↦ X² composed with itself is X ↦ X⁴: one operation, four arities
    assert_eq!(composite["A"].as_array().unwrap().len(), 1);
    assert_eq!(composite["B"].as_array().unwrap().len(), 4);

    let x = write(&dir, "x.json", r#"{"index":["i"],"fibres":[["i",["x0","x1","x2"]]]}"#);
    let ext = polyverse(["poly", "extend", arg(&f), arg(&x)]);
    assert_eq!(ext.status.code(), Some(0), "{}", String::from_utf8_lossy(&ext.stderr));
    let family: Value = serde_json::from_str(&stdout(&ext)).unwrap();
    assert_eq!(family["fibres"][0][1].as_array().unwrap().len(), 9);
}

#[test]
fn internal_commands_on_a_small_map() {
    let dir = TempDir::new().unwrap();
    let map = write(
        &dir,
        "map.json",
        r#"{"dom":["b0","b1","b2"],"cod":["a0","a1"],"map":[["b0","a0"],["b1","a1"],["b2","a1"]]}"#,
    );
    let out = polyverse(["internal", "cat", arg(&map)]);
    assert_eq!(out.status.code(), Some(0));
    let cat: Value = serde_json::from_str(&stdout(&out)).unwrap();
    // hom-sets between fibres of sizes 1 and 2: 1 + 2 + 1 + 4
    assert_eq!(cat["mor"].as_array().unwrap().len(), 8);

    let phi = capture(&dir, "phi.json", &["generate", "morphism", "--seed", "2"]);
    let check = polyverse(["cell", "check", arg(&phi)]);
    let cartesian = serde_json::from_str::<Value>(&stdout(&check)).unwrap()["cartesian"] == true;
    let equiv = polyverse(["internal", "check-equiv", arg(&phi), arg(&phi)]);
    if cartesian {
        assert_eq!(equiv.status.code(), Some(0));
        let table: Value = serde_json::from_str(&stdout(&equiv)).unwrap();
        assert_eq!(table["agree"], true);
        // the identity is the only adjustment from a cartesian cell to itself
        for component in table["components"].as_array().unwrap() {
            assert_eq!(component["adjustments"], 1);
        }
    } else {
        assert_eq!(equiv.status.code(), Some(2));
    }
}
