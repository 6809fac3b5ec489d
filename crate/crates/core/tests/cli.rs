//! The binary end to end: golden outputs, exit codes and reproducibility.

use std::path::Path;
use std::process::{Command, Output};

use rainbow_forge::colorings::EdgeColoring;
use rainbow_forge::constructions;
use serde_json::Value;

fn forge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rainbow-forge")).args(args).env_remove("RAINBOW_FORGE_THREADS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

#[test]
fn golden_outputs() {
    for (args, file) in [
        (&["bounds", "--n", "8", "--k", "2"][..], "bounds_8_2.json"),
        (&["bounds", "--n", "10", "--k", "3"][..], "bounds_10_3.json"),
        (&["construct", "--n", "6", "--k", "2", "--which", "clique"][..], "clique_6_2.json"),
        (&["check", "--lemma", "gprime"][..], "check_gprime.json"),
    ] {
        let o = forge(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert_eq!(stdout(&o), golden(file), "{args:?}");
    }
}

#[test]
fn bounds_examples() {
    assert_eq!(json(&forge(&["bounds", "--n", "6", "--k", "2"]))["exact"], 11);
    assert_eq!(json(&forge(&["bounds", "--n", "8", "--k", "2"]))["exact"], 17);
    let o = forge(&["bounds", "--n", "2", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!((v["region"].as_str(), v["exact"].as_u64()), (Some("trivial"), Some(1)));
    let o = forge(&["bounds", "--n", "6", "--k", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn construct_then_find() {
    let dir = tempfile::tempdir().unwrap();
    let clique = dir.path().join("clique.json");
    let o = forge(&["construct", "--n", "6", "--k", "2", "--which", "clique", "--out", clique.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["colors"], 11);
    let join = dir.path().join("join.json");
    let o = forge(&["construct", "--n", "8", "--k", "2", "--which", "join", "--out", join.to_str().unwrap()]);
    assert_eq!(json(&o)["colors"], 17);
    let read = EdgeColoring::from_json(&std::fs::read_to_string(&join).unwrap()).unwrap();
    assert_eq!(read, constructions::bipartite_join_coloring(8, 2).unwrap());
    assert_eq!(forge(&["construct", "--n", "5", "--k", "2", "--which", "join"]).status.code(), Some(2));

    let o = forge(&["find-rainbow", "--input", clique.to_str().unwrap(), "--k", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["result"], Value::Null);

    // One more color than the join coloring: at the threshold.
    let refined = dir.path().join("refined.json");
    std::fs::write(&refined, read.split_classes(18).unwrap().to_json()).unwrap();
    let o = forge(&["find-rainbow", "--input", refined.to_str().unwrap(), "--k", "2", "--verbose"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["result"]["triples"].as_array().map(Vec::len), Some(2));
    assert!(!o.stderr.is_empty());

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"n": 3, "colors": [[0, 1, 1], [0, 1, 2], [1, 2, 1]]}"#).unwrap();
    let o = forge(&["find-rainbow", "--input", bad.to_str().unwrap(), "--k", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("E_DUPLICATE_PAIR"));
    std::fs::write(&bad, "not json").unwrap();
    let o = forge(&["find-rainbow", "--input", bad.to_str().unwrap(), "--k", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("E_SYNTAX"));
}

#[test]
fn checks_pass_and_reproduce() {
    let o = forge(&["check", "--lemma", "l4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["report"]["cases"], 4096);
    let a = forge(&["check", "--lemma", "hs", "--samples", "10000", "--seed", "7"]);
    let b = forge(&["check", "--lemma", "hs", "--samples", "10000", "--seed", "7", "--threads", "1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = forge(&["check", "--lemma", "finder", "--samples", "20", "--seed", "3"]);
    let d = Command::new(env!("CARGO_BIN_EXE_rainbow-forge"))
        .args(["check", "--lemma", "finder", "--samples", "20", "--seed", "3"])
        .env("RAINBOW_FORGE_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(c.status.code(), Some(0));
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn exact_and_conjecture() {
    let dir = tempfile::tempdir().unwrap();
    let witness = dir.path().join("w.json");
    let o = forge(&["exact", "--n", "6", "--k", "2", "--out", witness.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!((v["value"].as_u64(), v["certified"].as_bool(), v["mode"].as_str()), (Some(11), Some(true), Some("exact")));
    for key in ["n", "k", "nodes", "elapsed_ms", "interval"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    let w = EdgeColoring::from_json(&std::fs::read_to_string(&witness).unwrap()).unwrap();
    assert_eq!(w.color_count(), 11);
    assert!(w.find_rainbow_triangle_packing(2).is_none());

    let o = forge(&["exact", "--n", "8", "--k", "2", "--node-budget", "1000"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    let (lo, hi) = (v["interval"][0].as_u64().unwrap(), v["interval"][1].as_u64().unwrap());
    assert!(lo <= 17 && 17 <= hi);

    let o = forge(&["conjecture", "--n", "6", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["verdict"], "consistent");
    let o = forge(&["conjecture", "--n", "8", "--k", "2", "--node-budget", "1000"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["verdict"], "consistent");
    let o = forge(&["conjecture", "--n", "10", "--k", "3", "--node-budget", "100000"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["verdict"], "inconclusive");
    assert!(v["lower"].as_u64() <= Some(30) && v["upper"].as_u64() >= Some(30));
}
