use std::path::Path;
use std::process::{Command, Output};

use cosurf::formats::{ComplexFile, GroupTable, SeriesFile};
use cosurf::Report;
use cosurf_core::algebra::FiniteGroup;

fn cosurf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cosurf")).args(args).output().expect("binary runs")
}

fn report(path: &Path) -> Report {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn empty_invocation_is_a_usage_error() {
    let out = cosurf(&[]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn invalid_config_is_rejected() {
    assert!(!cosurf(&["expmap", "--n", "8,12"]).status.success());
    assert!(!cosurf(&["series", "--groupoid", "interval:3"]).status.success());
    assert!(!cosurf(&["semigroup", "--group", "Z1"]).status.success());
    assert!(!cosurf(&["semigroup", "--bogus"]).status.success());
    assert!(!cosurf(&["semigroup", "--tol", "-1"]).status.success());
}

#[test]
fn expmap_csv_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("conv.csv");
    let out = cosurf(&["expmap", "--grade", "3", "--n", "8,16,32,64", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let mut rd = csv::Reader::from_path(&path).unwrap();
    assert_eq!(rd.headers().unwrap(), vec!["n", "grade", "error"]);
    let errs: Vec<f64> = rd.records().map(|r| r.unwrap()[2].parse().unwrap()).collect();
    assert_eq!(errs.len(), 4);
    for w in errs.windows(2) {
        assert!((1.7..=2.3).contains(&(w[0] / w[1])));
    }
}

#[test]
fn nonregular_report_passes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nr.json");
    let out = cosurf(&["nonregular", "--t", "0.5", "--points", "10000", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let r = report(&path);
    assert!(r.pass);
    assert_eq!(r.command, "nonregular");
    assert!(r.table.is_some());
    assert!(r.cases.iter().any(|c| c.name.contains("leaves the group")));
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        let out = cosurf(&["series", "--count", "5", "--seed", "11", "--out", p.to_str().unwrap()]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let r = report(&a);
    assert_eq!(r.seed, 11);
    assert!(r.max_residual == 0.0);
}

#[test]
fn cosurface_subcommands() {
    for args in [
        vec!["cosurface", "series"],
        vec!["cosurface", "cut-paste", "--group", "Z2"],
        vec!["cosurface", "markov-check", "--group", "Z2"],
        vec!["semigroup"],
        vec!["reorder"],
    ] {
        let out = cosurf(&args);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let r: Report = serde_json::from_slice(&out.stdout).unwrap();
        assert!(r.pass && !r.cases.is_empty());
    }
}

#[test]
fn table_file_group() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q8.json");
    let table = GroupTable::from_group(&FiniteGroup::quaternion8());
    std::fs::write(&path, serde_json::to_string(&table).unwrap()).unwrap();
    let out = cosurf(&["semigroup", "--table-file", path.to_str().unwrap(), "--t", "0.5,1"]);
    assert!(out.status.success());
    std::fs::write(&path, r#"{"elements":["e","a"],"table":[["e","a"],["a","a"]]}"#).unwrap();
    assert!(!cosurf(&["semigroup", "--table-file", path.to_str().unwrap()]).status.success());
}

#[test]
fn complex_files() {
    let dir = tempfile::tempdir().unwrap();
    let markov = dir.path().join("chain.json");
    std::fs::write(
        &markov,
        r#"{"cells": [[{"base": [0]}], [{"base": [1]}], [{"base": [2]}], [{"base": [3]}]],
            "domains": [{"lo": [0], "hi": [1]}, {"lo": [1], "hi": [2]}, {"lo": [2], "hi": [3]}],
            "split": [2, 3]}"#,
    )
    .unwrap();
    let file = ComplexFile::load(&markov).unwrap();
    assert_eq!(file.build().unwrap().0.len(), 4);
    let p = markov.to_str().unwrap();
    let out = cosurf(&["cosurface", "markov-check", "--group", "S3", "--complex", p]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = cosurf(&["cosurface", "cut-paste", "--group", "Z3", "--complex", p, "--time", "2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = cosurf(&["cosurface", "cut-paste", "--group", "Z3", "--complex", p, "--time", "7"]);
    assert!(!out.status.success());
}

#[test]
fn series_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    let file = SeriesFile {
        groupoid: "interval:0..3".into(),
        trunc: 3,
        size: 2,
        terms: vec![
            cosurf::formats::SeriesTerm {
                index: "[0,1]".into(),
                coeff: vec![vec!["1/2".into(), "0".into()], vec!["-3".into(), "1".into()]],
            },
            cosurf::formats::SeriesTerm {
                index: "[1,3]".into(),
                coeff: vec![vec!["0".into(), "2/3".into()], vec!["0".into(), "0".into()]],
            },
        ],
    };
    std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
    let out = cosurf(&["series", "--input", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
