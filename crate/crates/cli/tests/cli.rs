use std::path::Path;
use std::process::{Command, Output};

use qspeckle_cli::config::{parse_config_text, Subcommand};
use serde_json::Value;

fn qspeckle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qspeckle"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = qspeckle(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn data_lines(csv: &str) -> Vec<&str> {
    csv.lines().filter(|l| !l.starts_with('#')).collect()
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn predict_matches_golden_file() {
    let out = stdout(&[
        "predict",
        "--state",
        "thermal",
        "--mean",
        "2",
        "--ell-over-l",
        "0.1,0.25,0.5,0.75,1",
        "--g",
        "inf,4,16",
    ]);
    assert_eq!(out, golden("predict_thermal.csv"));
}

#[test]
fn figure_matches_golden_file() {
    assert_eq!(
        stdout(&["figure", "--figure", "fig4", "--state", "fock"]),
        golden("fig4_fock.csv")
    );
}

#[test]
fn fig3_coherent_line_is_unity() {
    let out = stdout(&["predict", "--state", "coherent", "--mean", "1", "--figure", "fig3"]);
    let lines = data_lines(&out);
    assert_eq!(lines[0], "quantity,state,mean_photons,ell_over_L,g,value");
    assert!(lines.len() > 1);
    for line in &lines[1..] {
        assert!(line.ends_with(",1.000000000000"), "{line}");
    }
}

#[test]
fn fig3_thermal_example_config() {
    let out = stdout(&["predict", "--state", "thermal", "--mean", "1", "--figure", "fig3"]);
    let config = parse_config_text(&out).unwrap();
    assert_eq!(config.subcommand, Subcommand::Predict);
    for line in &data_lines(&out)[1..] {
        assert!(line.starts_with("two_point_correlation,thermal,"), "{line}");
        assert!(line.ends_with(",2.000000000000"), "{line}");
    }
}

#[test]
fn same_config_twice_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = qspeckle(&["figure", "--figure", "fig2-transmission", "-o", path.to_str().unwrap()]);
        assert!(out.status.success());
    }
    let (a, b) = (std::fs::read_to_string(a).unwrap(), std::fs::read_to_string(b).unwrap());
    assert_eq!(data_lines(&a), data_lines(&b));
    assert_eq!(data_lines(&a).len(), 1 + 3 * 101);
}

#[test]
fn output_reruns_from_its_own_echo() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.csv");
    let p = path.to_str().unwrap();
    assert!(
        qspeckle(&["predict", "--state", "fock", "--n", "3", "--ell-over-l", "0.3", "-o", p])
            .status
            .success()
    );
    let first = std::fs::read(&path).unwrap();
    assert!(qspeckle(&["predict", "--config", p]).status.success());
    assert_eq!(std::fs::read(&path).unwrap(), first);
}

#[test]
fn simulate_reruns_from_json_echo() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    let p = path.to_str().unwrap();
    let args = [
        "simulate",
        "--state",
        "thermal",
        "--mean",
        "1",
        "--modes",
        "8",
        "--realizations",
        "50",
        "--seed",
        "3",
        "--format",
        "json",
        "-o",
        p,
    ];
    assert!(qspeckle(&args).status.success());
    let first: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(qspeckle(&["simulate", "--config", p]).status.success());
    let second: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(first["config"], second["config"]);
    assert_eq!(first["estimates"], second["estimates"]);
}

#[test]
fn range_error_names_ell_over_l() {
    let out = qspeckle(&["simulate", "--ell-over-l", "1.5", "--state", "coherent", "--mean", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ell_over_L"));
}

#[test]
fn range_errors_for_conductance_and_photons() {
    let out = qspeckle(&["predict", "--state", "thermal", "--g", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains(" g "));
    let out = qspeckle(&["predict", "--state", "thermal", "--mean", "-2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("mean_photons"));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = qspeckle(&["simulate", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unreadable_config_and_unwritable_output_are_io_errors() {
    let out = qspeckle(&["predict", "--config", "/definitely/not/here.toml"]);
    assert_eq!(out.status.code(), Some(4));
    let out = qspeckle(&[
        "predict",
        "--state",
        "fock",
        "--n",
        "1",
        "-o",
        "/definitely/not/here.csv",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn help_and_version_succeed() {
    assert!(qspeckle(&["--help"]).status.success());
    assert!(stdout(&["--version"]).contains(env!("CARGO_PKG_VERSION")));
}

#[test]
fn toml_config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.toml");
    std::fs::write(
        &path,
        "subcommand = \"predict\"\n\n[state]\nkind = \"fock\"\nmean_photons = 2.0\n\n[sweep]\nell_over_L = [0.5]\n",
    )
    .unwrap();
    let out = stdout(&["predict", "--config", path.to_str().unwrap(), "--g", "10"]);
    let lines = data_lines(&out);
    assert_eq!(
        lines[1],
        "total_transmission_variance_ratio,fock,2.000000000000,0.500000000000,10.000000000000,0.204166666667"
    );
}

#[test]
fn coherent_json_obeys_the_poisson_identity() {
    let out = stdout(&[
        "simulate",
        "--state",
        "coherent",
        "--mean",
        "2",
        "--modes",
        "16",
        "--realizations",
        "300",
        "--seed",
        "8",
        "--format",
        "json",
    ]);
    let doc: Value = serde_json::from_str(&out).unwrap();
    let top_level: Vec<usize> = ["tool", "version", "config", "spec_echo", "estimates", "wall_time"]
        .iter()
        .map(|k| out.find(&format!("\n  \"{k}\": ")).unwrap())
        .collect();
    assert!(top_level.windows(2).all(|w| w[0] < w[1]), "{top_level:?}");
    assert_eq!(doc["spec_echo"]["master_seed"], 8);
    let est = &doc["estimates"];
    let ratio = est["total_transmission_variance_ratio"]["value"].as_f64().unwrap();
    let mean = est["mean_total_transmission"]["value"].as_f64().unwrap();
    assert!((ratio - mean).abs() <= 1e-12 * mean, "{ratio} vs {mean}");
    assert!(doc["rejected_realizations"].is_u64());
    assert!(doc["wall_time"].is_f64());
}

#[test]
fn fock_one_two_point_correlation_vanishes() {
    let out = stdout(&[
        "simulate",
        "--state",
        "fock",
        "--n",
        "1",
        "--modes",
        "16",
        "--realizations",
        "300",
        "--format",
        "json",
    ]);
    let doc: Value = serde_json::from_str(&out).unwrap();
    let c = &doc["estimates"]["two_point_correlation"];
    let (value, se) = (c["value"].as_f64().unwrap(), c["stderr"].as_f64().unwrap());
    assert!(value.abs() <= 3.0 * se.max(1e-12), "{value} ± {se}");
}

#[test]
fn simulate_csv_columns() {
    let out = stdout(&[
        "simulate",
        "--state",
        "thermal",
        "--mean",
        "1",
        "--modes",
        "8",
        "--realizations",
        "100",
    ]);
    let lines = data_lines(&out);
    assert_eq!(
        lines[0],
        "quantity,state,mean_photons,ell_over_L,g,value,estimate,stderr,analytic,pull"
    );
    for line in &lines[1..] {
        assert_eq!(line.split(',').count(), 10, "{line}");
    }
    assert!(lines
        .iter()
        .any(|l| l.starts_with("two_point_correlation,thermal,1.000000000000,0.500000000000,inf,2.000000000000,")));
}

#[test]
fn oracle_rows_agree() {
    let out = stdout(&[
        "oracle",
        "--state",
        "fock",
        "--n",
        "3",
        "--modes",
        "3",
        "--ell-over-l",
        "0.7",
    ]);
    let lines = data_lines(&out);
    assert_eq!(lines[0], "quantity,output,oracle,engine,abs_diff,truncation_bound");
    for line in &lines[1..] {
        let diff: f64 = line.split(',').nth(4).unwrap().parse().unwrap();
        assert!(diff < 1e-10, "{line}");
    }
}
