use std::process::Command as Proc;

use clap::Parser;
use cli_harness::{run, Command, HarnessError, RunConfig, Status, TheoryModel};
use empirical_stats::{Convention, Normalization};
use lattice_enum::count_ball;
use semigroup_series::g2_log_form;

fn cfg(args: &[&str]) -> RunConfig {
    RunConfig::try_parse_from(std::iter::once("geocorr").chain(args.iter().copied())).unwrap()
}

fn run_to_strings(args: &[&str]) -> (Result<Status, HarnessError>, String, String) {
    let (mut out, mut rep) = (Vec::new(), Vec::new());
    let status = run(&cfg(args), &mut out, &mut rep);
    (status, String::from_utf8(out).unwrap(), String::from_utf8(rep).unwrap())
}

#[test]
fn geodesic_tables_match_the_small_examples() {
    let (status, csv, _) = run_to_strings(&["geodesics", "--cutoff-norm-sq", "3"]);
    assert_eq!(status.unwrap(), Status::Ok);
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "word,trace,length,primitive,d,nu,alpha_d");
    assert_eq!(rows.len(), 3);
    assert!(rows[1..].iter().all(|r| r.split(',').nth(1) == Some("3")));

    let (status, csv, rep) = run_to_strings(&["geodesics", "--cutoff-norm-sq", "7"]);
    assert_eq!(status.unwrap(), Status::Ok);
    assert_eq!(csv.lines().count(), 7);
    assert!(rep.contains("agree"), "{rep}");
}

#[test]
fn compare_reports_the_ball_size() {
    let (status, csv, rep) = run_to_strings(&["compare", "--q", "500"]);
    assert_eq!(status.unwrap(), Status::Ok, "{rep}");
    assert!(rep.contains(&format!("B_Q = {}", count_ball(500))), "{rep}");
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("x,empirical,theory,diff,theory_tail"));
    assert_eq!(lines.count(), 19);
}

#[test]
fn tight_tolerance_is_a_tolerance_failure() {
    let (status, _, _) = run_to_strings(&["compare", "--q", "100", "--tolerance", "1e-6"]);
    assert_eq!(status.unwrap(), Status::ToleranceFailure);
}

#[test]
fn empirical_output_is_deterministic() {
    let args = ["empirical", "--q", "60", "--convention", "tan", "--grid-step", "0.1"];
    let (a, csv_a, _) = run_to_strings(&args);
    let (b, csv_b, _) = run_to_strings(&args);
    assert_eq!(a.unwrap(), b.unwrap());
    assert_eq!(csv_a, csv_b);
    assert!(csv_a.starts_with("xi,R\n0,"));
    assert!(csv_a.lines().last().unwrap().starts_with("1.2,"));
}

#[test]
fn extrapolation_needs_the_flag() {
    let (status, _, _) = run_to_strings(&["theoretical", "--xi-max", "1.5", "--cutoff-norm-sq", "500"]);
    assert!(matches!(status, Err(HarnessError::Extrapolation { .. })));
    let (status, csv, _) = run_to_strings(&[
        "theoretical",
        "--xi-max",
        "1.5",
        "--grid-step",
        "0.5",
        "--cutoff-norm-sq",
        "500",
        "--mc-samples",
        "20000",
        "--allow-extrapolation",
    ]);
    assert_eq!(status.unwrap(), Status::Ok);
    assert_eq!(csv.lines().count(), 5);
}

#[test]
fn cache_does_not_bypass_the_extrapolation_guard() {
    let dir = std::env::temp_dir().join(format!("geocorr-guard-test-{}", std::process::id()));
    let d = dir.to_str().unwrap();
    let base =
        ["theoretical", "--xi-max", "1.5", "--grid-step", "0.5", "--cutoff-norm-sq", "500", "--mc-samples", "20000"];
    let with_flag: Vec<&str> = base.iter().copied().chain(["--cache-dir", d, "--allow-extrapolation"]).collect();
    assert_eq!(run_to_strings(&with_flag).0.unwrap(), Status::Ok);
    let without: Vec<&str> = base.iter().copied().chain(["--cache-dir", d]).collect();
    assert!(matches!(run_to_strings(&without).0, Err(HarnessError::Extrapolation { .. })));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn density_agrees_with_the_logarithmic_form() {
    let m = TheoryModel {
        convention: Convention::Angle,
        normalization: Normalization::SampleCount,
        cutoff_norm_sq: 4000,
        allow_extrapolation: false,
    };
    for x in [0.1, 0.3] {
        let xi = m.xi_of(x);
        let log_form = g2_log_form(xi, 4000).unwrap().value;
        let (density, _) = m.density(x).unwrap();
        assert!((density - log_form).abs() < 1e-6, "x = {x}: {density} vs {log_form}");
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_geocorr");
    let ok = Proc::new(bin).args(["geodesics", "--cutoff-norm-sq", "7"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout).lines().count(), 7);

    let usage = Proc::new(bin).args(["compare", "--q", "1"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&usage.stderr).starts_with("geocorr:"));

    let fail = Proc::new(bin).args(["compare", "--q", "100", "--tolerance", "1e-6"]).output().unwrap();
    assert_eq!(fail.status.code(), Some(1));
}

#[test]
fn out_file_and_cache() {
    let dir = std::env::temp_dir().join(format!("geocorr-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("theory.csv");
    let args = |extra: &str| {
        vec![
            "theoretical".to_string(),
            "--grid-step".into(),
            "0.3".into(),
            "--cutoff-norm-sq".into(),
            "500".into(),
            "--mc-samples".into(),
            "20000".into(),
            "--cache-dir".into(),
            dir.to_str().unwrap().into(),
            "--out".into(),
            out.to_str().unwrap().into(),
            extra.into(),
        ]
    };
    let mut rep = Vec::new();
    let c = RunConfig::try_parse_from(std::iter::once("geocorr".to_string()).chain(args("--seed=1"))).unwrap();
    assert_eq!(run(&c, &mut rep, &mut Vec::new()).unwrap(), Status::Ok);
    let first = std::fs::read(&out).unwrap();
    assert!(String::from_utf8_lossy(&rep).contains("g2(0)"));
    assert!(std::fs::read_dir(&dir).unwrap().any(|e| e.unwrap().file_name().to_string_lossy().starts_with("theory-")));
    let c = RunConfig::try_parse_from(std::iter::once("geocorr".to_string()).chain(args("--seed=2"))).unwrap();
    run(&c, &mut Vec::new(), &mut Vec::new()).unwrap();
    assert_eq!(std::fs::read(&out).unwrap(), first);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn command_enum_covers_every_subcommand() {
    for (name, cmd) in [
        ("enumerate", Command::Enumerate),
        ("empirical", Command::Empirical),
        ("theoretical", Command::Theoretical),
        ("geodesics", Command::Geodesics),
        ("compare", Command::Compare),
    ] {
        assert_eq!(cfg(&[name]).command, cmd);
    }
}
