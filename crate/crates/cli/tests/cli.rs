use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fleet_dse::catalog::default_catalog;
use fleet_dse::optimize::enumerate_configurations;
use fleet_dse::sat::verify;
use fleet_dse_cli::{design_from_id, resolve_scenario, FRONTIER_COLUMNS};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_fleet-dse"));
    c.env_remove(fleet_dse_cli::CATALOG_ENV);
    c
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn run_into(dir: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["run", "--out", dir.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

const OUTPUTS: [&str; 5] = ["frontier.csv", "scores.txt", "scores.csv", "verification.txt", "best_design.toml"];

#[test]
fn repeated_runs_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["case_study_2", "--methods", "ilp,ga,random", "--seed", "7", "--evals", "1500"];
    assert_eq!(run_into(a.path(), &args).status.code(), Some(0));
    assert_eq!(run_into(b.path(), &args).status.code(), Some(0));
    for f in OUTPUTS {
        let x = std::fs::read(a.path().join(f)).unwrap();
        let y = std::fs::read(b.path().join(f)).unwrap();
        assert!(!x.is_empty(), "{f} empty");
        assert_eq!(x, y, "{f} differs");
    }
    assert!(a.path().join("timing.txt").exists());
}

#[test]
fn ilp_frontier_rows_are_all_valid_and_reverify() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_into(dir.path(), &["case_study_1", "--methods", "ilp"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let cat = default_catalog();
    let scen = resolve_scenario("case_study_1", &cat).unwrap();
    let configs = enumerate_configurations(&cat, &scen).unwrap();

    let mut reader = csv::Reader::from_path(dir.path().join("frontier.csv")).unwrap();
    assert_eq!(reader.headers().unwrap().iter().collect::<Vec<_>>(), FRONTIER_COLUMNS);
    let mut rows = 0;
    for rec in reader.records() {
        let rec = rec.unwrap();
        rows += 1;
        assert_eq!(&rec[0], "ilp");
        assert_eq!(&rec[10], "true", "sat_valid");
        let design = design_from_id(&rec[1], &configs, &scen).expect("design id resolves");
        assert_eq!(design.totals.total_cost.to_string(), &rec[3]);
        assert_eq!(design.totals.coverage_m2.to_string(), &rec[6]);
        assert!(verify(&design, &scen).unwrap().valid);
    }
    assert!(rows > 0);

    let verification = std::fs::read_to_string(dir.path().join("verification.txt")).unwrap();
    let ilp: Vec<usize> = verification
        .lines()
        .find(|l| l.starts_with("ilp "))
        .unwrap()
        .split_whitespace()
        .skip(1)
        .map(|n| n.parse().unwrap())
        .collect();
    assert_eq!(ilp, vec![rows, rows, 0]);
}

#[test]
fn every_method_appears_in_reports() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_into(dir.path(), &["--scenario", "case_study_1", "--evals", "800", "--grid", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let verification = std::fs::read_to_string(dir.path().join("verification.txt")).unwrap();
    for m in fleet_dse_cli::METHODS.iter().chain(&["ilp-sweep"]) {
        let line = verification.lines().find(|l| l.split_whitespace().next() == Some(m)).unwrap_or_else(|| panic!("{m}"));
        let n: Vec<usize> = line.split_whitespace().skip(1).map(|x| x.parse().unwrap()).collect();
        assert_eq!(n[0], n[1] + n[2], "{line}");
    }
    let scores = std::fs::read_to_string(dir.path().join("scores.txt")).unwrap();
    assert!(scores.contains("bayesian-opt") && scores.contains("N/A"));
    assert!(!scores.contains("ilp-sweep"));
    let csv = std::fs::read_to_string(dir.path().join("scores.csv")).unwrap();
    // header, seven methods, two placeholders
    assert_eq!(csv.lines().count(), 10);
}

#[test]
fn best_design_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run_into(dir.path(), &["case_study_2", "--methods", "ilp"]).status.code(), Some(0));
    let best = dir.path().join("best_design.toml");
    let o = run(&["verify", best.to_str().unwrap(), "--scenario", "case_study_2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("VALID"));
}

#[test]
fn missing_catalog_names_the_path() {
    let o = run(&["--catalog", "/no/such/catalog.toml", "run", "case_study_1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("/no/such/catalog.toml"), "{}", stderr(&o));
}

#[test]
fn catalog_from_environment() {
    let o = bin()
        .env(fleet_dse_cli::CATALOG_ENV, fixture("prototype_catalog.toml"))
        .args(["catalog", "check"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("prototype_catalog.toml: valid"));
}

#[test]
fn input_errors_exit_two() {
    for args in [
        vec!["run", "no_such_scenario"],
        vec!["run", "case_study_1", "--methods", "ilp,annealing"],
        vec!["run", "case_study_1", "--weights", "1,-1,0"],
        vec!["run", "case_study_1", "--grid", "1"],
        vec!["run", "case_study_1", "--objective", "sideways"],
        vec!["verify", "/no/such/design.toml", "--scenario", "case_study_1"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn infeasible_scenario_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let scen = dir.path().join("tiny.toml");
    std::fs::write(&scen, "budget = 500.00\nfarm_size_m2 = 40469\ncrop = \"tree\"\napplications = [\"autonomous_picking\"]\n")
        .unwrap();
    let o = run_into(&dir.path().join("out"), &[scen.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    assert!(stderr(&o).contains("no feasible fleet"));
}

#[test]
fn verify_exit_codes_follow_the_verdict() {
    let valid = run(&["verify", fixture("cs1_valid.toml").to_str().unwrap(), "--scenario", "case_study_1"]);
    assert_eq!(valid.status.code(), Some(0));
    let over = run(&["verify", fixture("cs1_over_budget.toml").to_str().unwrap(), "--scenario", "case_study_1"]);
    assert_eq!(over.status.code(), Some(1));
    assert!(stdout(&over).contains("failed: budget"));
    let bad = run(&["verify", fixture("malformed.toml").to_str().unwrap(), "--scenario", "case_study_1"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).contains("malformed.toml:3"), "{}", stderr(&bad));
}

#[test]
fn verify_writes_dimacs() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("f.cnf");
    let o = run(&[
        "verify",
        fixture("cs1_valid.toml").to_str().unwrap(),
        "--scenario",
        "case_study_1",
        "--dimacs",
        cnf.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(cnf).unwrap();
    let formula = fleet_dse::sat::parse_dimacs(&text).unwrap();
    assert!(fleet_dse::sat::dpll_solve(&formula).0.is_sat());
}

fn explain_prototype(scenario: &str) -> Output {
    run(&[
        "--catalog",
        fixture("prototype_catalog.toml").to_str().unwrap(),
        "explain",
        fixture("prototype_rover.toml").to_str().unwrap(),
        "--scenario",
        fixture(scenario).to_str().unwrap(),
    ])
}

#[test]
fn explain_itemizes_the_prototype_rover() {
    let o = explain_prototype("prototype_scenario.toml");
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    // Line items (everything of the form `q x each = amount`) up to the unit total.
    let mut cents = 0i64;
    for line in text.lines().take_while(|l| !l.trim_start().starts_with("unit cost")) {
        if let Some((_, amount)) = line.rsplit_once(" = ") {
            cents += fleet_dse::Money::from_decimal(amount.trim().parse().unwrap()).unwrap().cents();
        }
    }
    assert_eq!(cents, 344956, "{text}");
    for part in ["chassis", "motors", "battery", "tires", "compute", "comm", "edge server"] {
        assert!(text.contains(part), "missing {part}");
    }
    assert!(text.contains("unit cost") && text.contains("3449.56"));
}

#[test]
fn explain_flags_binding_and_violations() {
    let tight = stdout(&explain_prototype("prototype_tight.toml"));
    assert!(tight.contains("budget slack 0.00 (binding)"), "{tight}");

    let o = run(&["explain", fixture("cs1_over_budget.toml").to_str().unwrap(), "--scenario", "case_study_1"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("violations:") && text.contains("exceeds budget"), "{text}");
}
