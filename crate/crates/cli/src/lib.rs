//! Command-line front end: runs scenarios through the exact optimizer and
//! the baselines, verifies and scores the results, and writes plot-ready
//! tables.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use fleet_dse::baselines::{Baseline, BaselineParams, GaParams, Schedule, DEFAULT_EVALUATIONS};
use fleet_dse::catalog::{default_catalog, load_catalog, CatalogError};
use fleet_dse::constraints::{check_budget, check_coverage, feasible};
use fleet_dse::design_file::{load_design, DesignFile, DesignFileError};
use fleet_dse::optimize::{
    enumerate_configurations, solve, weight_sweep, EnumerateError, ObjectiveMode, ObjectiveWeights, SearchSpace, SolveError,
    SolveOptions, WeightError,
};
use fleet_dse::sat::{encode_design, export_dimacs, verify, EncodeError};
use fleet_dse::scenario::{bundled_scenario, load_scenario, ScenarioError, ScenarioFile};
use fleet_dse::score::{render_report, MethodPool, ScoreReport, ScoreScale};
use fleet_dse::{ComponentCatalog, Configuration, FleetDesign, FleetLine, Money, Scenario};

/// Environment variable naming the default catalog file.
pub const CATALOG_ENV: &str = "FLEET_DSE_CATALOG";

/// Method names accepted by `--methods`, in report order.
pub const METHODS: [&str; 7] = ["ilp", "sa", "ga", "random", "discrete", "lengler", "portfolio"];

#[derive(Debug, Parser)]
#[command(name = "fleet-dse", version, about = "Cost-aware design space exploration for drone and rover fleets")]
pub struct Cli {
    /// Component catalog (TOML). Defaults to the bundled synthetic catalog.
    #[arg(long, global = true, env = CATALOG_ENV)]
    pub catalog: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimize a scenario with the selected methods and write reports.
    Run(RunArgs),
    /// Check a design file against a scenario's budget and coverage.
    Verify(VerifyArgs),
    /// Itemized cost breakdown and constraint slack of a design file.
    Explain(ExplainArgs),
    /// Catalog maintenance.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Debug, Subcommand)]
pub enum CatalogCommand {
    /// Validate the catalog and list what each bundled scenario can build.
    Check,
}

#[derive(Debug, Args)]
pub struct ScenarioArg {
    /// Scenario file, or the name of a bundled scenario.
    #[arg(long = "scenario", value_name = "SCENARIO")]
    pub scenario_flag: Option<String>,
    #[arg(value_name = "SCENARIO", conflicts_with = "scenario_flag")]
    pub scenario: Option<String>,
}

impl ScenarioArg {
    fn get(&self) -> Result<&str, CliError> {
        self.scenario_flag
            .as_deref()
            .or(self.scenario.as_deref())
            .ok_or_else(|| CliError::Input("no scenario given".to_string()))
    }
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub scenario: ScenarioArg,
    /// Comma-separated methods, or `all`. The exact optimizer always runs.
    #[arg(long, visible_alias = "optimizer", default_value = "all")]
    pub methods: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Objective weights `alpha,beta,gamma`; rank-order centroid by default.
    #[arg(long)]
    pub weights: Option<String>,
    /// Also sweep the weight simplex at this resolution.
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    #[arg(long, default_value = "literal")]
    pub objective: ObjectiveMode,
    /// Evaluation budget per baseline.
    #[arg(long, default_value_t = DEFAULT_EVALUATIONS)]
    pub evals: usize,
    /// Alternatives kept per method.
    #[arg(long, default_value_t = 20)]
    pub pool_limit: usize,
    #[arg(long, default_value_t = 2)]
    pub bound_margin: u32,
    #[arg(long, default_value_t = Schedule::default().t0)]
    pub sa_t0: f64,
    #[arg(long, default_value_t = Schedule::default().cooling)]
    pub sa_cooling: f64,
    #[arg(long, default_value_t = GaParams::default().population)]
    pub ga_population: usize,
    #[arg(long)]
    pub ga_generations: Option<usize>,
    #[arg(long, default_value_t = GaParams::default().crossover)]
    pub ga_crossover: f64,
    #[arg(long)]
    pub ga_mutation: Option<f64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Design file (TOML).
    pub design: PathBuf,
    #[command(flatten)]
    pub scenario: ScenarioArg,
    /// Also write the formula in DIMACS CNF.
    #[arg(long)]
    pub dimacs: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExplainArgs {
    pub design: PathBuf,
    #[command(flatten)]
    pub scenario: ScenarioArg,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    Design(#[from] DesignFileError),
    #[error(transparent)]
    Weights(#[from] WeightError),
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error(transparent)]
    Encode(#[from] EncodeError),
    #[error("{0}")]
    Infeasible(SolveError),
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 1 for an infeasible problem, 2 for bad input or I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Infeasible(_) => 1,
            _ => 2,
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Infeasible { .. } => CliError::Infeasible(e),
            SolveError::Encode(e) => CliError::Encode(e),
            other => CliError::Input(other.to_string()),
        }
    }
}

/// Outcome of a subcommand: text for stdout and the exit status.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let catalog = resolve_catalog(cli.catalog.as_deref())?;
    match &cli.command {
        Command::Run(args) => run(&catalog, args),
        Command::Verify(args) => verify_file(&catalog, args),
        Command::Explain(args) => explain(&catalog, args),
        Command::Catalog(CatalogCommand::Check) => catalog_check(&catalog, cli.catalog.as_deref()),
    }
}

pub fn resolve_catalog(path: Option<&Path>) -> Result<ComponentCatalog, CliError> {
    match path {
        Some(p) => Ok(load_catalog(p)?),
        None => Ok(default_catalog()),
    }
}

/// An existing file wins over a bundled name.
pub fn resolve_scenario(arg: &str, catalog: &ComponentCatalog) -> Result<Scenario, CliError> {
    let path = Path::new(arg);
    let file: ScenarioFile = if path.exists() {
        let mut f = load_scenario(path)?;
        if f.name.is_none() {
            f.name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
        }
        f
    } else if let Some(f) = bundled_scenario(arg) {
        f
    } else {
        return Err(CliError::Input(format!("scenario `{arg}` is neither a file nor a bundled scenario (case_study_1, case_study_2)")));
    };
    Ok(Scenario::resolve(&file, catalog)?)
}

fn parse_methods(text: &str) -> Result<Vec<&'static str>, CliError> {
    let mut wanted = vec!["ilp"];
    for m in text.split(',').map(str::trim).filter(|m| !m.is_empty()) {
        if m == "all" {
            wanted.extend(METHODS);
            continue;
        }
        let known = METHODS.iter().find(|k| **k == m).ok_or_else(|| {
            CliError::Input(format!("unknown method `{m}`; expected one of {} or all", METHODS.join(", ")))
        })?;
        wanted.push(known);
    }
    Ok(METHODS.into_iter().filter(|m| wanted.contains(m)).collect())
}

/// One row of `frontier.csv`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvaluationRecord {
    pub method: String,
    pub design_id: String,
    pub unit_cost: String,
    pub total_cost: String,
    pub unit_payload_kg: String,
    pub total_payload_kg: String,
    pub total_coverage_m2: i64,
    pub runtime_hours: String,
    pub units: u32,
    pub feasible: bool,
    pub sat_valid: bool,
    pub alpha: String,
    pub beta: String,
    pub gamma: String,
}

/// Column order of `frontier.csv`.
pub const FRONTIER_COLUMNS: [&str; 14] = [
    "method",
    "design_id",
    "unit_cost",
    "total_cost",
    "unit_payload_kg",
    "total_payload_kg",
    "total_coverage_m2",
    "runtime_hours",
    "units",
    "feasible",
    "sat_valid",
    "alpha",
    "beta",
    "gamma",
];

/// Stable textual key of a fleet: `units*config` terms joined by ` & `.
pub fn design_id(d: &FleetDesign) -> String {
    d.key().iter().map(|(id, n)| format!("{n}*{id}")).collect::<Vec<_>>().join(" & ")
}

/// Rebuilds a fleet from a [`design_id`] against enumerated configurations.
/// Shared comm and edge choices come from the scenario.
pub fn design_from_id(id: &str, configs: &[Configuration], scen: &Scenario) -> Option<FleetDesign> {
    let mut lines = Vec::new();
    for term in id.split(" & ") {
        let (n, cfg) = term.split_once('*')?;
        let units: u32 = n.parse().ok()?;
        let config = configs.iter().find(|c| c.id == cfg)?.clone();
        lines.push(FleetLine { config, units, max_units: units });
    }
    Some(FleetDesign::new(lines, scen.edge_server.clone(), scen.comm.clone()))
}

pub fn record(method: &str, d: &FleetDesign, scen: &Scenario, sat_valid: bool, w: &ObjectiveWeights) -> EvaluationRecord {
    let w = w.normalized();
    EvaluationRecord {
        method: method.to_string(),
        design_id: design_id(d),
        unit_cost: d.mean_unit_cost().to_string(),
        total_cost: d.totals.total_cost.to_string(),
        unit_payload_kg: format!("{:.4}", d.mean_unit_payload_kg()),
        total_payload_kg: format!("{:.4}", d.totals.payload_kg),
        total_coverage_m2: d.totals.coverage_m2,
        runtime_hours: format!("{:.4}", d.runtime_hours()),
        units: d.totals.units,
        feasible: feasible(d, scen).ok(),
        sat_valid,
        alpha: format!("{:.4}", w.alpha),
        beta: format!("{:.4}", w.beta),
        gamma: format!("{:.4}", w.gamma),
    }
}

struct MethodResult {
    name: String,
    designs: Vec<FleetDesign>,
    sat_valid: Vec<bool>,
    /// Weights each design was found under.
    weights: Vec<ObjectiveWeights>,
    evaluations: Option<usize>,
    wall: Duration,
    scored: bool,
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Write { path: path.display().to_string(), source })
}

fn run(catalog: &ComponentCatalog, args: &RunArgs) -> Result<Outcome, CliError> {
    let scen = resolve_scenario(args.scenario.get()?, catalog)?;
    let methods = parse_methods(&args.methods)?;
    let weights = match &args.weights {
        Some(text) => ObjectiveWeights::parse(text)?,
        None => ObjectiveWeights::roc_default(),
    };
    if let Some(g) = args.grid {
        if g < 2 {
            return Err(CliError::Input(format!("--grid must be at least 2, got {g}")));
        }
    }
    let configs = enumerate_configurations(catalog, &scen)?;
    let opts = SolveOptions { pool_limit: args.pool_limit, bound_margin: args.bound_margin, mode: args.objective };
    let params = BaselineParams {
        evaluations: args.evals,
        pool_limit: args.pool_limit,
        schedule: Schedule { t0: args.sa_t0, cooling: args.sa_cooling },
        ga: GaParams {
            population: args.ga_population,
            generations: args.ga_generations,
            crossover: args.ga_crossover,
            mutation: args.ga_mutation,
        },
    };

    let started = Instant::now();
    let ilp = solve(&configs, &scen, weights, &opts)?;
    let mut results = vec![MethodResult {
        name: "ilp".to_string(),
        designs: ilp.designs(),
        sat_valid: ilp.solutions.iter().map(|e| e.sat_valid).collect(),
        weights: ilp.solutions.iter().map(|e| e.weights).collect(),
        evaluations: None,
        wall: started.elapsed(),
        scored: true,
    }];
    let best = ilp.solutions[0].design.clone();

    if let Some(resolution) = args.grid {
        let started = Instant::now();
        let sweep = weight_sweep(&configs, &scen, resolution, &opts)?;
        results.push(MethodResult {
            name: "ilp-sweep".to_string(),
            designs: sweep.designs(),
            sat_valid: sweep.solutions.iter().map(|e| e.sat_valid).collect(),
            weights: sweep.solutions.iter().map(|e| e.weights).collect(),
            evaluations: None,
            wall: started.elapsed(),
            scored: false,
        });
    }

    let space = SearchSpace::new(configs.clone(), &scen, weights, args.objective, args.bound_margin);
    let baselines: Vec<Baseline> = methods.iter().filter_map(|m| Baseline::from_name(m)).collect();
    let runs: Vec<_> = baselines.par_iter().map(|b| b.run(&space, args.seed, &params)).collect();
    for r in runs {
        results.push(MethodResult {
            name: r.optimizer_name.clone(),
            sat_valid: r.pool.iter().map(|m| m.sat_valid).collect(),
            weights: vec![weights; r.pool.len()],
            designs: r.designs(),
            evaluations: Some(r.evaluations),
            wall: r.wall_time,
            scored: true,
        });
    }

    let scale = ScoreScale::from_configs(&configs, &scen);
    let pools: Vec<MethodPool> = results
        .iter()
        .filter(|r| r.scored)
        .map(|r| MethodPool { method: r.name.clone(), designs: r.designs.clone(), sat_valid: r.sat_valid.clone() })
        .collect();
    let report = render_report(&pools, &scale, &weights);

    let out = &args.out;
    std::fs::create_dir_all(out).map_err(|source| CliError::Write { path: out.display().to_string(), source })?;
    write(&out.join("frontier.csv"), &frontier_csv(&results, &scen)?)?;
    write(&out.join("scores.txt"), &report.to_text())?;
    write(&out.join("scores.csv"), &scores_csv(&report)?)?;
    write(&out.join("verification.txt"), &verification_text(&results))?;
    write(&out.join("timing.txt"), &timing_text(&results))?;
    write(&out.join("best_design.toml"), &DesignFile::from_design(&best).to_toml())?;

    let mut stdout = format!("scenario {}: {} configurations\n", scen.name, configs.len());
    let _ = writeln!(stdout, "best fleet: {best}");
    stdout.push_str(&report.to_text());
    let _ = writeln!(stdout, "wrote {}", out.display());
    Ok(Outcome { stdout, code: 0 })
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Write { path: "csv".to_string(), source: std::io::Error::other(e) }
}

fn frontier_csv(results: &[MethodResult], scen: &Scenario) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in results {
        for ((d, &valid), wt) in r.designs.iter().zip(&r.sat_valid).zip(&r.weights) {
            w.serialize(record(&r.name, d, scen, valid, wt)).map_err(csv_error)?;
        }
    }
    if results.iter().all(|r| r.designs.is_empty()) {
        w.write_record(FRONTIER_COLUMNS).map_err(csv_error)?;
    }
    let bytes = w.into_inner().map_err(|e| csv_error(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

#[derive(Serialize)]
struct ScoreCsvRow<'a> {
    method: &'a str,
    score: String,
    designs: usize,
    valid: usize,
    invalid: usize,
    mean_total_cost: String,
    mean_coverage_m2: String,
    mean_payload_kg: String,
    alpha: String,
    beta: String,
    gamma: String,
}

fn scores_csv(report: &ScoreReport) -> Result<String, CliError> {
    let w8 = report.weights.normalized();
    let na = || "N/A".to_string();
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &report.rows {
        w.serialize(ScoreCsvRow {
            method: &r.method,
            score: r.score.map_or_else(na, |s| format!("{s:.6}")),
            designs: r.designs,
            valid: r.valid,
            invalid: r.invalid,
            mean_total_cost: r.mean_total_cost.map_or_else(na, |c| c.to_string()),
            mean_coverage_m2: r.mean_coverage_m2.map_or_else(na, |a| format!("{a:.0}")),
            mean_payload_kg: r.mean_payload_kg.map_or_else(na, |p| format!("{p:.4}")),
            alpha: format!("{:.4}", w8.alpha),
            beta: format!("{:.4}", w8.beta),
            gamma: format!("{:.4}", w8.gamma),
        })
        .map_err(csv_error)?;
    }
    let bytes = w.into_inner().map_err(|e| csv_error(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

fn verification_text(results: &[MethodResult]) -> String {
    let mut out = format!("{:<12} {:>6} {:>6} {:>8}\n", "method", "total", "valid", "invalid");
    for r in results {
        let valid = r.sat_valid.iter().filter(|v| **v).count();
        let _ = writeln!(out, "{:<12} {:>6} {:>6} {:>8}", r.name, r.sat_valid.len(), valid, r.sat_valid.len() - valid);
    }
    out
}

fn timing_text(results: &[MethodResult]) -> String {
    let mut out = format!("{:<12} {:>12} {:>12}\n", "method", "seconds", "evaluations");
    for r in results {
        let evals = r.evaluations.map_or_else(|| "-".to_string(), |e| e.to_string());
        let _ = writeln!(out, "{:<12} {:>12.4} {:>12}", r.name, r.wall.as_secs_f64(), evals);
    }
    out
}

fn load_design_for(catalog: &ComponentCatalog, path: &Path, scen: &Scenario) -> Result<FleetDesign, CliError> {
    Ok(load_design(path)?.resolve(catalog, scen)?)
}

fn verify_file(catalog: &ComponentCatalog, args: &VerifyArgs) -> Result<Outcome, CliError> {
    let scen = resolve_scenario(args.scenario.get()?, catalog)?;
    let design = load_design_for(catalog, &args.design, &scen)?;
    let verdict = verify(&design, &scen)?;
    if let Some(path) = &args.dimacs {
        let enc = encode_design(&design, &scen)?;
        export_dimacs(&enc.formula, path).map_err(|source| CliError::Write { path: path.display().to_string(), source })?;
    }
    let budget = check_budget(&design, &scen);
    let coverage = check_coverage(&design, &scen);
    let mut stdout = format!("design: {design}\n");
    let _ = writeln!(stdout, "budget: total {} of {} ({})", design.totals.total_cost, scen.budget, pass(budget.pass));
    let _ = writeln!(stdout, "coverage: {} m2 of {} m2 ({})", design.totals.coverage_m2, scen.farm_size_m2, pass(coverage.pass));
    let _ = writeln!(stdout, "formula: {} variables, {} clauses", verdict.variables, verdict.clauses);
    if verdict.valid {
        stdout.push_str("verdict: VALID\n");
    } else {
        let failed: Vec<&str> = verdict.failed.iter().map(|r| r.as_str()).collect();
        let _ = writeln!(stdout, "verdict: INVALID (failed: {})", failed.join(", "));
    }
    Ok(Outcome { stdout, code: if verdict.valid { 0 } else { 1 } })
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn explain(catalog: &ComponentCatalog, args: &ExplainArgs) -> Result<Outcome, CliError> {
    let scen = resolve_scenario(args.scenario.get()?, catalog)?;
    let design = load_design_for(catalog, &args.design, &scen)?;
    let mut out = String::new();
    let item = |out: &mut String, label: &str, qty: u32, each: Money| {
        let _ = writeln!(out, "    {label:<32} {qty:>3} x {each:>10} = {:>12}", each * qty);
    };
    for (i, line) in design.lines.iter().enumerate() {
        let b = &line.config.build;
        let _ = writeln!(out, "line {}: {} units of {}", i + 1, line.units, line.config.id);
        item(&mut out, &format!("chassis {}", b.chassis.id), 1, b.chassis.cost);
        item(&mut out, &format!("motors {}", b.motor.id), b.motor_count, b.motor.cost);
        item(&mut out, &format!("battery {}", b.battery.id), b.battery_count, b.battery.cost);
        if let Some(t) = &b.tires {
            item(&mut out, &format!("tires {}", t.tire.id), t.count, t.tire.cost);
        }
        item(&mut out, &format!("compute {}", b.compute.id), 1, b.compute.cost);
        for s in &b.sensors {
            item(&mut out, &format!("sensor {}", s.id), 1, s.cost);
        }
        if b.apps_extra_cost != Money::ZERO {
            item(&mut out, "application parts", 1, b.apps_extra_cost);
        }
        let _ = writeln!(out, "    {:<32} {:>31}", "unit cost", line.config.unit_cost().to_string());
        if line.config.line_cost() != line.config.unit_cost() {
            let _ = writeln!(out, "    {:<32} {:>31}", "unit cost with application parts", line.config.line_cost().to_string());
        }
        let _ = writeln!(out, "    {:<32} {:>31}", format!("line total ({} units)", line.units), (line.config.line_cost() * line.units).to_string());
        let _ = writeln!(
            out,
            "    payload {:.2} kg, runtime {:.4} h, coverage {} m2 per unit",
            line.config.payload_kg(),
            line.config.runtime_hours(),
            line.config.area_m2
        );
    }
    if let Some(c) = &design.comm {
        let _ = writeln!(out, "comm {}: {} cells x {} = {}", c.method.id, c.cells, c.method.cost_per_cell, c.cost);
    }
    if let Some(e) = &design.edge_server {
        let _ = writeln!(out, "edge server {}: {}", e.id, e.cost);
    }
    let _ = writeln!(out, "total cost {}", design.totals.total_cost);

    let budget = check_budget(&design, &scen);
    let coverage = check_coverage(&design, &scen);
    let binding = |zero: bool| if zero { " (binding)" } else { "" };
    let _ = writeln!(out, "budget slack {}{}", budget.slack, binding(budget.slack == Money::ZERO));
    let _ = writeln!(out, "coverage surplus {} m2{}", coverage.surplus_m2, binding(coverage.surplus_m2 == 0));
    let feas = feasible(&design, &scen);
    if feas.ok() {
        out.push_str("feasible\n");
    } else {
        out.push_str("violations:\n");
        for v in &feas.violations {
            let _ = writeln!(out, "  {v}");
        }
    }
    Ok(Outcome { stdout: out, code: if feas.ok() { 0 } else { 1 } })
}

fn catalog_check(catalog: &ComponentCatalog, path: Option<&Path>) -> Result<Outcome, CliError> {
    let origin = path.map_or_else(|| "bundled default catalog".to_string(), |p| p.display().to_string());
    catalog.validate(&origin)?;
    let mut out = format!("{origin}: valid\n");
    let _ = writeln!(
        out,
        "  {} chassis, {} motors, {} batteries, {} tires, {} compute units, {} comm methods, {} edge servers, {} sensors",
        catalog.chassis.len(),
        catalog.motors.len(),
        catalog.batteries.len(),
        catalog.tires.len(),
        catalog.compute.len(),
        catalog.comm.len(),
        catalog.edge_servers.len(),
        catalog.sensors.len()
    );
    for name in ["case_study_1", "case_study_2"] {
        let scen = Scenario::resolve(&bundled_scenario(name).expect("bundled"), catalog)?;
        match enumerate_configurations(catalog, &scen) {
            Ok(c) => {
                let _ = writeln!(out, "  {name}: {} configurations", c.len());
            }
            Err(e) => {
                let _ = writeln!(out, "  {name}: {e}");
            }
        }
    }
    Ok(Outcome { stdout: out, code: 0 })
}
