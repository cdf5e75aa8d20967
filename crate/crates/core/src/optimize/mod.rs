//! Exact fleet selection: enumeration, the integer program, and the weight
//! sweep.

pub mod bnb;
pub mod enumerate;
pub mod roc;
pub mod space;

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use bnb::{branch_and_bound, solve_with_cuts, ExplorationLog, Ranked};
pub use enumerate::{enumerate_configurations, EnumerateError};
pub use roc::{roc_centroid, roc_weights, Criterion, ObjectiveWeights, WeightError};
pub use space::{
    objective_coefficients, unit_bound, Evaluation, IlpItem, IlpProblem, NormalizedMetrics, ObjectiveMode, SearchSpace, OBJECTIVE_SCALE, PENALTY,
    QUANTUM,
};

use crate::constraints::{feasible, Rule};
use crate::fleet::{Configuration, FleetDesign};
use crate::money::Money;
use crate::sat::{verify, EncodeError};
use crate::scenario::Scenario;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    /// Distinct alternatives kept per solve.
    pub pool_limit: usize,
    /// Units allowed beyond the count that alone covers the farm.
    pub bound_margin: u32,
    pub mode: ObjectiveMode,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { pool_limit: 20, bound_margin: 2, mode: ObjectiveMode::Literal }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoolEntry {
    pub design: FleetDesign,
    /// Unit count per enumerated configuration.
    pub x: Vec<u32>,
    /// Integer objective, in units of `1 / OBJECTIVE_SCALE`.
    pub objective: i128,
    pub value: f64,
    pub weights: ObjectiveWeights,
    pub sat_valid: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SolvePool {
    pub solutions: Vec<PoolEntry>,
    pub log: ExplorationLog,
    pub warnings: Vec<String>,
}

impl SolvePool {
    pub fn designs(&self) -> Vec<FleetDesign> {
        self.solutions.iter().map(|e| e.design.clone()).collect()
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("no configurations to choose from")]
    NoConfigurations,
    #[error("no feasible fleet: {}", .diagnostics.join("; "))]
    Infeasible { diagnostics: Vec<String> },
    #[error("grid resolution must be at least 2, got {0}")]
    Resolution(usize),
    #[error(transparent)]
    Encode(#[from] EncodeError),
}

/// Explains why no vector satisfies both budget and coverage.
fn diagnose(space: &SearchSpace) -> Vec<String> {
    let p = &space.problem;
    let mut out = Vec::new();
    let fixed = space.scenario.fixed_cost();
    if p.budget < 0 {
        out.push(format!("{}: shared costs {} exceed budget {}", Rule::Budget, fixed, space.scenario.budget));
        return out;
    }
    let reach: i128 = p.items.iter().map(|it| i128::from(it.area) * i128::from(it.ub)).sum();
    if reach < i128::from(p.demand) {
        out.push(format!("{}: at most {reach} m2 reachable within unit bounds, farm is {} m2", Rule::Coverage, p.demand));
    }
    // Cheapest cost per m2 times the farm, a lower bound on covering cost.
    if let Some(it) = p.items.iter().filter(|it| it.area > 0).min_by(|a, b| (i128::from(a.cost) * i128::from(b.area)).cmp(&(i128::from(b.cost) * i128::from(a.area)))) {
        let need = (i128::from(it.cost) * i128::from(p.demand) + i128::from(it.area) - 1) / i128::from(it.area);
        if need > i128::from(p.budget) {
            out.push(format!(
                "{}: covering {} m2 costs at least {} but {} remains after shared costs",
                Rule::Budget,
                p.demand,
                Money::from_cents(need as i64),
                Money::from_cents(p.budget)
            ));
        }
    }
    if out.is_empty() {
        out.push(format!("{} and {} cannot hold together with integer unit counts", Rule::Budget, Rule::Coverage));
    }
    out
}

/// Exact minimum of the weighted objective subject to budget and coverage,
/// plus the next best distinct alternatives. Every member is checked against
/// the constraint rules and the SAT verifier.
pub fn solve(configs: &[Configuration], scen: &Scenario, weights: ObjectiveWeights, opts: &SolveOptions) -> Result<SolvePool, SolveError> {
    if configs.is_empty() {
        return Err(SolveError::NoConfigurations);
    }
    let space = SearchSpace::new(configs.to_vec(), scen, weights, opts.mode, opts.bound_margin);
    let (ranked, log) = branch_and_bound(&space.problem, opts.pool_limit, &HashSet::new());
    if ranked.is_empty() {
        return Err(SolveError::Infeasible { diagnostics: diagnose(&space) });
    }
    let mut pool = SolvePool { solutions: Vec::with_capacity(ranked.len()), log, warnings: Vec::new() };
    for r in ranked {
        let design = space.design(&r.x);
        let rules_ok = feasible(&design, scen).ok();
        let verdict = verify(&design, scen)?;
        if !rules_ok || !verdict.valid {
            pool.warnings.push(format!("dropped {design}: failed verification"));
            continue;
        }
        pool.solutions.push(PoolEntry { design, x: r.x, objective: r.objective, value: SearchSpace::objective_value(r.objective), weights, sat_valid: true });
    }
    Ok(pool)
}

/// Points of the simplex lattice with `resolution` values per axis, starting
/// at the pure-cost corner.
pub fn simplex_grid(resolution: usize) -> Vec<ObjectiveWeights> {
    let n = resolution.saturating_sub(1).max(1);
    let mut out = Vec::with_capacity((n + 1) * (n + 2) / 2);
    for i in (0..=n).rev() {
        for j in 0..=(n - i) {
            let k = n - i - j;
            let f = |c: usize| c as f64 / n as f64;
            out.push(ObjectiveWeights { alpha: f(i), beta: f(j), gamma: f(k) });
        }
    }
    out
}

/// Solves every grid point in parallel and merges the pools in grid order,
/// keeping the first occurrence of each distinct fleet.
pub fn weight_sweep(configs: &[Configuration], scen: &Scenario, resolution: usize, opts: &SolveOptions) -> Result<SolvePool, SolveError> {
    if resolution < 2 {
        return Err(SolveError::Resolution(resolution));
    }
    let grid = simplex_grid(resolution);
    let results: Vec<Result<SolvePool, SolveError>> = grid.par_iter().map(|w| solve(configs, scen, *w, opts)).collect();

    let mut merged = SolvePool::default();
    let mut seen: HashMap<Vec<(String, u32)>, ()> = HashMap::new();
    let mut first_error = None;
    for (w, res) in grid.iter().zip(results) {
        match res {
            Ok(pool) => {
                merged.log.absorb(&pool.log);
                merged.warnings.extend(pool.warnings);
                for e in pool.solutions {
                    if seen.insert(e.design.key(), ()).is_none() {
                        merged.solutions.push(e);
                    }
                }
            }
            Err(e) => {
                merged.warnings.push(format!("weights {w}: {e}"));
                first_error.get_or_insert(e);
            }
        }
    }
    match first_error {
        Some(e) if merged.solutions.is_empty() => Err(e),
        _ => Ok(merged),
    }
}
