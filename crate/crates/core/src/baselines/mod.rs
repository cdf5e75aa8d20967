//! Metaheuristic baselines over the same integer space and evaluation as the
//! exact optimizer. Infeasible candidates are scored by the penalized
//! objective, so trajectories may cross infeasible regions; every emitted
//! design carries its feasibility and SAT verdicts.

mod discrete;
mod ga;
mod lengler;
mod portfolio;
mod random;
mod sa;

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use discrete::discrete_search;
pub use ga::genetic_algorithm;
pub use lengler::{mutation_count, one_plus_one_lengler};
pub use portfolio::{portfolio, portfolio_members};
pub use random::random_search;
pub use sa::simulated_annealing;

use crate::constraints::feasible;
use crate::fleet::FleetDesign;
use crate::optimize::{Evaluation, SearchSpace};
use crate::sat::verify;

/// Evaluations per run unless overridden.
pub const DEFAULT_EVALUATIONS: usize = 5000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    /// Starting temperature in penalized-objective units; 0 is greedy.
    pub t0: f64,
    /// Geometric cooling factor per step.
    pub cooling: f64,
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule { t0: 0.5, cooling: 0.998 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaParams {
    pub population: usize,
    /// Generations after the initial one; `None` runs until the evaluation
    /// budget is spent.
    pub generations: Option<usize>,
    pub crossover: f64,
    /// Per-gene mutation probability; `None` means one over the dimension.
    pub mutation: Option<f64>,
}

impl Default for GaParams {
    fn default() -> Self {
        GaParams { population: 40, generations: None, crossover: 0.9, mutation: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaselineParams {
    pub evaluations: usize,
    pub pool_limit: usize,
    pub schedule: Schedule,
    pub ga: GaParams,
}

impl Default for BaselineParams {
    fn default() -> Self {
        BaselineParams { evaluations: DEFAULT_EVALUATIONS, pool_limit: 20, schedule: Schedule::default(), ga: GaParams::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaselineMember {
    pub design: FleetDesign,
    pub x: Vec<u32>,
    pub objective: i128,
    pub penalized: f64,
    /// Budget, coverage and structural rules all hold.
    pub feasible: bool,
    pub sat_valid: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaselineRun {
    pub optimizer_name: String,
    pub seed: u64,
    pub evaluation_budget: usize,
    pub evaluations: usize,
    pub pool: Vec<BaselineMember>,
    pub wall_time: Duration,
}

impl BaselineRun {
    pub fn designs(&self) -> Vec<FleetDesign> {
        self.pool.iter().map(|m| m.design.clone()).collect()
    }

    /// Best penalized value among feasible members.
    pub fn best_feasible(&self) -> Option<&BaselineMember> {
        self.pool.iter().find(|m| m.feasible)
    }
}

/// Feasible first, then lower penalized objective.
fn rank(a: &Evaluation, b: &Evaluation) -> Ordering {
    b.feasible.cmp(&a.feasible).then(a.penalized.total_cmp(&b.penalized))
}

/// Counts evaluations and keeps the best distinct vectors seen.
pub(crate) struct Tracker<'a> {
    pub space: &'a SearchSpace,
    budget: usize,
    limit: usize,
    used: usize,
    pool: Vec<(Vec<u32>, Evaluation)>,
}

impl<'a> Tracker<'a> {
    pub fn new(space: &'a SearchSpace, budget: usize, limit: usize) -> Self {
        Tracker { space, budget, limit, used: 0, pool: Vec::new() }
    }

    pub fn exhausted(&self) -> bool {
        self.used >= self.budget
    }

    /// Evaluates `x`; `None` once the budget is spent.
    pub fn eval(&mut self, x: &[u32]) -> Option<Evaluation> {
        if self.exhausted() {
            return None;
        }
        self.used += 1;
        let e = self.space.evaluate(x);
        self.offer(x, e);
        Some(e)
    }

    fn offer(&mut self, x: &[u32], e: Evaluation) {
        if self.pool.iter().any(|(y, _)| y == x) {
            return;
        }
        let at = self.pool.partition_point(|(_, p)| rank(p, &e) != Ordering::Greater);
        if at < self.limit {
            self.pool.insert(at, (x.to_vec(), e));
            self.pool.truncate(self.limit);
        }
    }

    pub fn finish(self, name: &str, seed: u64, started: Instant) -> BaselineRun {
        let space = self.space;
        let pool = self.pool.into_par_iter().map(|(x, e)| member(space, x, e)).collect();
        BaselineRun { optimizer_name: name.to_string(), seed, evaluation_budget: self.budget, evaluations: self.used, pool, wall_time: started.elapsed() }
    }
}

fn member(space: &SearchSpace, x: Vec<u32>, e: Evaluation) -> BaselineMember {
    let design = space.design(&x);
    let feasible = feasible(&design, &space.scenario).ok();
    let sat_valid = verify(&design, &space.scenario).map(|v| v.valid).unwrap_or(false);
    BaselineMember { design, x, objective: e.objective, penalized: e.penalized, feasible, sat_valid }
}

/// Merges runs into one pool under the same ranking, keeping the first
/// occurrence of each vector.
pub(crate) fn merge(runs: &[BaselineRun], limit: usize) -> Vec<BaselineMember> {
    let mut all: Vec<&BaselineMember> = Vec::new();
    for m in runs.iter().flat_map(|r| &r.pool) {
        if !all.iter().any(|o| o.x == m.x) {
            all.push(m);
        }
    }
    all.sort_by(|a, b| b.feasible.cmp(&a.feasible).then(a.penalized.total_cmp(&b.penalized)));
    all.into_iter().take(limit).cloned().collect()
}

pub(crate) fn random_vector<R: Rng>(rng: &mut R, bounds: &[u32]) -> Vec<u32> {
    bounds.iter().map(|&ub| rng.gen_range(0..=ub)).collect()
}

/// A different value in `0..=ub`, or `v` itself when `ub == 0`.
pub(crate) fn other_value<R: Rng>(rng: &mut R, v: u32, ub: u32) -> u32 {
    if ub == 0 {
        return v;
    }
    let r = rng.gen_range(0..ub);
    if r >= v {
        r + 1
    } else {
        r
    }
}

/// Configurations that differ from each other in exactly one component.
pub(crate) fn option_neighbors(space: &SearchSpace) -> Vec<Vec<usize>> {
    let parts: Vec<Vec<&str>> = space.configs.iter().map(|c| c.id.split('+').collect()).collect();
    (0..parts.len())
        .map(|i| {
            (0..parts.len())
                .filter(|&j| {
                    j != i && parts[i].len() == parts[j].len() && parts[i].iter().zip(&parts[j]).filter(|(a, b)| a != b).count() == 1
                })
                .collect()
        })
        .collect()
}

/// The baselines this crate implements, by command-line name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Baseline {
    SimulatedAnnealing,
    Genetic,
    Random,
    Discrete,
    Lengler,
    Portfolio,
}

impl Baseline {
    pub const ALL: [Baseline; 6] = [Baseline::SimulatedAnnealing, Baseline::Genetic, Baseline::Random, Baseline::Discrete, Baseline::Lengler, Baseline::Portfolio];

    pub fn name(self) -> &'static str {
        match self {
            Baseline::SimulatedAnnealing => "sa",
            Baseline::Genetic => "ga",
            Baseline::Random => "random",
            Baseline::Discrete => "discrete",
            Baseline::Lengler => "lengler",
            Baseline::Portfolio => "portfolio",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|b| b.name() == name)
    }

    pub fn run(self, space: &SearchSpace, seed: u64, params: &BaselineParams) -> BaselineRun {
        match self {
            Baseline::SimulatedAnnealing => simulated_annealing(space, seed, params),
            Baseline::Genetic => genetic_algorithm(space, seed, params),
            Baseline::Random => random_search(space, seed, params),
            Baseline::Discrete => discrete_search(space, params),
            Baseline::Lengler => one_plus_one_lengler(space, seed, params),
            Baseline::Portfolio => portfolio(space, seed, params),
        }
    }
}
