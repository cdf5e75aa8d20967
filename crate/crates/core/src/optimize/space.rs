//! Integer search space shared by the exact optimizer and the baselines.

use serde::{Deserialize, Serialize};

use super::roc::ObjectiveWeights;
use crate::fleet::{Configuration, FleetDesign, FleetLine};
use crate::scenario::Scenario;

/// Fixed-point scale of quantized weights and normalized metrics.
pub const QUANTUM: i64 = 1_000_000;
/// Scale of an objective value: weight quantum times metric quantum.
pub const OBJECTIVE_SCALE: f64 = 1e12;
/// Penalty multiplier on normalized constraint violation.
pub const PENALTY: f64 = 10.0;

/// Sign of the area term.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObjectiveMode {
    /// Area enters with a positive weight, as in the published objective.
    #[default]
    Literal,
    /// Area is rewarded instead.
    FlippedBeta,
}

impl std::str::FromStr for ObjectiveMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "literal" => Ok(ObjectiveMode::Literal),
            "flipped-beta" => Ok(ObjectiveMode::FlippedBeta),
            other => Err(format!("unknown objective mode `{other}` (literal|flipped-beta)")),
        }
    }
}

/// Min–max normalized per-configuration metrics. Constant columns map to 0.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedMetrics {
    pub cost: Vec<f64>,
    pub area: Vec<f64>,
    pub payload: Vec<f64>,
}

fn min_max(values: &[f64]) -> Vec<f64> {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    values.iter().map(|v| if hi > lo { (v - lo) / (hi - lo) } else { 0.0 }).collect()
}

impl NormalizedMetrics {
    pub fn of(configs: &[Configuration]) -> Self {
        let cost: Vec<f64> = configs.iter().map(|c| c.line_cost().cents() as f64).collect();
        let area: Vec<f64> = configs.iter().map(|c| c.area_m2 as f64).collect();
        let payload: Vec<f64> = configs.iter().map(|c| c.payload_kg()).collect();
        NormalizedMetrics { cost: min_max(&cost), area: min_max(&area), payload: min_max(&payload) }
    }
}

fn quantize(x: f64) -> i64 {
    (x * QUANTUM as f64).round() as i64
}

/// Integer objective coefficient per configuration.
pub fn objective_coefficients(norm: &NormalizedMetrics, weights: &ObjectiveWeights, mode: ObjectiveMode) -> Vec<i64> {
    let w = weights.normalized();
    let (a, b, g) = (quantize(w.alpha), quantize(w.beta), quantize(w.gamma));
    let sign = match mode {
        ObjectiveMode::Literal => 1,
        ObjectiveMode::FlippedBeta => -1,
    };
    (0..norm.cost.len())
        .map(|i| a * quantize(norm.cost[i]) + sign * b * quantize(norm.area[i]) - g * quantize(norm.payload[i]))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IlpItem {
    /// Cost per unit in cents.
    pub cost: i64,
    /// Coverage per unit in m².
    pub area: i64,
    pub coef: i64,
    pub ub: u32,
}

/// `min sum coef*x` subject to `sum cost*x <= budget`, `sum area*x >= demand`,
/// `0 <= x <= ub`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IlpProblem {
    pub items: Vec<IlpItem>,
    pub budget: i64,
    pub demand: i64,
}

impl IlpProblem {
    pub fn objective(&self, x: &[u32]) -> i128 {
        self.items.iter().zip(x).map(|(it, &n)| i128::from(it.coef) * i128::from(n)).sum()
    }

    pub fn cost(&self, x: &[u32]) -> i128 {
        self.items.iter().zip(x).map(|(it, &n)| i128::from(it.cost) * i128::from(n)).sum()
    }

    pub fn coverage(&self, x: &[u32]) -> i128 {
        self.items.iter().zip(x).map(|(it, &n)| i128::from(it.area) * i128::from(n)).sum()
    }

    pub fn is_feasible(&self, x: &[u32]) -> bool {
        x.len() == self.items.len()
            && self.items.iter().zip(x).all(|(it, &n)| n <= it.ub)
            && self.cost(x) <= i128::from(self.budget)
            && self.coverage(x) >= i128::from(self.demand)
    }

    /// Number of vectors in the bounded box.
    pub fn box_size(&self) -> f64 {
        self.items.iter().map(|it| f64::from(it.ub) + 1.0).product()
    }
}

/// Largest useful unit count: more than this is dominated.
pub fn unit_bound(budget_cents: i64, line_cost_cents: i64, area_m2: i64, farm_m2: i64, margin: u32) -> u32 {
    let by_budget = if line_cost_cents > 0 { div_ceil(budget_cents.max(0), line_cost_cents) } else { i64::MAX };
    let by_area = if area_m2 > 0 { div_ceil(farm_m2.max(0), area_m2) + i64::from(margin) } else { i64::MAX };
    let b = by_budget.min(by_area);
    if b == i64::MAX {
        0
    } else {
        b.clamp(0, i64::from(u32::MAX)) as u32
    }
}

fn div_ceil(a: i64, b: i64) -> i64 {
    (a + b - 1) / b
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluation {
    pub objective: i128,
    /// Total cost in cents, fixed costs included.
    pub total_cost: i64,
    pub coverage: i64,
    pub feasible: bool,
    /// Objective plus the violation penalty, in objective units.
    pub penalized: f64,
}

/// Configurations of one scenario under one weighting, as an integer program.
#[derive(Clone, Debug)]
pub struct SearchSpace {
    pub configs: Vec<Configuration>,
    pub scenario: Scenario,
    pub weights: ObjectiveWeights,
    pub mode: ObjectiveMode,
    pub problem: IlpProblem,
}

impl SearchSpace {
    pub fn new(configs: Vec<Configuration>, scenario: &Scenario, weights: ObjectiveWeights, mode: ObjectiveMode, margin: u32) -> Self {
        let norm = NormalizedMetrics::of(&configs);
        let coefs = objective_coefficients(&norm, &weights, mode);
        let budget = scenario.budget.cents();
        let items = configs
            .iter()
            .zip(coefs)
            .map(|(c, coef)| IlpItem {
                cost: c.line_cost().cents(),
                area: c.area_m2,
                coef,
                ub: unit_bound(budget, c.line_cost().cents(), c.area_m2, scenario.farm_size_m2, margin),
            })
            .collect();
        let problem = IlpProblem { items, budget: budget - scenario.fixed_cost().cents(), demand: scenario.farm_size_m2 };
        SearchSpace { configs, scenario: scenario.clone(), weights, mode, problem }
    }

    pub fn dim(&self) -> usize {
        self.configs.len()
    }

    pub fn bounds(&self) -> Vec<u32> {
        self.problem.items.iter().map(|it| it.ub).collect()
    }

    pub fn evaluate(&self, x: &[u32]) -> Evaluation {
        let p = &self.problem;
        let objective = p.objective(x);
        let vehicle_cost = p.cost(x);
        let coverage = p.coverage(x);
        let fixed = i128::from(self.scenario.fixed_cost().cents());
        let total_cost = vehicle_cost + fixed;
        let budget = i128::from(self.scenario.budget.cents());
        let demand = i128::from(p.demand);
        let over = (total_cost - budget).max(0) as f64 / budget.max(1) as f64;
        let short = (demand - coverage).max(0) as f64 / demand.max(1) as f64;
        let feasible = over == 0.0 && short == 0.0;
        Evaluation {
            objective,
            total_cost: total_cost as i64,
            coverage: coverage as i64,
            feasible,
            penalized: objective as f64 / OBJECTIVE_SCALE + PENALTY * (over + short),
        }
    }

    pub fn objective_value(objective: i128) -> f64 {
        objective as f64 / OBJECTIVE_SCALE
    }

    pub fn design(&self, x: &[u32]) -> FleetDesign {
        let lines = self
            .configs
            .iter()
            .zip(x)
            .zip(&self.problem.items)
            .filter(|((_, &n), _)| n > 0)
            .map(|((c, &n), it)| FleetLine { config: c.clone(), units: n, max_units: it.ub.max(n) })
            .collect();
        FleetDesign::new(lines, self.scenario.edge_server.clone(), self.scenario.comm.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_bound_examples() {
        // min(ceil(100/30), ceil(10/4) + 2) = min(4, 5)
        assert_eq!(unit_bound(100, 30, 4, 10, 2), 4);
        assert_eq!(unit_bound(1000, 30, 4, 10, 2), 5);
        assert_eq!(unit_bound(1000, 30, 0, 10, 2), 34);
    }

    #[test]
    fn degenerate_columns_are_zero() {
        assert_eq!(min_max(&[3.0, 3.0]), vec![0.0, 0.0]);
        assert_eq!(min_max(&[1.0, 3.0, 2.0]), vec![0.0, 1.0, 0.5]);
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("flipped-beta".parse::<ObjectiveMode>().unwrap(), ObjectiveMode::FlippedBeta);
        assert!("x".parse::<ObjectiveMode>().is_err());
    }
}
