//! Weighted scores of design pools.
//!
//! Each design earns a "goodness" in [0, 1] per criterion. Cost and payload
//! are the design's per-vehicle means, min–max normalized over the
//! scenario's enumerated configurations (the same population the objective
//! normalizes over); cost is inverted and over-budget designs earn 0.
//! Coverage is the satisfied share of the farm. A pool scores the weighted
//! sum of its per-criterion means. The scale depends only on the scenario,
//! so scores do not shift with the set of methods compared.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fleet::{Configuration, FleetDesign};
use crate::money::Money;
use crate::optimize::ObjectiveWeights;
use crate::scenario::Scenario;

/// Methods compared in published results that this crate does not run.
pub const NOT_IMPLEMENTED: [&str; 2] = ["bayesian-opt", "pg-dse"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScoreError {
    #[error("cannot score an empty pool")]
    EmptyPool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScoreScale {
    pub budget: Money,
    pub farm_size_m2: i64,
    /// Range of per-vehicle cost, applications included.
    pub unit_cost_min: Money,
    pub unit_cost_max: Money,
    pub unit_payload_min_kg: f64,
    pub unit_payload_max_kg: f64,
}

impl ScoreScale {
    pub fn from_configs(configs: &[Configuration], scen: &Scenario) -> Self {
        let costs = configs.iter().map(Configuration::line_cost);
        let (pmin, pmax) = configs.iter().map(|c| c.payload_kg()).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p), hi.max(p)));
        ScoreScale {
            budget: scen.budget,
            farm_size_m2: scen.farm_size_m2,
            unit_cost_min: costs.clone().min().unwrap_or(Money::ZERO),
            unit_cost_max: costs.max().unwrap_or(Money::ZERO),
            unit_payload_min_kg: if configs.is_empty() { 0.0 } else { pmin },
            unit_payload_max_kg: if configs.is_empty() { 0.0 } else { pmax },
        }
    }

    /// Inverted, normalized mean vehicle cost; 0 over budget or without
    /// vehicles.
    pub fn cost_goodness(&self, d: &FleetDesign) -> f64 {
        if d.totals.total_cost > self.budget || d.totals.units == 0 {
            return 0.0;
        }
        let lo = self.unit_cost_min.cents() as f64;
        let hi = self.unit_cost_max.cents() as f64;
        if hi <= lo {
            return 1.0;
        }
        let mean = d.totals.vehicle_cost.cents() as f64 / f64::from(d.totals.units);
        ((hi - mean) / (hi - lo)).clamp(0.0, 1.0)
    }

    pub fn coverage_goodness(&self, d: &FleetDesign) -> f64 {
        if self.farm_size_m2 <= 0 {
            return 1.0;
        }
        (d.totals.coverage_m2 as f64 / self.farm_size_m2 as f64).clamp(0.0, 1.0)
    }

    /// Normalized mean vehicle payload; 0 for a constant column.
    pub fn payload_goodness(&self, d: &FleetDesign) -> f64 {
        let (lo, hi) = (self.unit_payload_min_kg, self.unit_payload_max_kg);
        if d.totals.units == 0 || hi <= lo {
            return 0.0;
        }
        ((d.mean_unit_payload_kg() - lo) / (hi - lo)).clamp(0.0, 1.0)
    }
}

/// Pool-mean goodness per criterion: (cost, coverage, payload).
pub fn sub_scores(pool: &[FleetDesign], scale: &ScoreScale) -> Result<[f64; 3], ScoreError> {
    if pool.is_empty() {
        return Err(ScoreError::EmptyPool);
    }
    // Summed in sorted order so a reordered pool scores bit-identically.
    let mean = |f: &dyn Fn(&FleetDesign) -> f64| {
        let mut v: Vec<f64> = pool.iter().map(f).collect();
        v.sort_by(f64::total_cmp);
        v.iter().sum::<f64>() / v.len() as f64
    };
    Ok([
        mean(&|d| scale.cost_goodness(d)),
        mean(&|d| scale.coverage_goodness(d)),
        mean(&|d| scale.payload_goodness(d)),
    ])
}

/// Weighted score of a pool in [0, 1].
pub fn weighted_score(pool: &[FleetDesign], weights: &ObjectiveWeights, scale: &ScoreScale) -> Result<f64, ScoreError> {
    let [c, a, p] = sub_scores(pool, scale)?;
    let w = weights.normalized();
    Ok((w.alpha * c + w.beta * a + w.gamma * p).clamp(0.0, 1.0))
}

/// One method's pool and the SAT verdict of each member.
#[derive(Clone, Debug, PartialEq)]
pub struct MethodPool {
    pub method: String,
    pub designs: Vec<FleetDesign>,
    pub sat_valid: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScoreRow {
    pub method: String,
    /// `None` for methods not run.
    pub score: Option<f64>,
    pub designs: usize,
    pub valid: usize,
    pub invalid: usize,
    pub mean_total_cost: Option<Money>,
    pub mean_coverage_m2: Option<f64>,
    pub mean_payload_kg: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScoreReport {
    pub weights: ObjectiveWeights,
    pub scale: ScoreScale,
    pub rows: Vec<ScoreRow>,
}

/// Scores every method on one scale. Rows are sorted by descending score,
/// ties by name; placeholder rows for methods not run come last.
pub fn render_report(pools: &[MethodPool], scale: &ScoreScale, weights: &ObjectiveWeights) -> ScoreReport {
    let scale = *scale;
    let mut rows: Vec<ScoreRow> = pools
        .iter()
        .map(|p| {
            let n = p.designs.len();
            let mean = |f: &dyn Fn(&FleetDesign) -> f64| (n > 0).then(|| p.designs.iter().map(f).sum::<f64>() / n as f64);
            let valid = p.sat_valid.iter().filter(|v| **v).count();
            ScoreRow {
                method: p.method.clone(),
                score: weighted_score(&p.designs, weights, &scale).ok(),
                designs: n,
                valid,
                invalid: p.sat_valid.len() - valid,
                mean_total_cost: (n > 0).then(|| {
                    let total: i64 = p.designs.iter().map(|d| d.totals.total_cost.cents()).sum();
                    Money::from_cents((total as f64 / n as f64).round() as i64)
                }),
                mean_coverage_m2: mean(&|d| d.totals.coverage_m2 as f64),
                mean_payload_kg: mean(&|d| d.totals.payload_kg),
            }
        })
        .collect();
    rows.sort_by(|a, b| b.score.unwrap_or(-1.0).total_cmp(&a.score.unwrap_or(-1.0)).then_with(|| a.method.cmp(&b.method)));
    for name in NOT_IMPLEMENTED {
        if !rows.iter().any(|r| r.method == name) {
            rows.push(ScoreRow {
                method: name.to_string(),
                score: None,
                designs: 0,
                valid: 0,
                invalid: 0,
                mean_total_cost: None,
                mean_coverage_m2: None,
                mean_payload_kg: None,
            });
        }
    }
    ScoreReport { weights: *weights, scale, rows }
}

impl ScoreReport {
    pub fn row(&self, method: &str) -> Option<&ScoreRow> {
        self.rows.iter().find(|r| r.method == method)
    }

    /// Aligned text table.
    pub fn to_text(&self) -> String {
        let w = self.weights.normalized();
        let mut out = format!("weights: cost {:.3}, area {:.3}, payload {:.3}\n", w.alpha, w.beta, w.gamma);
        let _ = writeln!(
            out,
            "scale: unit cost {} .. {}, unit payload {:.2} .. {:.2} kg, budget {}\n",
            self.scale.unit_cost_min, self.scale.unit_cost_max, self.scale.unit_payload_min_kg, self.scale.unit_payload_max_kg, self.scale.budget
        );
        let _ = writeln!(out, "{:<14} {:>6} {:>7} {:>6} {:>8} {:>14} {:>12} {:>12}", "method", "score", "designs", "valid", "invalid", "mean_cost", "mean_area_m2", "mean_payload");
        for r in &self.rows {
            let na = || "N/A".to_string();
            let _ = writeln!(
                out,
                "{:<14} {:>6} {:>7} {:>6} {:>8} {:>14} {:>12} {:>12}",
                r.method,
                r.score.map_or_else(na, |s| format!("{s:.3}")),
                r.designs,
                r.valid,
                r.invalid,
                r.mean_total_cost.map_or_else(na, |c| c.to_string()),
                r.mean_coverage_m2.map_or_else(na, |a| format!("{a:.0}")),
                r.mean_payload_kg.map_or_else(na, |p| format!("{p:.2}")),
            );
        }
        out
    }
}
