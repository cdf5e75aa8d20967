//! Feasibility rules for configurations and fleet designs.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::catalog::{compatible_platforms, required_compute_kinds, CommMethod, VehicleKind};
use crate::fleet::{CommChoice, Configuration, FleetDesign};
use crate::money::Money;
use crate::scenario::Scenario;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// Total cost within budget.
    Budget,
    /// Total coverage reaches the farm size.
    Coverage,
    /// At least one battery module per build.
    BatteryFloor,
    /// Motor size equals chassis size.
    SizeMatch,
    /// Non-negative maximum payload.
    Payload,
    /// Rovers ride on at least three tires, drones on none.
    Tires,
    /// Drones fly at least the minimum flight time.
    FlightTime,
    /// Positive total power draw.
    Power,
    /// Vehicle kind suits the crop and every application.
    Platform,
    /// Compute kind suits the processing mode.
    ComputeKind,
    /// Offboard processing has an edge server.
    EdgeServer,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::Budget => "budget",
            Rule::Coverage => "coverage",
            Rule::BatteryFloor => "battery-floor",
            Rule::SizeMatch => "size-match",
            Rule::Payload => "payload",
            Rule::Tires => "tires",
            Rule::FlightTime => "flight-time",
            Rule::Power => "power",
            Rule::Platform => "platform",
            Rule::ComputeKind => "compute-kind",
            Rule::EdgeServer => "edge-server",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: Rule,
    /// Index of the offending fleet line, when the rule is per line.
    pub line: Option<usize>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(i) => write!(f, "{} (line {}): {}", self.rule, i + 1, self.detail),
            None => write!(f, "{}: {}", self.rule, self.detail),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BudgetCheck {
    pub pass: bool,
    /// Budget minus total cost; negative when over budget.
    pub slack: Money,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoverageCheck {
    pub pass: bool,
    /// Total coverage minus farm size, in m².
    pub surplus_m2: i64,
}

pub fn check_budget(design: &FleetDesign, scen: &Scenario) -> BudgetCheck {
    let slack = scen.budget - design.totals.total_cost;
    BudgetCheck { pass: slack >= Money::ZERO, slack }
}

pub fn check_coverage(design: &FleetDesign, scen: &Scenario) -> CoverageCheck {
    let surplus_m2 = design.totals.coverage_m2 - scen.farm_size_m2;
    CoverageCheck { pass: surplus_m2 >= 0, surplus_m2 }
}

/// Structural rules of a single build. An empty list means it passes.
pub fn check_structure(cfg: &Configuration) -> Vec<Rule> {
    let b = &cfg.build;
    let mut out = Vec::new();
    if b.battery_count < 1 {
        out.push(Rule::BatteryFloor);
    }
    if b.motor.size_class != b.chassis.size_class {
        out.push(Rule::SizeMatch);
    }
    if cfg.metrics.max_payload_kg < 0.0 {
        out.push(Rule::Payload);
    }
    let tires_ok = match (b.kind, &b.tires) {
        (VehicleKind::Rover, Some(t)) => t.count >= 3,
        (VehicleKind::Drone, None) => true,
        _ => false,
    };
    if !tires_ok {
        out.push(Rule::Tires);
    }
    if cfg.metrics.runtime_hours.is_nan() || cfg.metrics.runtime_hours <= 0.0 {
        out.push(Rule::Power);
    }
    out.dedup();
    out
}

/// Drones must reach the minimum flight time; rovers pass.
pub fn check_flight_time(cfg: &Configuration, scen: &Scenario) -> bool {
    cfg.kind() != VehicleKind::Drone || cfg.metrics.runtime_hours >= scen.min_flight_hours
}

/// Number of communication cells: farm side length over range, rounded up,
/// at least one.
pub fn comm_cells(farm_size_m2: i64, comm: &CommMethod) -> u32 {
    let raw = (farm_size_m2.max(0) as f64).sqrt() / (comm.range_km * 1000.0);
    (raw.ceil() as u32).max(1)
}

pub fn comm_cost(cells: u32, comm: &CommMethod) -> Money {
    comm.cost_per_cell * cells
}

pub fn comm_choice(farm_size_m2: i64, method: &CommMethod) -> CommChoice {
    let cells = comm_cells(farm_size_m2, method);
    CommChoice { method: method.clone(), cells, cost: comm_cost(cells, method) }
}

/// Cheapest method for the farm; ties go to the longer range, then id.
pub fn select_comm(methods: &[CommMethod], farm_size_m2: i64) -> Option<CommChoice> {
    methods.iter().map(|m| comm_choice(farm_size_m2, m)).min_by(|a, b| {
        a.cost
            .cmp(&b.cost)
            .then_with(|| b.method.range_km.total_cmp(&a.method.range_km))
            .then_with(|| a.method.id.cmp(&b.method.id))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Feasibility {
    pub violations: Vec<Violation>,
}

impl Feasibility {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn rules(&self) -> Vec<Rule> {
        let mut r: Vec<Rule> = self.violations.iter().map(|v| v.rule).collect();
        r.sort();
        r.dedup();
        r
    }
}

/// Every rule a fleet violates, not just the first.
pub fn feasible(design: &FleetDesign, scen: &Scenario) -> Feasibility {
    let mut violations = Vec::new();
    let budget = check_budget(design, scen);
    if !budget.pass {
        violations.push(Violation {
            rule: Rule::Budget,
            line: None,
            detail: format!("total {} exceeds budget {} by {}", design.totals.total_cost, scen.budget, -budget.slack),
        });
    }
    let coverage = check_coverage(design, scen);
    if !coverage.pass {
        violations.push(Violation {
            rule: Rule::Coverage,
            line: None,
            detail: format!("coverage {} m2 short of {} m2 by {}", design.totals.coverage_m2, scen.farm_size_m2, -coverage.surplus_m2),
        });
    }
    let platforms = compatible_platforms(&scen.crop, &scen.apps);
    let (kinds, needs_edge) = required_compute_kinds(&scen.apps);
    if let Err(e) = &platforms {
        violations.push(Violation { rule: Rule::Platform, line: None, detail: e.to_string() });
    }
    for (i, line) in design.lines.iter().enumerate() {
        let cfg = &line.config;
        for rule in check_structure(cfg) {
            violations.push(Violation { rule, line: Some(i), detail: format!("{} breaks the {rule} rule", cfg.id) });
        }
        if !check_flight_time(cfg, scen) {
            violations.push(Violation {
                rule: Rule::FlightTime,
                line: Some(i),
                detail: format!("{} flies {:.4} h, below {} h", cfg.id, cfg.metrics.runtime_hours, scen.min_flight_hours),
            });
        }
        if let Ok(p) = &platforms {
            if !p.contains(&cfg.kind()) {
                violations.push(Violation {
                    rule: Rule::Platform,
                    line: Some(i),
                    detail: format!("{} is not suitable for crop {} with the chosen applications", cfg.kind(), scen.crop.crop),
                });
            }
        }
        if !kinds.contains(&cfg.build.compute.kind) {
            violations.push(Violation {
                rule: Rule::ComputeKind,
                line: Some(i),
                detail: format!("{} ({}) cannot serve onboard processing", cfg.build.compute.id, cfg.build.compute.kind),
            });
        }
    }
    if needs_edge && design.edge_server.is_none() {
        violations.push(Violation { rule: Rule::EdgeServer, line: None, detail: "offboard processing without an edge server".into() });
    }
    Feasibility { violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{ApplicationProfile, CropClass, CropProfile, EdgeServer, SizeClass};
    use crate::derive::fixtures::{drone, rover};
    use crate::fleet::FleetLine;

    fn comm(range_km: f64, cents: i64) -> CommMethod {
        CommMethod { id: format!("c{range_km}"), range_km, cost_per_cell: Money::from_cents(cents) }
    }

    fn scen(budget: i64, farm: i64) -> Scenario {
        Scenario::new(
            Money::from_cents(budget),
            farm,
            CropProfile::recommended(CropClass::Tree),
            vec![ApplicationProfile::standard("autonomous_picking").unwrap()],
        )
    }

    fn cfg_with(area: i64, cents: i64) -> Configuration {
        let mut c = Configuration::new(rover(5.0, 0.5, 4, 2.0, 1, 0.25, 4), 1.0).unwrap();
        c.area_m2 = area;
        c.metrics.unit_cost = Money::from_cents(cents);
        c
    }

    fn design(lines: &[(Configuration, u32)], edge: Option<i64>) -> FleetDesign {
        FleetDesign::new(
            lines.iter().map(|(c, x)| FleetLine { config: c.clone(), units: *x, max_units: *x }).collect(),
            edge.map(|cents| EdgeServer { id: "edge".into(), cost: Money::from_cents(cents), benchmark_score: None }),
            None,
        )
    }

    #[test]
    fn budget_examples() {
        let d = design(&[(cfg_with(5000, 344956), 1)], Some(200000));
        let c = check_budget(&d, &scen(10_000_000, 4047));
        assert!(c.pass);
        assert_eq!(c.slack, Money::from_cents(9455044));
        let total = d.totals.total_cost.cents();
        assert!(check_budget(&d, &scen(total, 1)).pass);
        assert_eq!(check_budget(&d, &scen(total, 1)).slack, Money::ZERO);
        assert!(!check_budget(&d, &scen(total - 1, 1)).pass);
    }

    #[test]
    fn coverage_examples() {
        let s1 = scen(1, 4047);
        let exact = check_coverage(&design(&[(cfg_with(4047, 1), 1)], None), &s1);
        assert!(exact.pass);
        assert_eq!(exact.surplus_m2, 0);
        assert!(!check_coverage(&design(&[(cfg_with(2000, 1), 2)], None), &s1).pass);
        assert!(check_coverage(&design(&[(cfg_with(4500, 1), 9)], None), &scen(1, 40469)).pass);
    }

    #[test]
    fn structure_examples() {
        let ok = Configuration::new(rover(5.0, 0.1, 4, 2.0, 1, 0.25, 4), 1.0).unwrap();
        let mut ok = ok;
        ok.build.motor.torque_nm = 10.0;
        let ok = Configuration::new(ok.build, 1.0).unwrap();
        assert_eq!(check_structure(&ok), vec![]);
        let mut no_batt = ok.build.clone();
        no_batt.battery_count = 0;
        assert!(check_structure(&Configuration::new(no_batt, 1.0).unwrap()).contains(&Rule::BatteryFloor));
        let mut mismatch = ok.build.clone();
        mismatch.chassis.size_class = SizeClass::Large;
        mismatch.motor.size_class = SizeClass::Small;
        assert_eq!(check_structure(&Configuration::new(mismatch, 1.0).unwrap()), vec![Rule::SizeMatch]);
        let heavy = Configuration::new(rover(50.0, 0.5, 4, 2.0, 1, 0.25, 4), 1.0).unwrap();
        assert_eq!(check_structure(&heavy), vec![Rule::Payload]);
    }

    #[test]
    fn flight_time_examples() {
        let s = scen(1, 1);
        let mut d = Configuration::new(drone(1.0, 0.1, 0.5), 1.0).unwrap();
        d.metrics.runtime_hours = 0.22;
        assert!(check_flight_time(&d, &s));
        d.metrics.runtime_hours = 0.19;
        assert!(!check_flight_time(&d, &s));
        let mut r = cfg_with(1, 1);
        r.metrics.runtime_hours = 0.05;
        assert!(check_flight_time(&r, &s));
    }

    #[test]
    fn comm_examples() {
        assert_eq!(comm_cells(4047, &comm(0.1, 0)), 1);
        assert_eq!(comm_cells(40469, &comm(0.1, 0)), 3);
        assert_eq!(comm_cells(1_000_000, &comm(1.0, 0)), 1);
        assert_eq!(comm_cost(3, &comm(0.1, 15000)), Money::from_cents(45000));
        assert_eq!(comm_cost(1, &comm(0.1, 0)), Money::ZERO);
        assert_eq!(comm_cost(1, &comm(0.1, 19999)), Money::from_cents(19999));
    }

    #[test]
    fn comm_selection_breaks_ties_by_range() {
        let methods = [comm(0.1, 15000), comm(2.0, 42000), comm(5.0, 45000)];
        // 40469 m2: 3 x 150 = 450 vs 1 x 420 vs 1 x 450
        assert_eq!(select_comm(&methods, 40469).unwrap().method.range_km, 2.0);
        let tied = [comm(0.1, 15000), comm(5.0, 15000)];
        assert_eq!(select_comm(&tied, 4047).unwrap().method.range_km, 5.0);
        assert!(select_comm(&[], 10).is_none());
    }

    #[test]
    fn feasible_lists_every_violation() {
        let mut heavy = Configuration::new(drone(50.0, 0.1, 0.5), 1.0).unwrap();
        heavy.area_m2 = 10;
        let d = design(&[(heavy, 1)], None);
        let f = feasible(&d, &scen(1, 4047));
        let rules = f.rules();
        for r in [Rule::Budget, Rule::Coverage, Rule::Payload, Rule::Platform] {
            assert!(rules.contains(&r), "{r} missing from {rules:?}");
        }
    }

    #[test]
    fn indoor_drone_fleet_fails_platform() {
        let mut s = scen(100_000_000, 1);
        s.crop = CropProfile::recommended(CropClass::Indoor);
        s.apps = vec![ApplicationProfile::standard("general_crop_monitoring").unwrap()];
        let mut d = Configuration::new(drone(1.0, 0.1, 0.5), 1.0).unwrap();
        d.build.motor.torque_nm = 10.0;
        let mut d = Configuration::new(d.build, 1.0).unwrap();
        d.area_m2 = 10;
        d.metrics.runtime_hours = 1.0;
        let f = feasible(&design(&[(d, 1)], Some(1)), &s);
        assert_eq!(f.rules(), vec![Rule::Platform]);
    }
}
