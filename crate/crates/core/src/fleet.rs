//! Vehicle configurations and fleet designs.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::catalog::{CommMethod, EdgeServer, VehicleKind};
use crate::derive::{derive_metrics, Build, DeriveError, DerivedMetrics, Physics};
use crate::money::Money;

/// One vehicle build together with its derived metrics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Configuration {
    pub id: String,
    pub build: Build,
    pub metrics: DerivedMetrics<f64>,
    pub coverage_calibration: f64,
    /// Per-unit coverage rounded half-up to whole square meters.
    pub area_m2: i64,
}

impl Configuration {
    pub fn new(build: Build, coverage_calibration: f64) -> Result<Self, DeriveError> {
        Self::with_physics(build, coverage_calibration, &Physics::default())
    }

    pub fn with_physics(build: Build, coverage_calibration: f64, physics: &Physics<f64>) -> Result<Self, DeriveError> {
        let metrics = derive_metrics(&build, coverage_calibration, physics)?;
        let area_m2 = round_half_up(metrics.coverage_area_m2);
        Ok(Configuration { id: build_id(&build), build, metrics, coverage_calibration, area_m2 })
    }

    pub fn kind(&self) -> VehicleKind {
        self.build.kind
    }

    /// Base vehicle cost.
    pub fn unit_cost(&self) -> Money {
        self.metrics.unit_cost
    }

    pub fn extra_cost(&self) -> Money {
        self.build.apps_extra_cost
    }

    /// Cost charged per unit against the budget.
    pub fn line_cost(&self) -> Money {
        self.metrics.unit_cost + self.build.apps_extra_cost
    }

    pub fn payload_kg(&self) -> f64 {
        self.metrics.max_payload_kg
    }

    pub fn runtime_hours(&self) -> f64 {
        self.metrics.runtime_hours
    }
}

pub fn round_half_up(x: f64) -> i64 {
    (x + 0.5).floor() as i64
}

pub fn build_id(b: &Build) -> String {
    let mut id = format!(
        "{}:{}+{}x{}+{}x{}",
        b.kind, b.chassis.id, b.motor.id, b.motor_count, b.battery.id, b.battery_count
    );
    if let Some(t) = &b.tires {
        id.push_str(&format!("+{}x{}", t.tire.id, t.count));
    }
    id.push('+');
    id.push_str(&b.compute.id);
    id
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FleetLine {
    pub config: Configuration,
    pub units: u32,
    /// Largest unit count this line may take; bounds the verifier's unary
    /// expansion.
    pub max_units: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommChoice {
    pub method: CommMethod,
    pub cells: u32,
    pub cost: Money,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FleetTotals {
    pub vehicle_cost: Money,
    pub total_cost: Money,
    pub coverage_m2: i64,
    pub payload_kg: f64,
    pub units: u32,
}

/// Unit counts per configuration plus shared edge and communication costs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FleetDesign {
    pub lines: Vec<FleetLine>,
    pub edge_server: Option<EdgeServer>,
    pub comm: Option<CommChoice>,
    pub totals: FleetTotals,
}

impl FleetDesign {
    /// Builds a design; zero-unit lines are dropped and totals computed.
    pub fn new(lines: Vec<FleetLine>, edge_server: Option<EdgeServer>, comm: Option<CommChoice>) -> Self {
        let lines: Vec<FleetLine> = lines.into_iter().filter(|l| l.units > 0).collect();
        let vehicle_cost: Money = lines.iter().map(|l| l.config.line_cost() * l.units).sum();
        let edge = edge_server.as_ref().map_or(Money::ZERO, |e| e.cost);
        let comm_cost = comm.as_ref().map_or(Money::ZERO, |c| c.cost);
        let totals = FleetTotals {
            vehicle_cost,
            total_cost: vehicle_cost + edge + comm_cost,
            coverage_m2: lines.iter().map(|l| l.config.area_m2 * i64::from(l.units)).sum(),
            payload_kg: lines.iter().map(|l| l.config.payload_kg() * f64::from(l.units)).sum(),
            units: lines.iter().map(|l| l.units).sum(),
        };
        FleetDesign { lines, edge_server, comm, totals }
    }

    pub fn edge_cost(&self) -> Money {
        self.edge_server.as_ref().map_or(Money::ZERO, |e| e.cost)
    }

    pub fn comm_cost(&self) -> Money {
        self.comm.as_ref().map_or(Money::ZERO, |c| c.cost)
    }

    pub fn fixed_cost(&self) -> Money {
        self.edge_cost() + self.comm_cost()
    }

    /// Sorted (configuration id, units) pairs; equal keys mean equal fleets.
    pub fn key(&self) -> Vec<(String, u32)> {
        let mut k: Vec<_> = self.lines.iter().map(|l| (l.config.id.clone(), l.units)).collect();
        k.sort();
        k
    }

    /// Mean base cost per vehicle.
    pub fn mean_unit_cost(&self) -> Money {
        match self.totals.units {
            0 => Money::ZERO,
            n => {
                let base: i64 = self.lines.iter().map(|l| l.config.unit_cost().cents() * i64::from(l.units)).sum();
                Money::from_cents((base + i64::from(n) / 2) / i64::from(n))
            }
        }
    }

    pub fn mean_unit_payload_kg(&self) -> f64 {
        match self.totals.units {
            0 => 0.0,
            n => self.totals.payload_kg / f64::from(n),
        }
    }

    /// Runtime of the shortest-lived vehicle in the fleet.
    pub fn runtime_hours(&self) -> f64 {
        self.lines.iter().map(|l| l.config.runtime_hours()).fold(None, |acc: Option<f64>, r| Some(acc.map_or(r, |a| a.min(r)))).unwrap_or(0.0)
    }
}

impl fmt::Display for FleetDesign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lines.iter().map(|l| format!("{}x {}", l.units, l.config.id)).collect();
        write!(f, "[{}] cost {} coverage {} m2", parts.join(", "), self.totals.total_cost, self.totals.coverage_m2)
    }
}
