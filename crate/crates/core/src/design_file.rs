//! Fleet designs on disk.
//!
//! A design file names components by catalog id:
//!
//! ```toml
//! comm = "wifi-local"            # optional; the scenario's choice otherwise
//! edge_server = "edge-a"         # optional; the scenario's choice otherwise
//!
//! [[lines]]
//! chassis = "rover-plastic-large"
//! motor = "rover-motor-large"
//! motor_count = 4
//! battery = "rover-battery-medium"
//! battery_count = 1
//! tire = "tire-standard"         # rovers only
//! tire_count = 4
//! compute = "rpi-4b"
//! units = 1
//! max_units = 10                 # optional
//! sensors = ["rover-camera"]     # optional; all fitting sensors otherwise
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{line_of, ComponentCatalog, VehicleKind};
use crate::constraints::comm_choice;
use crate::derive::{Build, DeriveError, TireSet};
use crate::fleet::{Configuration, FleetDesign, FleetLine};
use crate::money::Money;
use crate::optimize::unit_bound;
use crate::scenario::Scenario;

#[derive(Debug, Error)]
pub enum DesignFileError {
    #[error("cannot read design {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{origin}{}: schema error: {message}", line.map(|l| format!(":{l}")).unwrap_or_default())]
    Schema { origin: String, line: Option<usize>, message: String },
    #[error("line {line}: unknown {category} `{id}`")]
    UnknownComponent { line: usize, category: &'static str, id: String },
    #[error("unknown {category} `{id}`")]
    UnknownShared { category: &'static str, id: String },
    #[error("line {line}: {message}")]
    Invalid { line: usize, message: String },
    #[error("line {line}: {source}")]
    Derive {
        line: usize,
        #[source]
        source: DeriveError,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineSpec {
    pub chassis: String,
    pub motor: String,
    pub motor_count: u32,
    pub battery: String,
    pub battery_count: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tire: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tire_count: Option<u32>,
    pub compute: String,
    pub units: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_units: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sensors: Option<Vec<String>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comm: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_server: Option<String>,
    #[serde(default)]
    pub lines: Vec<LineSpec>,
}

pub fn parse_design(text: &str, origin: &str) -> Result<DesignFile, DesignFileError> {
    toml::from_str(text).map_err(|e| DesignFileError::Schema {
        origin: origin.to_string(),
        line: e.span().map(|s| line_of(text, s.start)),
        message: e.message().to_string(),
    })
}

pub fn load_design(path: impl AsRef<Path>) -> Result<DesignFile, DesignFileError> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|source| DesignFileError::Io { path: path.display().to_string(), source })?;
    parse_design(&text, &path.display().to_string())
}

impl DesignFile {
    /// Writes component ids back out; the inverse of [`DesignFile::resolve`].
    pub fn from_design(design: &FleetDesign) -> Self {
        DesignFile {
            comm: design.comm.as_ref().map(|c| c.method.id.clone()),
            edge_server: design.edge_server.as_ref().map(|e| e.id.clone()),
            lines: design
                .lines
                .iter()
                .map(|l| {
                    let b = &l.config.build;
                    LineSpec {
                        chassis: b.chassis.id.clone(),
                        motor: b.motor.id.clone(),
                        motor_count: b.motor_count,
                        battery: b.battery.id.clone(),
                        battery_count: b.battery_count,
                        tire: b.tires.as_ref().map(|t| t.tire.id.clone()),
                        tire_count: b.tires.as_ref().map(|t| t.count),
                        compute: b.compute.id.clone(),
                        units: l.units,
                        max_units: Some(l.max_units),
                        sensors: Some(b.sensors.iter().map(|s| s.id.clone()).collect()),
                    }
                })
                .collect(),
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("design serializes")
    }

    /// Builds the fleet against a catalog. Application parts and, unless
    /// overridden, comm and edge costs come from the scenario.
    pub fn resolve(&self, catalog: &ComponentCatalog, scen: &Scenario) -> Result<FleetDesign, DesignFileError> {
        let extra_mass: f64 = scen.apps.iter().map(|a| a.extra_mass_kg).sum();
        let extra_cost: Money = scen.apps.iter().map(|a| a.extra_cost).sum();
        let mut lines = Vec::with_capacity(self.lines.len());
        for (i, spec) in self.lines.iter().enumerate() {
            let line = i + 1;
            let unknown = |category: &'static str, id: &str| DesignFileError::UnknownComponent { line, category, id: id.to_string() };
            let chassis = catalog.chassis_by_id(&spec.chassis).ok_or_else(|| unknown("chassis", &spec.chassis))?;
            let kind = chassis.vehicle_kind;
            let motor = catalog.motor(&spec.motor).ok_or_else(|| unknown("motor", &spec.motor))?;
            let battery = catalog.battery(&spec.battery).ok_or_else(|| unknown("battery", &spec.battery))?;
            let compute = catalog.compute_unit(&spec.compute).ok_or_else(|| unknown("compute unit", &spec.compute))?;
            let tires = match (kind, &spec.tire) {
                (VehicleKind::Rover, Some(id)) => {
                    let tire = catalog.tire(id).ok_or_else(|| unknown("tire", id))?;
                    let count = spec
                        .tire_count
                        .ok_or_else(|| DesignFileError::Invalid { line, message: "tire given without tire_count".into() })?;
                    Some(TireSet { tire: tire.clone(), count })
                }
                (VehicleKind::Rover, None) => {
                    return Err(DesignFileError::Invalid { line, message: "rover line needs a tire".into() });
                }
                (VehicleKind::Drone, Some(_)) => {
                    return Err(DesignFileError::Invalid { line, message: "drone line lists a tire".into() });
                }
                (VehicleKind::Drone, None) => None,
            };
            let sensors = match &spec.sensors {
                Some(ids) => ids
                    .iter()
                    .map(|id| catalog.sensor(id).cloned().ok_or_else(|| unknown("sensor", id)))
                    .collect::<Result<Vec<_>, _>>()?,
                None => catalog.sensors_for(kind),
            };
            let calibration = catalog.layout(kind).map_or(1.0, |l| l.coverage_calibration);
            let build = Build {
                kind,
                chassis: chassis.clone(),
                motor: motor.clone(),
                motor_count: spec.motor_count,
                battery: battery.clone(),
                battery_count: spec.battery_count,
                tires,
                compute: compute.clone(),
                sensors,
                apps_extra_mass_kg: extra_mass,
                apps_extra_cost: extra_cost,
            };
            let config = Configuration::new(build, calibration).map_err(|source| DesignFileError::Derive { line, source })?;
            let max_units = spec.max_units.unwrap_or_else(|| {
                unit_bound(scen.budget.cents(), config.line_cost().cents(), config.area_m2, scen.farm_size_m2, 2).max(spec.units)
            });
            if spec.units > max_units {
                return Err(DesignFileError::Invalid { line, message: format!("units {} exceed max_units {max_units}", spec.units) });
            }
            lines.push(FleetLine { config, units: spec.units, max_units });
        }
        let comm = match &self.comm {
            Some(id) => {
                let m = catalog
                    .comm_method(id)
                    .ok_or_else(|| DesignFileError::UnknownShared { category: "comm method", id: id.clone() })?;
                Some(comm_choice(scen.farm_size_m2, m))
            }
            None => scen.comm.clone(),
        };
        let edge_server = match &self.edge_server {
            Some(id) => Some(
                catalog
                    .edge_server(id)
                    .cloned()
                    .ok_or_else(|| DesignFileError::UnknownShared { category: "edge server", id: id.clone() })?,
            ),
            None => scen.edge_server.clone(),
        };
        Ok(FleetDesign::new(lines, edge_server, comm))
    }
}
