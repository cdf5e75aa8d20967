//! Component inventory, crop and application tables, and catalog file I/O.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::money::Money;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VehicleKind {
    Rover,
    Drone,
}

impl VehicleKind {
    pub const ALL: [VehicleKind; 2] = [VehicleKind::Rover, VehicleKind::Drone];

    pub fn as_str(self) -> &'static str {
        match self {
            VehicleKind::Rover => "rover",
            VehicleKind::Drone => "drone",
        }
    }
}

impl fmt::Display for VehicleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SizeClass {
    Small,
    Medium,
    Large,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ComputeKind {
    #[serde(rename = "CPU")]
    Cpu,
    #[serde(rename = "GPU")]
    Gpu,
    #[serde(rename = "TPU")]
    Tpu,
}

impl fmt::Display for ComputeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComputeKind::Cpu => "CPU",
            ComputeKind::Gpu => "GPU",
            ComputeKind::Tpu => "TPU",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComputeMode {
    Onboard,
    Offboard,
}

/// Platform column of the application table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlatformFit {
    Rover,
    Drone,
    Both,
}

impl PlatformFit {
    pub fn platforms(self) -> PlatformSet {
        match self {
            PlatformFit::Rover => [VehicleKind::Rover].into_iter().collect(),
            PlatformFit::Drone => [VehicleKind::Drone].into_iter().collect(),
            PlatformFit::Both => VehicleKind::ALL.into_iter().collect(),
        }
    }
}

pub type PlatformSet = BTreeSet<VehicleKind>;

/// Closed set of crop classes. Unknown crop names fail to parse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CropClass {
    Indoor,
    FiberLegume,
    EarlyPaddy,
    Cereal,
    Tree,
    Orchard,
    Vine,
    Vegetable,
    Forage,
    Oilseed,
}

impl CropClass {
    pub const ALL: [CropClass; 10] = [
        CropClass::Indoor,
        CropClass::FiberLegume,
        CropClass::EarlyPaddy,
        CropClass::Cereal,
        CropClass::Tree,
        CropClass::Orchard,
        CropClass::Vine,
        CropClass::Vegetable,
        CropClass::Forage,
        CropClass::Oilseed,
    ];

    /// Indoor crops are rover-only; dense fiber/legume stands and waterlogged
    /// early paddy are drone-only; everything else suits hybrid fleets.
    pub fn recommended_platforms(self) -> PlatformSet {
        match self {
            CropClass::Indoor => PlatformFit::Rover.platforms(),
            CropClass::FiberLegume | CropClass::EarlyPaddy => PlatformFit::Drone.platforms(),
            _ => PlatformFit::Both.platforms(),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CropClass::Indoor => "indoor",
            CropClass::FiberLegume => "fiber_legume",
            CropClass::EarlyPaddy => "early_paddy",
            CropClass::Cereal => "cereal",
            CropClass::Tree => "tree",
            CropClass::Orchard => "orchard",
            CropClass::Vine => "vine",
            CropClass::Vegetable => "vegetable",
            CropClass::Forage => "forage",
            CropClass::Oilseed => "oilseed",
        }
    }
}

impl fmt::Display for CropClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Agricultural applications with their processing mode and platform fit.
pub const APPLICATION_TABLE: [(&str, ComputeMode, PlatformFit); 15] = [
    ("general_crop_monitoring", ComputeMode::Offboard, PlatformFit::Both),
    ("thermal_imaging", ComputeMode::Offboard, PlatformFit::Both),
    ("image_stitching", ComputeMode::Offboard, PlatformFit::Both),
    ("soil_monitoring", ComputeMode::Offboard, PlatformFit::Rover),
    ("yield_estimation", ComputeMode::Offboard, PlatformFit::Both),
    ("quality_control", ComputeMode::Offboard, PlatformFit::Rover),
    ("autonomous_picking", ComputeMode::Onboard, PlatformFit::Rover),
    ("mechanical_weeding", ComputeMode::Onboard, PlatformFit::Rover),
    ("soil_ph_sampling", ComputeMode::Onboard, PlatformFit::Rover),
    ("climate_mapping", ComputeMode::Offboard, PlatformFit::Rover),
    ("fence_inspection", ComputeMode::Offboard, PlatformFit::Drone),
    ("livestock_monitoring", ComputeMode::Onboard, PlatformFit::Both),
    ("beehive_inspection", ComputeMode::Onboard, PlatformFit::Rover),
    ("frost_pest_warning", ComputeMode::Onboard, PlatformFit::Both),
    ("fertilizing", ComputeMode::Onboard, PlatformFit::Rover),
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Chassis {
    pub id: String,
    pub vehicle_kind: VehicleKind,
    pub size_class: SizeClass,
    pub mass_kg: f64,
    pub cost: Money,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Motor {
    pub id: String,
    /// Restricts the motor to one vehicle kind; `None` fits both.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vehicle_kind: Option<VehicleKind>,
    pub size_class: SizeClass,
    /// Torque of a single motor.
    #[serde(rename = "torque_Nm")]
    pub torque_nm: f64,
    pub mass_kg: f64,
    pub cost: Money,
    #[serde(rename = "peak_power_W")]
    pub peak_power_w: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Battery {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vehicle_kind: Option<VehicleKind>,
    #[serde(rename = "capacity_Wh")]
    pub capacity_wh: f64,
    pub mass_kg: f64,
    pub cost: Money,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tire {
    pub id: String,
    pub radius_m: f64,
    pub mass_kg: f64,
    pub cost: Money,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComputeUnit {
    pub id: String,
    pub kind: ComputeKind,
    /// Multi-core benchmark score, taken as catalog data.
    pub benchmark_score: f64,
    pub mass_kg: f64,
    pub cost: Money,
    #[serde(rename = "power_W")]
    pub power_w: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommMethod {
    pub id: String,
    pub range_km: f64,
    pub cost_per_cell: Money,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeServer {
    pub id: String,
    pub cost: Money,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub benchmark_score: Option<f64>,
}

/// Sensors contribute cost, mass, and power draw; every build carries the
/// sensors that fit its vehicle kind.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sensor {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vehicle_kind: Option<VehicleKind>,
    pub mass_kg: f64,
    pub cost: Money,
    #[serde(rename = "power_W", default)]
    pub power_w: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CropProfile {
    pub crop: CropClass,
    pub allowed_platforms: PlatformSet,
}

impl CropProfile {
    pub fn recommended(crop: CropClass) -> Self {
        CropProfile { crop, allowed_platforms: crop.recommended_platforms() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ApplicationProfile {
    pub name: String,
    pub compute_mode: ComputeMode,
    pub platform: PlatformFit,
    /// Per-unit cost of application-specific parts.
    #[serde(default)]
    pub extra_cost: Money,
    #[serde(default)]
    pub extra_mass_kg: f64,
}

impl ApplicationProfile {
    /// Profile from the built-in application table with no extra parts.
    pub fn standard(name: &str) -> Option<Self> {
        APPLICATION_TABLE.iter().find(|row| row.0 == name).map(|&(name, compute_mode, platform)| ApplicationProfile {
            name: name.to_string(),
            compute_mode,
            platform,
            extra_cost: Money::ZERO,
            extra_mass_kg: 0.0,
        })
    }
}

/// Unit-count options and the coverage calibration for one vehicle kind.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Layout {
    pub vehicle_kind: VehicleKind,
    pub motor_counts: Vec<u32>,
    pub battery_counts: Vec<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tire_counts: Vec<u32>,
    /// Area per kilogram of component mass (m²/kg) scaling the coverage model.
    #[serde(default = "unit_calibration")]
    pub coverage_calibration: f64,
}

fn unit_calibration() -> f64 {
    1.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentCatalog {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub layouts: Vec<Layout>,
    pub chassis: Vec<Chassis>,
    pub motors: Vec<Motor>,
    pub batteries: Vec<Battery>,
    #[serde(default)]
    pub tires: Vec<Tire>,
    pub compute: Vec<ComputeUnit>,
    #[serde(default)]
    pub comm: Vec<CommMethod>,
    #[serde(default)]
    pub edge_servers: Vec<EdgeServer>,
    #[serde(default)]
    pub sensors: Vec<Sensor>,
    #[serde(default)]
    pub crops: Vec<CropProfile>,
    #[serde(default)]
    pub applications: Vec<ApplicationProfile>,
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("cannot read catalog {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{origin}{}: schema error: {message}", line.map(|l| format!(":{l}")).unwrap_or_default())]
    Schema { origin: String, line: Option<usize>, message: String },
    #[error("{origin}: invalid {category} `{id}`: {reason}")]
    Validation { origin: String, category: &'static str, id: String, reason: String },
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("no platform satisfies both `{left}` and `{right}`")]
pub struct CompatibilityError {
    pub left: String,
    pub right: String,
}

impl ComponentCatalog {
    pub fn layout(&self, kind: VehicleKind) -> Option<&Layout> {
        self.layouts.iter().find(|l| l.vehicle_kind == kind)
    }

    pub fn crop(&self, crop: CropClass) -> Option<&CropProfile> {
        self.crops.iter().find(|c| c.crop == crop)
    }

    pub fn application(&self, name: &str) -> Option<&ApplicationProfile> {
        self.applications.iter().find(|a| a.name == name)
    }

    pub fn comm_method(&self, id: &str) -> Option<&CommMethod> {
        self.comm.iter().find(|c| c.id == id)
    }

    pub fn edge_server(&self, id: &str) -> Option<&EdgeServer> {
        self.edge_servers.iter().find(|c| c.id == id)
    }

    pub fn chassis_by_id(&self, id: &str) -> Option<&Chassis> {
        self.chassis.iter().find(|c| c.id == id)
    }

    pub fn motor(&self, id: &str) -> Option<&Motor> {
        self.motors.iter().find(|c| c.id == id)
    }

    pub fn battery(&self, id: &str) -> Option<&Battery> {
        self.batteries.iter().find(|c| c.id == id)
    }

    pub fn tire(&self, id: &str) -> Option<&Tire> {
        self.tires.iter().find(|c| c.id == id)
    }

    pub fn compute_unit(&self, id: &str) -> Option<&ComputeUnit> {
        self.compute.iter().find(|c| c.id == id)
    }

    pub fn sensor(&self, id: &str) -> Option<&Sensor> {
        self.sensors.iter().find(|c| c.id == id)
    }

    /// Sensors carried by every build of `kind`.
    pub fn sensors_for(&self, kind: VehicleKind) -> Vec<Sensor> {
        self.sensors.iter().filter(|s| s.vehicle_kind.is_none_or(|k| k == kind)).cloned().collect()
    }

    /// Cheapest edge server, ties broken by id.
    pub fn cheapest_edge_server(&self) -> Option<&EdgeServer> {
        self.edge_servers.iter().min_by(|a, b| a.cost.cmp(&b.cost).then_with(|| a.id.cmp(&b.id)))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("catalog serializes")
    }

    /// Checks every type invariant. `origin` names the source in errors.
    pub fn validate(&self, origin: &str) -> Result<(), CatalogError> {
        let fail = |category: &'static str, id: &str, reason: String| CatalogError::Validation {
            origin: origin.to_string(),
            category,
            id: id.to_string(),
            reason,
        };

        fn unique<'a>(ids: impl Iterator<Item = &'a str>) -> Result<(), String> {
            let mut seen = HashSet::new();
            for id in ids {
                if !seen.insert(id) {
                    return Err(id.to_string());
                }
            }
            Ok(())
        }
        let check_cost = |category, id: &str, cost: Money| {
            if cost.cents() <= 0 {
                Err(fail(category, id, format!("cost must be positive, got {cost}")))
            } else {
                Ok(())
            }
        };
        let check_mass = |category, id: &str, mass: f64| {
            if !mass.is_finite() || mass < 0.0 {
                Err(fail(category, id, format!("mass_kg must be non-negative, got {mass}")))
            } else {
                Ok(())
            }
        };
        let check_positive = |category, id: &str, field: &str, v: f64| {
            if !v.is_finite() || v <= 0.0 {
                Err(fail(category, id, format!("{field} must be positive, got {v}")))
            } else {
                Ok(())
            }
        };
        let check_non_negative = |category, id: &str, field: &str, v: f64| {
            if !v.is_finite() || v < 0.0 {
                Err(fail(category, id, format!("{field} must be non-negative, got {v}")))
            } else {
                Ok(())
            }
        };

        macro_rules! ensure_unique {
            ($list:expr, $cat:literal) => {
                unique($list.iter().map(|o| o.id.as_str()))
                    .map_err(|id| fail($cat, &id, "duplicate id".to_string()))?;
            };
        }
        ensure_unique!(self.chassis, "chassis");
        ensure_unique!(self.motors, "motor");
        ensure_unique!(self.batteries, "battery");
        ensure_unique!(self.tires, "tire");
        ensure_unique!(self.compute, "compute unit");
        ensure_unique!(self.comm, "comm method");
        ensure_unique!(self.edge_servers, "edge server");
        ensure_unique!(self.sensors, "sensor");
        unique(self.applications.iter().map(|a| a.name.as_str()))
            .map_err(|id| fail("application", &id, "duplicate name".to_string()))?;
        unique(self.crops.iter().map(|c| c.crop.as_str()))
            .map_err(|id| fail("crop", &id, "duplicate crop entry".to_string()))?;

        if self.chassis.is_empty() {
            return Err(fail("chassis", "-", "catalog has no chassis".to_string()));
        }
        if self.motors.is_empty() {
            return Err(fail("motor", "-", "catalog has no motors".to_string()));
        }
        if self.batteries.is_empty() {
            return Err(fail("battery", "-", "catalog has no batteries; no build can hold a battery module".to_string()));
        }
        if self.compute.is_empty() {
            return Err(fail("compute unit", "-", "catalog has no compute units".to_string()));
        }

        for c in &self.chassis {
            check_cost("chassis", &c.id, c.cost)?;
            check_mass("chassis", &c.id, c.mass_kg)?;
        }
        for m in &self.motors {
            check_cost("motor", &m.id, m.cost)?;
            check_mass("motor", &m.id, m.mass_kg)?;
            check_positive("motor", &m.id, "torque_Nm", m.torque_nm)?;
            check_non_negative("motor", &m.id, "peak_power_W", m.peak_power_w)?;
        }
        for b in &self.batteries {
            check_cost("battery", &b.id, b.cost)?;
            check_mass("battery", &b.id, b.mass_kg)?;
            check_positive("battery", &b.id, "capacity_Wh", b.capacity_wh)?;
        }
        for t in &self.tires {
            check_cost("tire", &t.id, t.cost)?;
            check_mass("tire", &t.id, t.mass_kg)?;
            check_positive("tire", &t.id, "radius_m", t.radius_m)?;
        }
        for c in &self.compute {
            check_cost("compute unit", &c.id, c.cost)?;
            check_mass("compute unit", &c.id, c.mass_kg)?;
            check_positive("compute unit", &c.id, "benchmark_score", c.benchmark_score)?;
            check_non_negative("compute unit", &c.id, "power_W", c.power_w)?;
        }
        for c in &self.comm {
            check_positive("comm method", &c.id, "range_km", c.range_km)?;
            if c.cost_per_cell.cents() < 0 {
                return Err(fail("comm method", &c.id, format!("cost_per_cell must be non-negative, got {}", c.cost_per_cell)));
            }
        }
        for e in &self.edge_servers {
            check_cost("edge server", &e.id, e.cost)?;
            if let Some(score) = e.benchmark_score {
                check_positive("edge server", &e.id, "benchmark_score", score)?;
            }
        }
        for s in &self.sensors {
            check_cost("sensor", &s.id, s.cost)?;
            check_mass("sensor", &s.id, s.mass_kg)?;
            check_non_negative("sensor", &s.id, "power_W", s.power_w)?;
        }
        for c in &self.crops {
            if c.allowed_platforms.is_empty() {
                return Err(fail("crop", c.crop.as_str(), "allowed_platforms is empty".to_string()));
            }
        }
        for a in &self.applications {
            match APPLICATION_TABLE.iter().find(|row| row.0 == a.name) {
                None => return Err(fail("application", &a.name, "not a known application".to_string())),
                Some(&(_, mode, platform)) => {
                    if mode != a.compute_mode || platform != a.platform {
                        return Err(fail(
                            "application",
                            &a.name,
                            format!("expected compute_mode {mode:?} and platform {platform:?}"),
                        ));
                    }
                }
            }
            if a.extra_cost.cents() < 0 {
                return Err(fail("application", &a.name, "extra_cost must be non-negative".to_string()));
            }
            check_mass("application", &a.name, a.extra_mass_kg)?;
        }

        let mut kinds = HashSet::new();
        for l in &self.layouts {
            let id = l.vehicle_kind.as_str();
            if !kinds.insert(l.vehicle_kind) {
                return Err(fail("layout", id, "duplicate layout".to_string()));
            }
            if l.motor_counts.is_empty() || l.motor_counts.contains(&0) {
                return Err(fail("layout", id, "motor_counts must be non-empty and positive".to_string()));
            }
            if l.battery_counts.is_empty() {
                return Err(fail("layout", id, "battery_counts is empty".to_string()));
            }
            match l.vehicle_kind {
                VehicleKind::Rover => {
                    if l.tire_counts.is_empty() || l.tire_counts.iter().any(|&t| t < 3) {
                        return Err(fail("layout", id, "rovers need tire_counts of at least 3".to_string()));
                    }
                }
                VehicleKind::Drone => {
                    if !l.tire_counts.is_empty() {
                        return Err(fail("layout", id, "drones carry no tires".to_string()));
                    }
                }
            }
            check_positive("layout", id, "coverage_calibration", l.coverage_calibration)?;
        }
        if self.layouts.is_empty() {
            return Err(fail("layout", "-", "catalog has no layouts".to_string()));
        }
        Ok(())
    }
}

/// Parses and validates catalog text.
pub fn parse_catalog(text: &str, origin: &str) -> Result<ComponentCatalog, CatalogError> {
    let catalog: ComponentCatalog = toml::from_str(text).map_err(|e| CatalogError::Schema {
        origin: origin.to_string(),
        line: e.span().map(|span| line_of(text, span.start)),
        message: e.message().to_string(),
    })?;
    catalog.validate(origin)?;
    Ok(catalog)
}

pub fn load_catalog(path: impl AsRef<Path>) -> Result<ComponentCatalog, CatalogError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| CatalogError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_catalog(&text, &path.display().to_string())
}

pub(crate) fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].bytes().filter(|&b| b == b'\n').count() + 1
}

const DEFAULT_CATALOG: &str = include_str!("../data/default_catalog.toml");
const PROTOTYPE_CATALOG: &str = include_str!("../data/prototype_catalog.toml");

/// Bundled synthetic catalog.
pub fn default_catalog() -> ComponentCatalog {
    parse_catalog(DEFAULT_CATALOG, "default_catalog").expect("bundled catalog is valid")
}

/// Bundled catalog holding the calibrated prototype rover and drone.
pub fn prototype_catalog() -> ComponentCatalog {
    parse_catalog(PROTOTYPE_CATALOG, "prototype_catalog").expect("bundled catalog is valid")
}

/// Intersection of the crop's platforms with every application's platform.
pub fn compatible_platforms(
    crop: &CropProfile,
    apps: &[ApplicationProfile],
) -> Result<PlatformSet, CompatibilityError> {
    let mut allowed = crop.allowed_platforms.clone();
    let mut narrowed_by = crop.crop.as_str().to_string();
    for app in apps {
        let fit = app.platform.platforms();
        let next: PlatformSet = allowed.intersection(&fit).copied().collect();
        if next.is_empty() {
            // Blame the crop when it alone rules the application out.
            let left = if crop.allowed_platforms.is_disjoint(&fit) {
                crop.crop.as_str().to_string()
            } else {
                narrowed_by
            };
            return Err(CompatibilityError { left, right: app.name.clone() });
        }
        if next.len() < allowed.len() {
            narrowed_by = app.name.clone();
        }
        allowed = next;
    }
    Ok(allowed)
}

/// Compute kinds permitted by the applications and whether an edge server
/// is required. Onboard work needs an accelerator; any offboard work needs
/// the edge server.
pub fn required_compute_kinds(apps: &[ApplicationProfile]) -> (BTreeSet<ComputeKind>, bool) {
    let any_onboard = apps.iter().any(|a| a.compute_mode == ComputeMode::Onboard);
    let any_offboard = apps.iter().any(|a| a.compute_mode == ComputeMode::Offboard);
    let kinds = if any_onboard {
        [ComputeKind::Gpu, ComputeKind::Tpu].into_iter().collect()
    } else {
        [ComputeKind::Cpu, ComputeKind::Gpu, ComputeKind::Tpu].into_iter().collect()
    };
    (kinds, any_offboard)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn app(name: &str) -> ApplicationProfile {
        ApplicationProfile::standard(name).unwrap()
    }

    #[test]
    fn picking_on_trees_is_rover_only() {
        let got = compatible_platforms(&CropProfile::recommended(CropClass::Tree), &[app("autonomous_picking")]).unwrap();
        assert_eq!(got, PlatformFit::Rover.platforms());
    }

    #[test]
    fn vine_monitoring_allows_both() {
        let got = compatible_platforms(
            &CropProfile::recommended(CropClass::Vine),
            &[app("general_crop_monitoring"), app("yield_estimation")],
        )
        .unwrap();
        assert_eq!(got, PlatformFit::Both.platforms());
    }

    #[test]
    fn indoor_fence_inspection_conflicts() {
        let err = compatible_platforms(&CropProfile::recommended(CropClass::Indoor), &[app("fence_inspection")]).unwrap_err();
        assert_eq!(err, CompatibilityError { left: "indoor".into(), right: "fence_inspection".into() });
    }

    #[test]
    fn conflicting_applications_are_named() {
        let err = compatible_platforms(
            &CropProfile::recommended(CropClass::Cereal),
            &[app("soil_monitoring"), app("fence_inspection")],
        )
        .unwrap_err();
        assert_eq!(err.left, "soil_monitoring");
        assert_eq!(err.right, "fence_inspection");
    }

    #[test]
    fn compute_kind_rules() {
        use ComputeKind::*;
        let (k, edge) = required_compute_kinds(&[app("autonomous_picking")]);
        assert_eq!(k, [Gpu, Tpu].into_iter().collect());
        assert!(!edge);
        let (k, edge) = required_compute_kinds(&[app("yield_estimation")]);
        assert_eq!(k, [Cpu, Gpu, Tpu].into_iter().collect());
        assert!(edge);
        let (k, edge) = required_compute_kinds(&[app("soil_ph_sampling"), app("climate_mapping")]);
        assert_eq!(k, [Gpu, Tpu].into_iter().collect());
        assert!(edge);
    }

    #[test]
    fn crop_rules() {
        assert_eq!(CropClass::FiberLegume.recommended_platforms(), PlatformFit::Drone.platforms());
        assert_eq!(CropClass::EarlyPaddy.recommended_platforms(), PlatformFit::Drone.platforms());
        assert_eq!(CropClass::Oilseed.recommended_platforms(), PlatformFit::Both.platforms());
    }

    #[test]
    fn bundled_catalog_has_options_per_kind() {
        let cat = default_catalog();
        for kind in VehicleKind::ALL {
            assert!(cat.chassis.iter().filter(|c| c.vehicle_kind == kind).count() >= 2);
            assert!(cat.motors.iter().filter(|m| m.vehicle_kind.is_none_or(|k| k == kind)).count() >= 2);
            assert!(cat.batteries.iter().filter(|b| b.vehicle_kind.is_none_or(|k| k == kind)).count() >= 2);
        }
        assert_eq!(cat.crops.len(), CropClass::ALL.len());
        assert_eq!(cat.applications.len(), APPLICATION_TABLE.len());
        prototype_catalog();
    }

    #[test]
    fn negative_cost_motor_is_named() {
        let text = DEFAULT_CATALOG.replacen("cost = 42.00 # motor-under-test", "cost = -42.00", 1);
        assert_ne!(text, DEFAULT_CATALOG, "fixture marker missing");
        match parse_catalog(&text, "t") {
            Err(CatalogError::Validation { category: "motor", id, .. }) => assert_eq!(id, "rover-motor-small"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn empty_battery_list_rejected() {
        let mut cat = default_catalog();
        cat.batteries.clear();
        assert!(matches!(cat.validate("t"), Err(CatalogError::Validation { category: "battery", .. })));
    }

    #[test]
    fn unknown_crop_rejected_with_line() {
        let text = "layouts = []\nchassis = []\nmotors = []\nbatteries = []\ncompute = []\n[[crops]]\ncrop = \"moonbeans\"\nallowed_platforms = [\"rover\"]\n";
        match parse_catalog(text, "t") {
            Err(CatalogError::Schema { line: Some(line), message, .. }) => {
                assert_eq!(line, 7, "{message}");
                assert!(message.contains("moonbeans") || message.contains("variant"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn mismatched_application_row_rejected() {
        let mut cat = default_catalog();
        cat.applications[0].platform = PlatformFit::Drone;
        assert!(matches!(cat.validate("t"), Err(CatalogError::Validation { category: "application", .. })));
    }
}
