use thiserror::Error;

use crate::catalog::{compatible_platforms, required_compute_kinds, CompatibilityError, ComponentCatalog, VehicleKind};
use crate::constraints::{check_flight_time, Rule};
use crate::derive::{Build, TireSet};
use crate::fleet::Configuration;
use crate::money::Money;
use crate::scenario::Scenario;

#[derive(Debug, Error, PartialEq)]
pub enum EnumerateError {
    #[error(transparent)]
    Incompatible(#[from] CompatibilityError),
    #[error("no feasible configuration: the {rule} rule removes every candidate ({detail})")]
    Empty { rule: Rule, detail: String },
}

/// Filters in the order they are applied; the first one to exhaust the
/// candidate set is reported as binding.
const FILTER_ORDER: [Rule; 6] = [Rule::SizeMatch, Rule::BatteryFloor, Rule::ComputeKind, Rule::Power, Rule::Payload, Rule::FlightTime];

/// Every build the catalog allows for the scenario, with metrics filled in.
pub fn enumerate_configurations(catalog: &ComponentCatalog, scen: &Scenario) -> Result<Vec<Configuration>, EnumerateError> {
    let platforms = compatible_platforms(&scen.crop, &scen.apps)?;
    let (kinds, _) = required_compute_kinds(&scen.apps);
    let extra_mass: f64 = scen.apps.iter().map(|a| a.extra_mass_kg).sum();
    let extra_cost: Money = scen.apps.iter().map(|a| a.extra_cost).sum();

    let mut out = Vec::new();
    let mut rejected = [0usize; FILTER_ORDER.len()];
    let mut total = 0usize;

    for kind in VehicleKind::ALL.into_iter().filter(|k| platforms.contains(k)) {
        let Some(layout) = catalog.layout(kind) else { continue };
        let sensors = catalog.sensors_for(kind);
        let fits = |k: Option<VehicleKind>| k.is_none_or(|k| k == kind);
        let tire_sets: Vec<Option<TireSet>> = match kind {
            VehicleKind::Rover => catalog
                .tires
                .iter()
                .flat_map(|t| layout.tire_counts.iter().map(move |&count| Some(TireSet { tire: t.clone(), count })))
                .collect(),
            VehicleKind::Drone => vec![None],
        };

        for chassis in catalog.chassis.iter().filter(|c| c.vehicle_kind == kind) {
            for motor in catalog.motors.iter().filter(|m| fits(m.vehicle_kind)) {
                for &motor_count in &layout.motor_counts {
                    for battery in catalog.batteries.iter().filter(|b| fits(b.vehicle_kind)) {
                        for &battery_count in &layout.battery_counts {
                            for tires in &tire_sets {
                                for compute in &catalog.compute {
                                    total += 1;
                                    let build = Build {
                                        kind,
                                        chassis: chassis.clone(),
                                        motor: motor.clone(),
                                        motor_count,
                                        battery: battery.clone(),
                                        battery_count,
                                        tires: tires.clone(),
                                        compute: compute.clone(),
                                        sensors: sensors.clone(),
                                        apps_extra_mass_kg: extra_mass,
                                        apps_extra_cost: extra_cost,
                                    };
                                    match screen(build, layout.coverage_calibration, &kinds, scen) {
                                        Ok(cfg) => out.push(cfg),
                                        Err(rule) => {
                                            let i = FILTER_ORDER.iter().position(|r| *r == rule).expect("known filter");
                                            rejected[i] += 1;
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    if out.is_empty() {
        if total == 0 {
            return Err(EnumerateError::Empty {
                rule: Rule::Platform,
                detail: "catalog has no components for the compatible vehicle kinds".to_string(),
            });
        }
        let mut remaining = total;
        for (rule, n) in FILTER_ORDER.iter().zip(rejected) {
            remaining -= n;
            if remaining == 0 {
                return Err(EnumerateError::Empty { rule: *rule, detail: format!("{total} candidates, {n} rejected at this step") });
            }
        }
    }
    Ok(out)
}

fn screen(
    build: Build,
    calibration: f64,
    kinds: &std::collections::BTreeSet<crate::catalog::ComputeKind>,
    scen: &Scenario,
) -> Result<Configuration, Rule> {
    if build.motor.size_class != build.chassis.size_class {
        return Err(Rule::SizeMatch);
    }
    if build.battery_count < 1 {
        return Err(Rule::BatteryFloor);
    }
    if !kinds.contains(&build.compute.kind) {
        return Err(Rule::ComputeKind);
    }
    let cfg = Configuration::new(build, calibration).map_err(|_| Rule::Power)?;
    if cfg.metrics.runtime_hours.is_nan() || cfg.metrics.runtime_hours <= 0.0 {
        return Err(Rule::Power);
    }
    if cfg.metrics.max_payload_kg < 0.0 {
        return Err(Rule::Payload);
    }
    if !check_flight_time(&cfg, scen) {
        return Err(Rule::FlightTime);
    }
    Ok(cfg)
}
