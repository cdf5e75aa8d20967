//! Physical model of a single vehicle build: masses, payload, coverage,
//! runtime, and unit cost.
//!
//! All formulas are generic over [`Scalar`] so they can be evaluated in
//! floating point for search and in exact rationals for identity checks.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{Battery, Chassis, ComputeUnit, Motor, Sensor, Tire, VehicleKind};
use crate::money::Money;
use crate::scalar::Scalar;

pub const STANDARD_GRAVITY: f64 = 9.81;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TireSet {
    pub tire: Tire,
    pub count: u32,
}

/// Component selection for one vehicle, before any derived quantity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Build {
    pub kind: VehicleKind,
    pub chassis: Chassis,
    pub motor: Motor,
    pub motor_count: u32,
    pub battery: Battery,
    pub battery_count: u32,
    /// Present for rovers only.
    pub tires: Option<TireSet>,
    pub compute: ComputeUnit,
    pub sensors: Vec<Sensor>,
    pub apps_extra_mass_kg: f64,
    pub apps_extra_cost: Money,
}

impl Build {
    /// Tire count entering the coverage model; drones count as one.
    pub fn coverage_tire_count(&self) -> u32 {
        match (&self.kind, &self.tires) {
            (VehicleKind::Rover, Some(t)) => t.count,
            _ => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Physics<T> {
    pub gravity: T,
    /// Restrict component weight to chassis, motors, batteries, and tires.
    pub strict_component_weight: bool,
}

impl<T: Scalar> Default for Physics<T> {
    fn default() -> Self {
        Physics { gravity: T::lit(STANDARD_GRAVITY), strict_component_weight: false }
    }
}

impl<T: Scalar> Physics<T> {
    pub fn strict() -> Self {
        Physics { strict_component_weight: true, ..Physics::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivedMetrics<T> {
    pub component_weight_kg: T,
    pub carry_weight_kg: T,
    pub max_payload_kg: T,
    pub weight_factor: T,
    pub coverage_area_m2: T,
    pub runtime_hours: T,
    pub unit_cost: Money,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DeriveError {
    #[error("rover `{0}` has a tire radius of zero")]
    ZeroTireRadius(String),
    #[error("rover build without tires")]
    MissingTires,
    #[error("total peak power is zero; runtime is undefined")]
    ZeroPower,
}

fn times<T: Scalar>(count: u32, value: f64) -> T {
    T::from_count(count) * T::lit(value)
}

pub fn component_weight<T: Scalar>(build: &Build, physics: &Physics<T>) -> T {
    let mut total = T::lit(build.chassis.mass_kg)
        + times::<T>(build.motor_count, build.motor.mass_kg)
        + times::<T>(build.battery_count, build.battery.mass_kg);
    if build.kind == VehicleKind::Rover {
        if let Some(t) = &build.tires {
            total = total + times::<T>(t.count, t.tire.mass_kg);
        }
    }
    if !physics.strict_component_weight {
        total = total + T::lit(build.compute.mass_kg) + T::lit(build.apps_extra_mass_kg);
        for s in &build.sensors {
            total = total + T::lit(s.mass_kg);
        }
    }
    total
}

/// Mass the motors can move: per-motor torque times motor count over tire
/// radius and gravity. Drones drop the tire radius.
pub fn carry_weight<T: Scalar>(build: &Build, physics: &Physics<T>) -> Result<T, DeriveError> {
    let force = times::<T>(build.motor_count, build.motor.torque_nm);
    match build.kind {
        VehicleKind::Drone => Ok(force / physics.gravity.clone()),
        VehicleKind::Rover => {
            let tires = build.tires.as_ref().ok_or(DeriveError::MissingTires)?;
            let radius = T::lit(tires.tire.radius_m);
            if radius == T::zero() {
                return Err(DeriveError::ZeroTireRadius(tires.tire.id.clone()));
            }
            Ok(force / (radius * physics.gravity.clone()))
        }
    }
}

/// May be negative, which marks a build that cannot carry itself.
pub fn max_payload<T: Scalar>(carry: T, component: T) -> T {
    carry - component
}

pub fn weight_factor<T: Scalar>(max_payload_kg: T) -> T {
    T::one() / (T::one() + max_payload_kg / T::lit(100.0))
}

/// Per-unit coverage: battery count × tire count × component weight ×
/// weight factor × calibration. Builds with negative payload cover nothing.
pub fn coverage_area<T: Scalar>(build: &Build, component: T, max_payload_kg: T, calibration: T) -> T {
    if max_payload_kg < T::zero() {
        return T::zero();
    }
    T::from_count(build.battery_count)
        * T::from_count(build.coverage_tire_count())
        * component
        * weight_factor(max_payload_kg)
        * calibration
}

pub fn total_peak_power<T: Scalar>(build: &Build) -> T {
    let mut power = times::<T>(build.motor_count, build.motor.peak_power_w) + T::lit(build.compute.power_w);
    for s in &build.sensors {
        power = power + T::lit(s.power_w);
    }
    power
}

pub fn runtime_hours<T: Scalar>(build: &Build) -> Result<T, DeriveError> {
    let power: T = total_peak_power(build);
    if power <= T::zero() {
        return Err(DeriveError::ZeroPower);
    }
    Ok(times::<T>(build.battery_count, build.battery.capacity_wh) / power)
}

/// Base cost of the vehicle, excluding application-specific parts.
pub fn unit_cost(build: &Build) -> Money {
    let tires = build.tires.as_ref().map_or(Money::ZERO, |t| t.tire.cost * t.count);
    build.chassis.cost
        + build.motor.cost * build.motor_count
        + build.battery.cost * build.battery_count
        + tires
        + build.compute.cost
        + build.sensors.iter().map(|s| s.cost).sum()
}

pub fn derive_metrics<T: Scalar>(build: &Build, calibration: T, physics: &Physics<T>) -> Result<DerivedMetrics<T>, DeriveError> {
    let component = component_weight(build, physics);
    let carry = carry_weight(build, physics)?;
    let payload = max_payload(carry.clone(), component.clone());
    let factor = weight_factor(payload.clone());
    let area = coverage_area(build, component.clone(), payload.clone(), calibration);
    let runtime = runtime_hours(build)?;
    Ok(DerivedMetrics {
        component_weight_kg: component,
        carry_weight_kg: carry,
        max_payload_kg: payload,
        weight_factor: factor,
        coverage_area_m2: area,
        runtime_hours: runtime,
        unit_cost: unit_cost(build),
    })
}
