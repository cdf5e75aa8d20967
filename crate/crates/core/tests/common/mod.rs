#![allow(dead_code)]

use fleet_dse::catalog::default_catalog;
use fleet_dse::fleet::FleetLine;
use fleet_dse::optimize::enumerate_configurations;
use fleet_dse::scenario::bundled_scenario;
use fleet_dse::{Configuration, FleetDesign, Scenario};
use rand::Rng;

pub fn case_study(name: &str) -> (Scenario, Vec<Configuration>) {
    let cat = default_catalog();
    let scen = Scenario::resolve(&bundled_scenario(name).expect("bundled"), &cat).expect("resolves");
    let configs = enumerate_configurations(&cat, &scen).expect("configurations");
    (scen, configs)
}

pub fn design(scen: &Scenario, lines: Vec<(Configuration, u32, u32)>) -> FleetDesign {
    FleetDesign::new(
        lines.into_iter().map(|(config, units, max_units)| FleetLine { config, units, max_units }).collect(),
        scen.edge_server.clone(),
        scen.comm.clone(),
    )
}

/// A random fleet of up to three lines, and a copy of `scen` whose budget
/// and farm size sit near the fleet's totals so both verdicts occur.
pub fn random_case<R: Rng>(rng: &mut R, scen: &Scenario, configs: &[Configuration]) -> (FleetDesign, Scenario) {
    let lines = (0..rng.gen_range(0..=3))
        .map(|_| {
            let c = configs[rng.gen_range(0..configs.len())].clone();
            let max = rng.gen_range(1..=40);
            (c, rng.gen_range(0..=max), max)
        })
        .collect::<Vec<_>>();
    // Repeated configurations would be merged by a real solver; keep ids unique.
    let mut seen = std::collections::HashSet::new();
    let lines = lines.into_iter().filter(|l| seen.insert(l.0.id.clone())).collect();
    let d = design(scen, lines);
    let mut s = scen.clone();
    let jitter = |rng: &mut R, v: i64| match rng.gen_range(0..4) {
        0 => v,
        1 => v + 1,
        2 => v - 1,
        _ => v + rng.gen_range(-v.abs() / 4 - 1..=v.abs() / 4 + 1),
    };
    s.budget = fleet_dse::Money::from_cents(jitter(rng, d.totals.total_cost.cents()).max(1));
    s.farm_size_m2 = jitter(rng, d.totals.coverage_m2).max(1);
    (d, s)
}

/// A build assembled from random default-catalog parts with perturbed
/// masses, torques, and radii (all on a 1/1000 grid, so exact as rationals).
pub fn random_build<R: Rng>(rng: &mut R) -> fleet_dse::derive::Build {
    use fleet_dse::derive::{Build, TireSet};
    use fleet_dse::VehicleKind;
    let cat = default_catalog();
    let mut pick = |n: usize| rng.gen_range(0..n);
    let chassis = cat.chassis[pick(cat.chassis.len())].clone();
    let kind = chassis.vehicle_kind;
    let mut motor = cat.motors[pick(cat.motors.len())].clone();
    let mut battery = cat.batteries[pick(cat.batteries.len())].clone();
    let compute = cat.compute[pick(cat.compute.len())].clone();
    let tires = match kind {
        VehicleKind::Rover => {
            let mut tire = cat.tires[pick(cat.tires.len())].clone();
            tire.radius_m = f64::from(rng.gen_range(20..=400)) / 1000.0;
            tire.mass_kg = f64::from(rng.gen_range(0..=2000)) / 1000.0;
            Some(TireSet { tire, count: rng.gen_range(3..=6) })
        }
        VehicleKind::Drone => None,
    };
    motor.torque_nm = f64::from(rng.gen_range(1..=20_000)) / 1000.0;
    motor.mass_kg = f64::from(rng.gen_range(0..=3000)) / 1000.0;
    battery.mass_kg = f64::from(rng.gen_range(0..=8000)) / 1000.0;
    let mut chassis = chassis;
    chassis.mass_kg = f64::from(rng.gen_range(0..=20_000)) / 1000.0;
    Build {
        kind,
        chassis,
        motor,
        motor_count: rng.gen_range(1..=8),
        battery,
        battery_count: rng.gen_range(1..=3),
        tires,
        compute,
        sensors: cat.sensors_for(kind),
        apps_extra_mass_kg: f64::from(rng.gen_range(0..=500)) / 1000.0,
        apps_extra_cost: fleet_dse::Money::ZERO,
    }
}
