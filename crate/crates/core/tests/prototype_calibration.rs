use fleet_dse::catalog::prototype_catalog;
use fleet_dse::constraints::check_flight_time;
use fleet_dse::design_file::parse_design;
use fleet_dse::scenario::{parse_scenario, Scenario};
use fleet_dse::{Money, VehicleKind};

const ROVER: &str = r#"
[[lines]]
chassis = "rover-plastic-large"
motor = "rover-motor-large"
motor_count = 4
battery = "rover-battery-medium"
battery_count = 1
tire = "tire-standard"
tire_count = 4
compute = "rpi-4b"
units = 1
"#;

const DRONE: &str = r#"
[[lines]]
chassis = "drone-metal-large"
motor = "drone-motor-large"
motor_count = 4
battery = "drone-battery-large"
battery_count = 1
compute = "rpi-4b"
units = 1
"#;

fn scenario() -> Scenario {
    let file = parse_scenario(
        "budget = 10000.00\nfarm_size_m2 = 4047\ncrop = \"vine\"\napplications = [\"general_crop_monitoring\"]\n",
        "prototype",
    )
    .unwrap();
    Scenario::resolve(&file, &prototype_catalog()).unwrap()
}

fn unit(text: &str) -> fleet_dse::Configuration {
    let d = parse_design(text, "fixture").unwrap().resolve(&prototype_catalog(), &scenario()).unwrap();
    d.lines[0].config.clone()
}

#[test]
fn rover_matches_published_figures() {
    let r = unit(ROVER);
    assert_eq!(r.kind(), VehicleKind::Rover);
    assert_eq!(r.unit_cost(), Money::from_cents(344956));
    assert_eq!(r.unit_cost().to_string(), "3449.56");
    assert!((r.payload_kg() - 34.67).abs() < 0.005, "{}", r.payload_kg());
    assert!((r.runtime_hours() - 123.23).abs() < 0.005, "{}", r.runtime_hours());
}

#[test]
fn drone_matches_published_figures() {
    let s = scenario();
    let d = unit(DRONE);
    assert_eq!(d.unit_cost().to_string(), "2345.34");
    assert!((d.runtime_hours() - 0.22).abs() <= 0.005, "{}", d.runtime_hours());
    assert!((d.payload_kg() - 0.1).abs() < 0.005, "{}", d.payload_kg());
    assert!(check_flight_time(&d, &s));
}
