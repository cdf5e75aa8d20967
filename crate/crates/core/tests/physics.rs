mod common;

use fleet_dse::derive::{carry_weight, component_weight, derive_metrics, max_payload, weight_factor, Physics};
use fleet_dse::ExactPhysics;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn payload_is_carry_minus_component_exactly() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let p = ExactPhysics::default();
    for _ in 0..1000 {
        let b = common::random_build(&mut rng);
        let m = derive_metrics(&b, BigRational::one(), &p).unwrap();
        let expected = carry_weight(&b, &p).unwrap() - component_weight(&b, &p);
        assert_eq!(m.max_payload_kg, expected);
        assert_eq!(m.max_payload_kg, max_payload(m.carry_weight_kg.clone(), m.component_weight_kg.clone()));
    }
}

#[test]
fn weight_factor_range_and_midpoint() {
    assert_eq!(weight_factor(rat(100, 1)), rat(1, 2));
    assert_eq!(weight_factor(BigRational::zero()), BigRational::one());
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let p = Physics::<f64>::default();
    let mut seen = 0;
    for _ in 0..1000 {
        let b = common::random_build(&mut rng);
        let m = derive_metrics(&b, 1.0, &p).unwrap();
        if m.max_payload_kg >= 0.0 {
            seen += 1;
            assert!(m.weight_factor > 0.0 && m.weight_factor <= 1.0, "{}", m.weight_factor);
        }
    }
    assert!(seen > 100);
}

#[test]
fn carry_is_inverse_in_tire_radius() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let p = ExactPhysics::default();
    let mut rovers = 0;
    while rovers < 300 {
        let b = common::random_build(&mut rng);
        let Some(t) = &b.tires else { continue };
        rovers += 1;
        let r = BigRational::from_float(t.tire.radius_m).unwrap();
        let base = carry_weight(&b, &p).unwrap();
        for k in [2u32, 3, 5] {
            let mut scaled = b.clone();
            scaled.tires.as_mut().unwrap().tire.radius_m = t.tire.radius_m * f64::from(k);
            let r2 = BigRational::from_float(scaled.tires.as_ref().unwrap().tire.radius_m).unwrap();
            // carry · r is invariant
            assert_eq!(carry_weight(&scaled, &p).unwrap() * r2, base.clone() * r.clone());
        }
    }
}

#[test]
fn single_precision_tracks_double() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..200 {
        let b = common::random_build(&mut rng);
        let d = derive_metrics::<f64>(&b, 1.0, &Physics::default()).unwrap();
        let s = derive_metrics::<f32>(&b, 1.0, &Physics::default()).unwrap();
        assert!((f64::from(s.max_payload_kg) - d.max_payload_kg).abs() <= 1e-3 * d.max_payload_kg.abs().max(1.0));
    }
}
