//! The SAT path against independent oracles: truth tables for the solver,
//! exhaustive assignment for the PB encodings, and direct arithmetic for
//! design verification.

mod common;

use std::time::Instant;

use fleet_dse::constraints::{check_budget, check_coverage, Rule};
use fleet_dse::sat::{dpll_solve, encode_design, encode_pb, parse_dimacs, to_dimacs, verify, CnfFormula, EncodeError, Lit, PbConstraint, Relation};
use fleet_dse::Money;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_3cnf(rng: &mut ChaCha8Rng, n: u32) -> CnfFormula {
    let m = (3.0 * f64::from(n)).round() as usize;
    let clauses = (0..m)
        .map(|_| {
            (0..3)
                .map(|_| {
                    let v = rng.gen_range(1..=n) as Lit;
                    if rng.gen_bool(0.5) {
                        v
                    } else {
                        -v
                    }
                })
                .collect()
        })
        .collect();
    CnfFormula { num_vars: n, clauses }
}

fn truth_table_sat(f: &CnfFormula) -> bool {
    let masks: Vec<(u32, u32)> = f
        .clauses
        .iter()
        .map(|c| {
            c.iter().fold((0, 0), |(p, q), &l| {
                let bit = 1u32 << (l.unsigned_abs() - 1);
                if l > 0 {
                    (p | bit, q)
                } else {
                    (p, q | bit)
                }
            })
        })
        .collect();
    (0..1u32 << f.num_vars).any(|a| masks.iter().all(|&(p, q)| (a & p) | (!a & q) != 0))
}

#[test]
fn dpll_agrees_with_truth_tables() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut sat = 0;
    for i in 0..1000u32 {
        let f = random_3cnf(&mut rng, 1 + i % 20);
        let (solution, _) = dpll_solve(&f);
        assert_eq!(solution.is_sat(), truth_table_sat(&f), "{f:?}");
        if let fleet_dse::sat::Solution::Sat(model) = solution {
            assert!(f.satisfied_by(&model));
            sat += 1;
        }
    }
    assert!(sat > 100 && sat < 1000, "{sat} satisfiable");
}

#[test]
fn pb_encodings_match_exhaustive_assignment() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..120 {
        let n = rng.gen_range(1..=12usize);
        // Alternate small weights (unary counter) and cent-sized weights
        // (binary register).
        let scale = if rng.gen_bool(0.5) { 9 } else { 400_000 };
        let weights: Vec<i64> = (0..n).map(|_| rng.gen_range(-scale..=scale)).collect();
        let total: i64 = weights.iter().map(|w| w.abs()).sum();
        let bound = rng.gen_range(-total / 4..=total + 1);
        let relation = if rng.gen_bool(0.5) { Relation::Le } else { Relation::Ge };
        let mut base = CnfFormula::new();
        let vars: Vec<Lit> = (0..n).map(|_| base.new_var()).collect();
        let c = PbConstraint { terms: weights.iter().copied().zip(vars.iter().copied()).collect(), relation, bound };
        encode_pb(&mut base, &c);
        let any_sat = dpll_solve(&base).0.is_sat();
        let mut any_holds = false;
        for mask in 0..1u32 << n {
            let model: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
            let mut f = base.clone();
            for (i, &v) in vars.iter().enumerate() {
                f.add_clause(vec![if model[i] { v } else { -v }]);
            }
            let holds = c.holds(&model);
            any_holds |= holds;
            assert_eq!(dpll_solve(&f).0.is_sat(), holds, "{c:?} {mask:b}");
        }
        assert_eq!(any_sat, any_holds);
    }
}

#[test]
fn dual_oracle_on_ten_thousand_designs() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cases = [common::case_study("case_study_1"), common::case_study("case_study_2")];
    let (mut valid, mut invalid) = (0, 0);
    for i in 0..10_000 {
        let (scen, configs) = &cases[i % 2];
        let (design, s) = common::random_case(&mut rng, scen, configs);
        let verdict = verify(&design, &s).expect("within bounds");
        let budget = check_budget(&design, &s).pass;
        let coverage = check_coverage(&design, &s).pass;
        assert_eq!(verdict.valid, budget && coverage, "{design} vs budget {} farm {}", s.budget, s.farm_size_m2);
        assert_eq!(verdict.failed.contains(&Rule::Budget), !budget);
        assert_eq!(verdict.failed.contains(&Rule::Coverage), !coverage);
        if verdict.valid {
            valid += 1;
        } else {
            invalid += 1;
        }
    }
    assert!(valid > 1000 && invalid > 1000, "{valid} valid, {invalid} invalid");
    assert!(start.elapsed().as_secs_f64() < 30.0, "{:?}", start.elapsed());
}

#[test]
fn boundaries_are_inclusive() {
    let (scen, configs) = common::case_study("case_study_1");
    let d = common::design(&scen, vec![(configs[0].clone(), 3, 5), (configs[1].clone(), 2, 5)]);
    let mut s = scen.clone();
    s.budget = d.totals.total_cost;
    s.farm_size_m2 = d.totals.coverage_m2;
    assert!(verify(&d, &s).unwrap().valid);

    s.budget = d.totals.total_cost - Money::from_cents(1);
    let v = verify(&d, &s).unwrap();
    assert!(!v.valid);
    assert_eq!(v.failed_constraint(), Some(Rule::Budget));
    assert_eq!(v.failed, vec![Rule::Budget]);

    s.budget = d.totals.total_cost;
    s.farm_size_m2 = d.totals.coverage_m2 + 1;
    let v = verify(&d, &s).unwrap();
    assert_eq!(v.failed, vec![Rule::Coverage]);
}

#[test]
fn empty_design_fails_coverage() {
    let (scen, _) = common::case_study("case_study_1");
    let d = common::design(&scen, vec![]);
    let v = verify(&d, &scen).unwrap();
    assert!(!v.valid);
    assert_eq!(v.failed, vec![Rule::Coverage]);
}

#[test]
fn shared_costs_above_budget_give_an_empty_clause() {
    let (scen, configs) = common::case_study("case_study_2");
    let d = common::design(&scen, vec![(configs[0].clone(), 1, 1)]);
    let mut s = scen.clone();
    s.budget = d.fixed_cost() - Money::from_cents(1);
    let enc = encode_design(&d, &s).unwrap();
    assert!(enc.formula.has_empty_clause());
    assert_eq!(verify(&d, &s).unwrap().failed_constraint(), Some(Rule::Budget));
}

#[test]
fn unit_count_beyond_bound_is_rejected() {
    let (scen, configs) = common::case_study("case_study_1");
    let d = common::design(&scen, vec![(configs[0].clone(), 4, 3)]);
    assert!(matches!(verify(&d, &scen), Err(EncodeError::BoundOverflow { units: 4, max_units: 3, .. })));
}

#[test]
fn design_formula_survives_dimacs() {
    let (scen, configs) = common::case_study("case_study_2");
    let d = common::design(&scen, vec![(configs[0].clone(), 30, 40), (configs[30].clone(), 50, 60)]);
    let enc = encode_design(&d, &scen).unwrap();
    let back = parse_dimacs(&to_dimacs(&enc.formula)).unwrap();
    assert_eq!(back, enc.formula);
    assert_eq!(dpll_solve(&back).0.is_sat(), verify(&d, &scen).unwrap().valid);
}

#[test]
fn single_verification_is_fast() {
    let (scen, configs) = common::case_study("case_study_2");
    let d = common::design(&scen, vec![(configs[27].clone(), 105, 107)]);
    let start = Instant::now();
    let v = verify(&d, &scen).unwrap();
    assert!(start.elapsed().as_millis() <= 100, "{:?}", start.elapsed());
    assert_eq!(v.valid, check_budget(&d, &scen).pass && check_coverage(&d, &scen).pass);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn verification_is_deterministic_and_agrees(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (scen, configs) = common::case_study(if seed % 2 == 0 { "case_study_1" } else { "case_study_2" });
        let (design, s) = common::random_case(&mut rng, &scen, &configs);
        let a = verify(&design, &s).unwrap();
        let b = verify(&design, &s).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.valid, check_budget(&design, &s).pass && check_coverage(&design, &s).pass);
        prop_assert_eq!(encode_design(&design, &s).unwrap(), encode_design(&design, &s).unwrap());
    }
}
