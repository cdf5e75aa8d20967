//! Branch and bound against exhaustive enumeration.

use std::collections::HashSet;
use std::time::Instant;

use fleet_dse::optimize::{branch_and_bound, solve_with_cuts, IlpItem, IlpProblem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every feasible vector's objective, ascending, in odometer order for ties.
fn brute_force(p: &IlpProblem) -> Vec<(i128, Vec<u32>)> {
    let mut out = Vec::new();
    let mut x = vec![0u32; p.items.len()];
    loop {
        if p.is_feasible(&x) {
            out.push((p.objective(&x), x.clone()));
        }
        let mut i = 0;
        loop {
            if i == x.len() {
                out.sort_by_key(|e| e.0);
                return out;
            }
            if x[i] < p.items[i].ub {
                x[i] += 1;
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

fn random_problem(rng: &mut ChaCha8Rng) -> IlpProblem {
    let n = rng.gen_range(1..=5);
    let items: Vec<IlpItem> = (0..n)
        .map(|_| IlpItem {
            cost: rng.gen_range(1..=500),
            area: rng.gen_range(0..=60),
            coef: rng.gen_range(-1000..=1000),
            ub: rng.gen_range(0..=12),
        })
        .collect();
    let p = IlpProblem { items, budget: rng.gen_range(0..=3000), demand: rng.gen_range(0..=300) };
    assert!(p.box_size() <= 1e6);
    p
}

#[test]
fn optimum_matches_exhaustive_enumeration() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut feasible = 0;
    for _ in 0..300 {
        let p = random_problem(&mut rng);
        let all = brute_force(&p);
        let (pool, _) = branch_and_bound(&p, 1, &HashSet::new());
        match all.first() {
            None => assert!(pool.is_empty(), "{p:?}"),
            Some((best, _)) => {
                feasible += 1;
                assert_eq!(pool[0].objective, *best, "{p:?}");
                assert!(p.is_feasible(&pool[0].x));
                assert_eq!(p.objective(&pool[0].x), *best);
            }
        }
    }
    assert!(feasible >= 50, "only {feasible} feasible instances");
    assert!(start.elapsed().as_secs_f64() < 10.0);
}

#[test]
fn k_best_pool_matches_sorted_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let p = random_problem(&mut rng);
        let all = brute_force(&p);
        let (pool, _) = branch_and_bound(&p, 20, &HashSet::new());
        let expected: Vec<i128> = all.iter().take(20).map(|e| e.0).collect();
        let got: Vec<i128> = pool.iter().map(|r| r.objective).collect();
        assert_eq!(got, expected, "{p:?}");
        let distinct: HashSet<&Vec<u32>> = pool.iter().map(|r| &r.x).collect();
        assert_eq!(distinct.len(), pool.len());
        assert!(pool.iter().all(|r| p.is_feasible(&r.x) && p.objective(&r.x) == r.objective));
    }
}

#[test]
fn no_good_cuts_give_the_same_objective_sequence() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..60 {
        let p = random_problem(&mut rng);
        let (pool, _) = branch_and_bound(&p, 8, &HashSet::new());
        let (cuts, _) = solve_with_cuts(&p, 8);
        let a: Vec<i128> = pool.iter().map(|r| r.objective).collect();
        let b: Vec<i128> = cuts.iter().map(|r| r.objective).collect();
        assert_eq!(a, b, "{p:?}");
    }
}

#[test]
fn excluded_vectors_never_return() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..60 {
        let p = random_problem(&mut rng);
        let all = brute_force(&p);
        let excluded: HashSet<Vec<u32>> = all.iter().take(3).map(|e| e.1.clone()).collect();
        let (pool, _) = branch_and_bound(&p, 1, &excluded);
        let rest: Vec<i128> = all.iter().filter(|e| !excluded.contains(&e.1)).map(|e| e.0).collect();
        assert_eq!(pool.first().map(|r| r.objective), rest.first().copied(), "{p:?}");
    }
}

#[test]
fn three_line_toy_instance() {
    let p = IlpProblem {
        items: vec![
            IlpItem { cost: 300, area: 40, coef: 500, ub: 6 },
            IlpItem { cost: 200, area: 25, coef: -200, ub: 8 },
            IlpItem { cost: 450, area: 70, coef: 900, ub: 4 },
        ],
        budget: 2000,
        demand: 150,
    };
    let all = brute_force(&p);
    let (pool, log) = branch_and_bound(&p, 1, &HashSet::new());
    assert_eq!(pool[0].objective, all[0].0);
    assert!(log.nodes > 0 && log.leaves > 0);
}
