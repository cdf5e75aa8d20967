use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{other_value, random_vector, rank, BaselineParams, BaselineRun, Tracker};
use crate::optimize::{Evaluation, SearchSpace};

/// Generational GA over count vectors: binary tournaments, one-point
/// crossover, per-gene random-reset mutation, and one elite carried over.
pub fn genetic_algorithm(space: &SearchSpace, seed: u64, params: &BaselineParams) -> BaselineRun {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bounds = space.bounds();
    let d = bounds.len();
    let ga = params.ga;
    let budget = params.evaluations.max(1);
    let pop_size = ga.population.clamp(1, budget);
    let mutation = ga.mutation.unwrap_or(1.0 / d.max(1) as f64);
    let mut t = Tracker::new(space, budget, params.pool_limit);

    let mut pop: Vec<(Vec<u32>, Evaluation)> = Vec::with_capacity(pop_size);
    for _ in 0..pop_size {
        let x = random_vector(&mut rng, &bounds);
        let e = t.eval(&x).expect("population fits the budget");
        pop.push((x, e));
    }

    let mut generation = 0;
    while !t.exhausted() && ga.generations.is_none_or(|g| generation < g) {
        generation += 1;
        let elite = pop.iter().min_by(|a, b| rank(&a.1, &b.1)).expect("non-empty").clone();
        let mut next = vec![elite];
        while next.len() < pop_size {
            let a = tournament(&mut rng, &pop);
            let b = tournament(&mut rng, &pop);
            let mut child = if d > 1 && rng.gen_bool(ga.crossover) {
                let cut = rng.gen_range(1..d);
                pop[a].0[..cut].iter().chain(&pop[b].0[cut..]).copied().collect()
            } else {
                pop[a].0.clone()
            };
            for (g, &ub) in child.iter_mut().zip(&bounds) {
                if rng.gen_bool(mutation.clamp(0.0, 1.0)) {
                    *g = other_value(&mut rng, *g, ub);
                }
            }
            let Some(e) = t.eval(&child) else { break };
            next.push((child, e));
        }
        pop = next;
    }
    t.finish("ga", seed, started)
}

fn tournament(rng: &mut ChaCha8Rng, pop: &[(Vec<u32>, Evaluation)]) -> usize {
    let a = rng.gen_range(0..pop.len());
    let b = rng.gen_range(0..pop.len());
    if rank(&pop[b].1, &pop[a].1).is_lt() {
        b
    } else {
        a
    }
}
