use std::time::Instant;

use rand::{seq::index::sample, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{other_value, random_vector, BaselineParams, BaselineRun, Tracker};
use crate::optimize::SearchSpace;

/// Mutation strength constant of the decaying schedule.
const DECAY: f64 = 1.54468;

/// Coordinates mutated at step `t` (1-based) in dimension `d`: starts broad
/// and decays toward single-coordinate moves as `ln t / t`.
pub fn mutation_count(d: usize, t: usize) -> usize {
    let t = t.max(1) as f64;
    let k = (d as f64 * DECAY * t.ln() / t).floor() as usize;
    k.clamp(1, d.max(1))
}

/// (1+1) evolutionary algorithm: the offspring replaces the parent when it
/// is no worse.
pub fn one_plus_one_lengler(space: &SearchSpace, seed: u64, params: &BaselineParams) -> BaselineRun {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bounds = space.bounds();
    let d = bounds.len();
    let mut t = Tracker::new(space, params.evaluations.max(1), params.pool_limit);
    let mut x = random_vector(&mut rng, &bounds);
    let mut cur = t.eval(&x).expect("budget of at least one");
    let mut step = 0;
    while !t.exhausted() {
        step += 1;
        let mut y = x.clone();
        for i in sample(&mut rng, d, mutation_count(d, step)) {
            y[i] = other_value(&mut rng, y[i], bounds[i]);
        }
        let Some(e) = t.eval(&y) else { break };
        if e.penalized <= cur.penalized {
            x = y;
            cur = e;
        }
    }
    t.finish("lengler", seed, started)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_decays_to_one() {
        assert_eq!(mutation_count(10, 1), 1);
        assert_eq!(mutation_count(10, 3), 5);
        assert_eq!(mutation_count(10, 1000), 1);
        assert_eq!(mutation_count(0, 5), 1);
    }
}
