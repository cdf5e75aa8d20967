use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{random_vector, BaselineParams, BaselineRun, Tracker};
use crate::optimize::SearchSpace;

/// Uniform samples within the unit bounds.
pub fn random_search(space: &SearchSpace, seed: u64, params: &BaselineParams) -> BaselineRun {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bounds = space.bounds();
    let mut t = Tracker::new(space, params.evaluations, params.pool_limit);
    while !t.exhausted() {
        let x = random_vector(&mut rng, &bounds);
        t.eval(&x);
    }
    t.finish("random", seed, started)
}
