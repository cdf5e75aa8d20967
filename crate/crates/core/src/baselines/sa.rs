use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{option_neighbors, random_vector, BaselineParams, BaselineRun, Tracker};
use crate::optimize::SearchSpace;

/// Simulated annealing with geometric cooling. A move either changes one
/// count by one or shifts a unit to a configuration differing in a single
/// component. At zero temperature only non-worsening moves are accepted.
pub fn simulated_annealing(space: &SearchSpace, seed: u64, params: &BaselineParams) -> BaselineRun {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bounds = space.bounds();
    let neighbors = option_neighbors(space);
    let mut t = Tracker::new(space, params.evaluations.max(1), params.pool_limit);
    let mut x = random_vector(&mut rng, &bounds);
    let mut cur = t.eval(&x).expect("budget of at least one");
    let mut temp = params.schedule.t0;
    while !t.exhausted() {
        let y = neighbor(&mut rng, &x, &bounds, &neighbors);
        let Some(e) = t.eval(&y) else { break };
        let delta = e.penalized - cur.penalized;
        let accept = delta <= 0.0 || (temp > 0.0 && rng.gen::<f64>() < (-delta / temp).exp());
        if accept {
            x = y;
            cur = e;
        }
        temp *= params.schedule.cooling;
    }
    t.finish("sa", seed, started)
}

fn neighbor(rng: &mut ChaCha8Rng, x: &[u32], bounds: &[u32], neighbors: &[Vec<usize>]) -> Vec<u32> {
    let mut y = x.to_vec();
    let i = rng.gen_range(0..x.len());
    if rng.gen_bool(0.5) && y[i] > 0 && !neighbors[i].is_empty() {
        let j = neighbors[i][rng.gen_range(0..neighbors[i].len())];
        if y[j] < bounds[j] {
            y[i] -= 1;
            y[j] += 1;
            return y;
        }
    }
    let up = rng.gen_bool(0.5);
    if (up && y[i] < bounds[i]) || y[i] == 0 {
        y[i] = (y[i] + 1).min(bounds[i]);
    } else {
        y[i] -= 1;
    }
    y
}
