use std::time::Instant;

use super::{member, rank, BaselineParams, BaselineRun, Tracker};
use crate::optimize::SearchSpace;

/// Coordinate descent from the all-zero fleet: each pass moves every
/// coordinate to its best value with the others fixed, until a pass changes
/// nothing or the budget runs out. Emits only the terminal point.
pub fn discrete_search(space: &SearchSpace, params: &BaselineParams) -> BaselineRun {
    let started = Instant::now();
    let bounds = space.bounds();
    let mut t = Tracker::new(space, params.evaluations.max(1), 1);
    let mut x = vec![0u32; bounds.len()];
    let mut best = t.eval(&x).expect("budget of at least one");
    'passes: loop {
        let mut changed = false;
        for i in 0..x.len() {
            let start = x[i];
            let mut best_v = start;
            for v in (0..=bounds[i]).filter(|&v| v != start) {
                x[i] = v;
                let Some(e) = t.eval(&x) else {
                    x[i] = best_v;
                    break 'passes;
                };
                if rank(&e, &best).is_lt() {
                    best = e;
                    best_v = v;
                    changed = true;
                }
            }
            x[i] = best_v;
        }
        if !changed {
            break;
        }
    }
    let mut run = t.finish("discrete", 0, started);
    run.pool = vec![member(space, x, best)];
    run
}
