use std::time::Instant;

use rayon::prelude::*;

use super::{genetic_algorithm, merge, one_plus_one_lengler, random_search, simulated_annealing, BaselineParams, BaselineRun};
use crate::optimize::SearchSpace;

/// Splits the evaluation budget round-robin across annealing, the GA, random
/// search, and the (1+1) algorithm, all on the same seed, and merges their
/// pools.
pub fn portfolio(space: &SearchSpace, seed: u64, params: &BaselineParams) -> BaselineRun {
    let started = Instant::now();
    let members = portfolio_members(space, seed, params);
    BaselineRun {
        optimizer_name: "portfolio".to_string(),
        seed,
        evaluation_budget: params.evaluations,
        evaluations: members.iter().map(|r| r.evaluations).sum(),
        pool: merge(&members, params.pool_limit),
        wall_time: started.elapsed(),
    }
}

/// Runs of each member under its share of the budget; members with no
/// share are skipped.
pub fn portfolio_members(space: &SearchSpace, seed: u64, params: &BaselineParams) -> Vec<BaselineRun> {
    type Member = fn(&SearchSpace, u64, &BaselineParams) -> BaselineRun;
    let members: [Member; 4] = [simulated_annealing, genetic_algorithm, random_search, one_plus_one_lengler];
    let n = members.len();
    members
        .par_iter()
        .enumerate()
        .filter_map(|(i, run)| {
            let share = params.evaluations / n + usize::from(i < params.evaluations % n);
            (share > 0).then(|| run(space, seed, &BaselineParams { evaluations: share, ..*params }))
        })
        .collect()
}
