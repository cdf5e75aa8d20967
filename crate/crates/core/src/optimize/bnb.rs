//! Depth-first branch and bound over bounded integer unit counts.
//!
//! Node bounds are exact rational relaxations evaluated in integer
//! arithmetic, so pruning never discards an optimal vector. Lines are
//! branched in order of objective efficiency (gain per cent for rewarded
//! lines, objective per m² for penalized ones) so that good incumbents are
//! found early; the cheapest remaining lines break ties.

use std::cmp::Ordering;
use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::space::{IlpItem, IlpProblem};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplorationLog {
    pub nodes: u64,
    pub leaves: u64,
    pub pruned_bound: u64,
    pub pruned_infeasible: u64,
}

impl ExplorationLog {
    pub fn absorb(&mut self, other: &ExplorationLog) {
        self.nodes += other.nodes;
        self.leaves += other.leaves;
        self.pruned_bound += other.pruned_bound;
        self.pruned_infeasible += other.pruned_infeasible;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ranked {
    pub x: Vec<u32>,
    pub objective: i128,
}

/// Compares `a.0 / a.1` with `b.0 / b.1` for positive denominators.
fn cmp_ratio(a: (i128, i128), b: (i128, i128)) -> Ordering {
    (a.0 * b.1).cmp(&(b.0 * a.1))
}

struct Search<'a> {
    items: &'a [IlpItem],
    /// Branching order: gainers, then coverers, then the rest by cost.
    order: Vec<usize>,
    /// Position of each original index in `order`.
    rank: Vec<usize>,
    suffix_cover: Vec<i128>,
    /// Negative-coefficient items by gain per cent, best first.
    gainers: Vec<usize>,
    /// Non-negative-coefficient items with area, by coefficient per m².
    coverers: Vec<usize>,
    /// Items with area, by cost per m².
    cheap_cover: Vec<usize>,
    limit: usize,
    excluded: &'a HashSet<Vec<u32>>,
    pool: Vec<Ranked>,
    log: ExplorationLog,
    x: Vec<u32>,
}

impl<'a> Search<'a> {
    fn new(problem: &'a IlpProblem, limit: usize, excluded: &'a HashSet<Vec<u32>>) -> Self {
        let items = &problem.items;
        let n = items.len();
        let mut gainers: Vec<usize> = (0..n).filter(|&i| items[i].coef < 0 && items[i].ub > 0).collect();
        gainers.sort_by(|&a, &b| {
            cmp_ratio((-i128::from(items[b].coef), i128::from(items[b].cost.max(1))), (-i128::from(items[a].coef), i128::from(items[a].cost.max(1))))
                .then(a.cmp(&b))
        });
        let mut coverers: Vec<usize> = (0..n).filter(|&i| items[i].coef >= 0 && items[i].area > 0 && items[i].ub > 0).collect();
        coverers.sort_by(|&a, &b| {
            cmp_ratio((i128::from(items[a].coef), i128::from(items[a].area)), (i128::from(items[b].coef), i128::from(items[b].area))).then(a.cmp(&b))
        });
        let mut cheap_cover: Vec<usize> = (0..n).filter(|&i| items[i].area > 0 && items[i].ub > 0).collect();
        cheap_cover.sort_by(|&a, &b| {
            cmp_ratio((i128::from(items[a].cost), i128::from(items[a].area)), (i128::from(items[b].cost), i128::from(items[b].area))).then(a.cmp(&b))
        });
        let mut order: Vec<usize> = gainers.iter().chain(&coverers).copied().collect();
        let mut rest: Vec<usize> = (0..n).filter(|i| !order.contains(i)).collect();
        rest.sort_by_key(|&i| (items[i].cost, i));
        order.extend(rest);
        let mut rank = vec![0; n];
        for (pos, &i) in order.iter().enumerate() {
            rank[i] = pos;
        }
        let mut suffix_cover = vec![0i128; n + 1];
        for pos in (0..n).rev() {
            let it = &items[order[pos]];
            suffix_cover[pos] = suffix_cover[pos + 1] + i128::from(it.area) * i128::from(it.ub);
        }
        Search {
            items,
            order,
            rank,
            suffix_cover,
            gainers,
            coverers,
            cheap_cover,
            limit,
            excluded,
            pool: Vec::new(),
            log: ExplorationLog::default(),
            x: vec![0; n],
        }
    }

    /// Cheapest fractional way to supply `need` m² with items at or after
    /// `depth`, weighting each unit by `weight`. `None` if impossible.
    /// Returns the exact value as `whole + num/den`.
    fn fractional_cover(&self, list: &[usize], depth: usize, mut need: i128, weight: impl Fn(&IlpItem) -> i128) -> Option<(i128, i128, i128)> {
        let mut whole = 0i128;
        if need <= 0 {
            return Some((0, 0, 1));
        }
        for &i in list {
            if self.rank[i] < depth {
                continue;
            }
            let it = &self.items[i];
            let area = i128::from(it.area);
            let ub = i128::from(it.ub);
            let full = (need / area).min(ub);
            whole += full * weight(it);
            need -= full * area;
            if need <= 0 {
                return Some((whole, 0, 1));
            }
            if full < ub {
                return Some((whole, weight(it) * need, area));
            }
        }
        None
    }

    /// Lower bound on the objective of any completion, or `None` when no
    /// completion is feasible.
    fn bound(&self, depth: usize, budget: i128, need: i128) -> Option<i128> {
        if need > self.suffix_cover[depth] {
            return None;
        }
        if need > 0 {
            let (whole, num, den) = self.fractional_cover(&self.cheap_cover, depth, need, |it| i128::from(it.cost))?;
            if whole * den + num > budget * den {
                return None;
            }
        }

        // Best possible gain from negative coefficients under the budget.
        let mut gain = 0i128;
        let (mut gain_num, mut gain_den) = (0i128, 1i128);
        let mut left = budget;
        let mut gainer_cover = 0i128;
        let mut gain_open = true;
        for &i in &self.gainers {
            if self.rank[i] < depth {
                continue;
            }
            let it = &self.items[i];
            gainer_cover += i128::from(it.area) * i128::from(it.ub);
            if !gain_open {
                continue;
            }
            let cost = i128::from(it.cost);
            let ub = i128::from(it.ub);
            let full = if cost > 0 { (left / cost).min(ub) } else { ub };
            gain += full * -i128::from(it.coef);
            left -= full * cost;
            if full < ub {
                gain_num = -i128::from(it.coef) * left;
                gain_den = cost;
                gain_open = false;
            }
        }

        let rest = need - gainer_cover;
        let (whole, num, den) = self.fractional_cover(&self.coverers, depth, rest, |it| i128::from(it.coef))?;
        // Objective values are integers, so the exact relaxation rounds up.
        let frac_num = num * gain_den - gain_num * den;
        let frac_den = den * gain_den;
        Some(whole - gain + (frac_num + frac_den - 1).div_euclid(frac_den))
    }

    fn threshold(&self) -> Option<i128> {
        (self.pool.len() >= self.limit).then(|| self.pool.last().expect("non-empty").objective)
    }

    fn offer(&mut self, objective: i128) {
        if self.excluded.contains(&self.x) {
            return;
        }
        if let Some(t) = self.threshold() {
            if objective >= t {
                return;
            }
        }
        let at = self.pool.partition_point(|r| r.objective <= objective);
        self.pool.insert(at, Ranked { x: self.x.clone(), objective });
        self.pool.truncate(self.limit);
    }

    fn dfs(&mut self, depth: usize, partial: i128, budget: i128, need: i128) {
        self.log.nodes += 1;
        if depth == self.order.len() {
            self.log.leaves += 1;
            if need <= 0 {
                self.offer(partial);
            }
            return;
        }
        let Some(lb) = self.bound(depth, budget, need) else {
            self.log.pruned_infeasible += 1;
            return;
        };
        if let Some(t) = self.threshold() {
            if partial + lb >= t {
                self.log.pruned_bound += 1;
                return;
            }
        }
        let idx = self.order[depth];
        let it = self.items[idx];
        let cost = i128::from(it.cost);
        let top = if cost > 0 { (budget / cost).min(i128::from(it.ub)) } else { i128::from(it.ub) };
        let top = top.max(0) as u32;
        let visit = |s: &mut Self, v: u32| {
            let n = i128::from(v);
            s.x[idx] = v;
            s.dfs(depth + 1, partial + n * i128::from(it.coef), budget - n * cost, need - n * i128::from(it.area));
        };
        if it.coef < 0 {
            for v in (0..=top).rev() {
                visit(self, v);
            }
        } else {
            // Counts up to the one that just meets the remaining demand,
            // largest first; over-covering counts can only tie or lose.
            let area = i128::from(it.area);
            let enough = if need > 0 && area > 0 { ((need + area - 1) / area).min(i128::from(top)) as u32 } else { 0 };
            for v in (0..=enough).rev().chain(enough + 1..=top) {
                visit(self, v);
            }
        }
        self.x[idx] = 0;
    }
}

/// The `limit` best feasible vectors not in `excluded`, best first. Ties keep
/// discovery order.
pub fn branch_and_bound(problem: &IlpProblem, limit: usize, excluded: &HashSet<Vec<u32>>) -> (Vec<Ranked>, ExplorationLog) {
    if limit == 0 {
        return (Vec::new(), ExplorationLog::default());
    }
    let mut s = Search::new(problem, limit, excluded);
    s.dfs(0, 0, i128::from(problem.budget), i128::from(problem.demand));
    (s.pool, s.log)
}

/// Repeatedly solves for the single best vector, excluding every vector
/// already found, until `count` are found or none remain.
pub fn solve_with_cuts(problem: &IlpProblem, count: usize) -> (Vec<Ranked>, ExplorationLog) {
    let mut excluded = HashSet::new();
    let mut found = Vec::new();
    let mut log = ExplorationLog::default();
    while found.len() < count {
        let (best, l) = branch_and_bound(problem, 1, &excluded);
        log.absorb(&l);
        let Some(best) = best.into_iter().next() else { break };
        excluded.insert(best.x.clone());
        found.push(best);
    }
    (found, log)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn item(cost: i64, area: i64, coef: i64, ub: u32) -> IlpItem {
        IlpItem { cost, area, coef, ub }
    }

    #[test]
    fn forced_single_solution() {
        let p = IlpProblem { items: vec![item(10, 5, 7, 3)], budget: 10, demand: 5 };
        let (pool, _) = branch_and_bound(&p, 5, &HashSet::new());
        assert_eq!(pool, vec![Ranked { x: vec![1], objective: 7 }]);
    }

    #[test]
    fn cheaper_twin_wins() {
        let p = IlpProblem { items: vec![item(20, 5, 9, 3), item(10, 5, 4, 3)], budget: 100, demand: 5 };
        let (pool, _) = branch_and_bound(&p, 1, &HashSet::new());
        assert_eq!(pool[0].x, vec![0, 1]);
    }

    #[test]
    fn infeasible_is_empty() {
        let p = IlpProblem { items: vec![item(10, 5, 1, 2)], budget: 100, demand: 11 };
        assert!(branch_and_bound(&p, 3, &HashSet::new()).0.is_empty());
        let p = IlpProblem { items: vec![item(10, 5, 1, 2)], budget: 9, demand: 1 };
        assert!(branch_and_bound(&p, 3, &HashSet::new()).0.is_empty());
    }

    #[test]
    fn negative_coefficients_fill_budget() {
        let p = IlpProblem { items: vec![item(3, 1, -5, 10), item(4, 1, -8, 10)], budget: 12, demand: 1 };
        let (pool, _) = branch_and_bound(&p, 1, &HashSet::new());
        // 3 of the second item: -24; vs 4 of the first: -20; 2nd x2 + 1st x1 = -21
        assert_eq!(pool[0].objective, -24);
    }
}
