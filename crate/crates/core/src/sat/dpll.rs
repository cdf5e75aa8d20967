//! DPLL with two-watched-literal propagation, pure-literal elimination and
//! chronological backtracking.
//!
//! Pure literals are eliminated at the root, where one pass costs as much as
//! the whole formula; deeper levels rely on propagation alone. Decisions take
//! the first unassigned variable, false first, which suits the auxiliary
//! counter variables of the PB encodings.

use serde::{Deserialize, Serialize};

use super::{CnfFormula, Lit};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    pub decisions: u64,
    pub propagations: u64,
    pub conflicts: u64,
    pub pure_literals: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    /// Model indexed by variable - 1.
    Sat(Vec<bool>),
    Unsat,
}

impl Solution {
    pub fn is_sat(&self) -> bool {
        matches!(self, Solution::Sat(_))
    }
}

fn code(l: Lit) -> usize {
    2 * l.unsigned_abs() as usize + usize::from(l < 0)
}

struct Level {
    trail_start: usize,
    decision: Lit,
    flipped: bool,
}

struct Solver {
    /// Literals of every clause back to back; `spans[ci]` locates clause `ci`.
    lits: Vec<Lit>,
    spans: Vec<(usize, usize)>,
    watches: Vec<Vec<usize>>,
    /// 0 unassigned, 1 true, -1 false; indexed by variable.
    value: Vec<i8>,
    trail: Vec<Lit>,
    qhead: usize,
    levels: Vec<Level>,
    /// No variable below this index is unassigned.
    cursor: usize,
    stats: SolveStats,
}

impl Solver {
    fn lit_value(&self, l: Lit) -> i8 {
        let v = self.value[l.unsigned_abs() as usize];
        if l > 0 {
            v
        } else {
            -v
        }
    }

    fn assign(&mut self, l: Lit) {
        self.value[l.unsigned_abs() as usize] = if l > 0 { 1 } else { -1 };
        self.trail.push(l);
    }

    /// Returns false on conflict.
    fn propagate(&mut self) -> bool {
        let mut keep = Vec::new();
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            let falsified = -p;
            let list = std::mem::take(&mut self.watches[code(falsified)]);
            keep.clear();
            let mut conflict = false;
            for (pos, &ci) in list.iter().enumerate() {
                if conflict {
                    keep.extend_from_slice(&list[pos..]);
                    break;
                }
                let (start, len) = self.spans[ci];
                if self.lits[start] == falsified {
                    self.lits.swap(start, start + 1);
                }
                let first = self.lits[start];
                if self.value_of(first) == 1 {
                    keep.push(ci);
                    continue;
                }
                let replacement = (start + 2..start + len).find(|&k| self.value_of(self.lits[k]) != -1);
                if let Some(k) = replacement {
                    self.lits.swap(start + 1, k);
                    let w = self.lits[start + 1];
                    self.watches[code(w)].push(ci);
                    continue;
                }
                keep.push(ci);
                if self.value_of(first) == -1 {
                    conflict = true;
                } else {
                    self.stats.propagations += 1;
                    self.assign(first);
                }
            }
            // Reuse the taken list's allocation for the next round.
            let mut list = list;
            std::mem::swap(&mut list, &mut keep);
            self.watches[code(falsified)] = list;
            if conflict {
                return false;
            }
        }
        true
    }

    fn value_of(&self, l: Lit) -> i8 {
        self.lit_value(l)
    }

    /// Assigns every pure literal among clauses not yet satisfied.
    fn eliminate_pure(&mut self) -> bool {
        let n = self.value.len();
        let mut seen = vec![0u8; n];
        for &(start, len) in &self.spans {
            let c = &self.lits[start..start + len];
            if c.iter().any(|&l| self.lit_value(l) == 1) {
                continue;
            }
            for &l in c {
                if self.lit_value(l) == 0 {
                    seen[l.unsigned_abs() as usize] |= if l > 0 { 1 } else { 2 };
                }
            }
        }
        let mut any = false;
        for (v, &s) in seen.iter().enumerate() {
            if (s == 1 || s == 2) && self.value[v] == 0 {
                let l = if s == 1 { v as Lit } else { -(v as Lit) };
                self.stats.pure_literals += 1;
                self.assign(l);
                any = true;
            }
        }
        any
    }

    fn undo_to(&mut self, start: usize) {
        for &l in &self.trail[start..] {
            let v = l.unsigned_abs() as usize;
            self.value[v] = 0;
            self.cursor = self.cursor.min(v);
        }
        self.trail.truncate(start);
        self.qhead = start;
    }

    /// Flips the most recent unflipped decision; false when none remain.
    fn backtrack(&mut self) -> bool {
        while let Some(level) = self.levels.pop() {
            self.undo_to(level.trail_start);
            if !level.flipped {
                self.levels.push(Level { trail_start: self.trail.len(), decision: -level.decision, flipped: true });
                self.assign(-level.decision);
                return true;
            }
        }
        false
    }
}

/// Decides satisfiability of `f`. Deterministic.
pub fn dpll_solve(f: &CnfFormula) -> (Solution, SolveStats) {
    let n = f.num_vars as usize;
    let mut s = Solver {
        lits: Vec::new(),
        spans: Vec::new(),
        watches: vec![Vec::new(); 2 * n + 2],
        value: vec![0; n + 1],
        trail: Vec::new(),
        qhead: 0,
        levels: Vec::new(),
        cursor: 1,
        stats: SolveStats::default(),
    };
    let mut units = Vec::new();
    s.lits.reserve(f.clauses.iter().map(Vec::len).sum());
    for raw in &f.clauses {
        let start = s.lits.len();
        s.lits.extend_from_slice(raw);
        let c = &mut s.lits[start..];
        c.sort_unstable();
        let mut len = 0;
        for k in 0..c.len() {
            if k == 0 || c[k] != c[len - 1] {
                c[len] = c[k];
                len += 1;
            }
        }
        let c = &c[..len];
        let tautology = c.iter().any(|l| *l < 0 && c.binary_search(&-l).is_ok());
        let first = c.first().copied();
        if tautology || len < 2 {
            s.lits.truncate(start);
            match (tautology, first) {
                (true, _) => {}
                (false, None) => return (Solution::Unsat, s.stats),
                (false, Some(u)) => units.push(u),
            }
            continue;
        }
        s.lits.truncate(start + len);
        let ci = s.spans.len();
        s.watches[code(s.lits[start])].push(ci);
        s.watches[code(s.lits[start + 1])].push(ci);
        s.spans.push((start, len));
    }
    for u in units {
        match s.lit_value(u) {
            1 => {}
            -1 => return (Solution::Unsat, s.stats),
            _ => s.assign(u),
        }
    }

    loop {
        if !s.propagate() {
            s.stats.conflicts += 1;
            if !s.backtrack() {
                return (Solution::Unsat, s.stats);
            }
            continue;
        }
        if s.levels.is_empty() && s.eliminate_pure() {
            continue;
        }
        while s.cursor <= n && s.value[s.cursor] != 0 {
            s.cursor += 1;
        }
        match (s.cursor <= n).then_some(s.cursor) {
            None => {
                let model = s.value[1..].iter().map(|&v| v == 1).collect();
                return (Solution::Sat(model), s.stats);
            }
            Some(v) => {
                s.stats.decisions += 1;
                s.levels.push(Level { trail_start: s.trail.len(), decision: -(v as Lit), flipped: false });
                s.assign(-(v as Lit));
            }
        }
    }
}
