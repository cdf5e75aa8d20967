//! Pseudo-Boolean constraints to CNF.
//!
//! Constraints are first normalized to `sum w*l <= K` with positive weights.
//! Small bounds use a sequential weight counter (unary partial sums); large
//! bounds, such as budgets in cents, use a binary running-sum register
//! followed by a lexicographic comparator against `K`.

use serde::{Deserialize, Serialize};

use super::{CnfFormula, Lit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Le,
    Ge,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PbConstraint {
    pub terms: Vec<(i64, Lit)>,
    pub relation: Relation,
    pub bound: i64,
}

impl PbConstraint {
    pub fn holds(&self, model: &[bool]) -> bool {
        let sum: i128 = self
            .terms
            .iter()
            .filter(|(_, l)| model[l.unsigned_abs() as usize - 1] == (*l > 0))
            .map(|&(w, _)| i128::from(w))
            .sum();
        match self.relation {
            Relation::Le => sum <= i128::from(self.bound),
            Relation::Ge => sum >= i128::from(self.bound),
        }
    }
}

/// Largest `terms * bound` product for which the unary counter is used.
const UNARY_LIMIT: i128 = 4096;

/// Adds clauses enforcing `c`. Returns the number of clauses added.
pub fn encode_pb(f: &mut CnfFormula, c: &PbConstraint) -> usize {
    let before = f.clauses.len();
    let sign = match c.relation {
        Relation::Le => 1,
        // sum w*l >= K  <=>  sum (-w)*l <= -K
        Relation::Ge => -1,
    };
    let mut bound = sign * i128::from(c.bound);
    let mut terms: Vec<(i128, Lit)> = Vec::with_capacity(c.terms.len());
    for &(w, l) in &c.terms {
        let w = sign * i128::from(w);
        if w > 0 {
            terms.push((w, l));
        } else if w < 0 {
            // w*l = w + (-w)*(not l)
            bound -= w;
            terms.push((-w, -l));
        }
    }
    encode_le(f, &terms, bound);
    f.clauses.len() - before
}

/// `sum w*l <= bound` with every `w > 0`.
fn encode_le(f: &mut CnfFormula, terms: &[(i128, Lit)], bound: i128) {
    if bound < 0 {
        f.add_clause(vec![]);
        return;
    }
    // Terms heavier than the bound are simply forbidden.
    let mut rest = Vec::with_capacity(terms.len());
    for &(w, l) in terms {
        if w > bound {
            f.add_clause(vec![-l]);
        } else {
            rest.push((w, l));
        }
    }
    let total: i128 = rest.iter().map(|t| t.0).sum();
    if total <= bound {
        return;
    }
    if rest.len() as i128 * bound <= UNARY_LIMIT {
        sequential_weight_counter(f, &rest, bound as usize);
    } else {
        binary_sum(f, &rest, bound);
    }
}

/// `s[i][j]` holds when the first `i + 1` terms sum to at least `j + 1`.
fn sequential_weight_counter(f: &mut CnfFormula, terms: &[(i128, Lit)], k: usize) {
    let mut prev: Vec<Lit> = Vec::new();
    for (i, &(w, x)) in terms.iter().enumerate() {
        let w = w as usize;
        let cur: Vec<Lit> = (0..k).map(|_| f.new_var()).collect();
        for s in cur.iter().take(w) {
            f.add_clause(vec![-x, *s]);
        }
        if i > 0 {
            for j in 0..k {
                f.add_clause(vec![-prev[j], cur[j]]);
                if j + w < k {
                    f.add_clause(vec![-x, -prev[j], cur[j + w]]);
                }
            }
            // Adding w to a sum already above k - w overflows.
            f.add_clause(vec![-x, -prev[k - w]]);
        }
        prev = cur;
    }
}

/// Running-sum adder register compared bitwise against `bound`. The
/// register grows only as wide as the running sum requires.
fn binary_sum(f: &mut CnfFormula, terms: &[(i128, Lit)], bound: i128) {
    let bits = |v: i128| (128 - v.leading_zeros()) as usize;
    let zero = f.new_var();
    f.add_clause(vec![-zero]);
    let mut reg: Vec<Lit> = Vec::new();
    let mut prefix = 0i128;
    for &(w, x) in terms {
        prefix += w;
        let width = bits(prefix);
        let mut carry = zero;
        let mut next = Vec::with_capacity(width);
        for bit in 0..width {
            let a = reg.get(bit).copied().unwrap_or(zero);
            let b = if (w >> bit) & 1 == 1 { x } else { zero };
            let (s, c) = full_adder(f, a, b, carry, zero);
            next.push(s);
            carry = c;
        }
        // The register is wide enough for the prefix sum, so no carry out.
        if carry != zero {
            f.add_clause(vec![-carry]);
        }
        reg = next;
    }
    let width = reg.len();
    // Forbid reg > bound: for each 0-bit i of the bound, reg may not agree
    // with the bound above i while having bit i set.
    for i in 0..width {
        if (bound >> i) & 1 == 1 {
            continue;
        }
        let mut clause = vec![-reg[i]];
        clause.extend((i + 1..width).filter(|&j| (bound >> j) & 1 == 1).map(|j| -reg[j]));
        f.add_clause(clause);
    }
}

/// Returns (sum, carry) literals, reusing `zero` when an output is constant.
fn full_adder(f: &mut CnfFormula, a: Lit, b: Lit, c: Lit, zero: Lit) -> (Lit, Lit) {
    let inputs: Vec<Lit> = [a, b, c].into_iter().filter(|&l| l != zero).collect();
    match inputs.as_slice() {
        [] => (zero, zero),
        [x] => (*x, zero),
        [x, y] => {
            let (x, y) = (*x, *y);
            let s = f.new_var();
            let k = f.new_var();
            // s <-> x xor y
            f.add_clause(vec![-x, -y, -s]);
            f.add_clause(vec![x, y, -s]);
            f.add_clause(vec![x, -y, s]);
            f.add_clause(vec![-x, y, s]);
            // k <-> x and y
            f.add_clause(vec![-x, -y, k]);
            f.add_clause(vec![x, -k]);
            f.add_clause(vec![y, -k]);
            (s, k)
        }
        [x, y, z] => {
            let (x, y, z) = (*x, *y, *z);
            let s = f.new_var();
            let k = f.new_var();
            // s <-> x xor y xor z
            for mask in 0..8u8 {
                let lits = [x, y, z];
                let parity = mask.count_ones() % 2 == 1;
                let mut cl: Vec<Lit> = (0..3).map(|i| if mask >> i & 1 == 1 { -lits[i] } else { lits[i] }).collect();
                cl.push(if parity { s } else { -s });
                f.add_clause(cl);
            }
            // k <-> at least two of x, y, z
            f.add_clause(vec![-x, -y, k]);
            f.add_clause(vec![-x, -z, k]);
            f.add_clause(vec![-y, -z, k]);
            f.add_clause(vec![x, y, -k]);
            f.add_clause(vec![x, z, -k]);
            f.add_clause(vec![y, z, -k]);
            (s, k)
        }
        _ => unreachable!(),
    }
}
