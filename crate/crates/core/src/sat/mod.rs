//! Pseudo-Boolean feasibility verification over CNF.

mod dimacs;
mod dpll;
mod pb;
mod verify;

pub use dimacs::{export_dimacs, parse_dimacs, to_dimacs, DimacsError};
pub use dpll::{dpll_solve, SolveStats, Solution};
pub use pb::{encode_pb, PbConstraint, Relation};
pub use verify::{encode_design, verify, DesignEncoding, EncodeError, Verdict};

use serde::{Deserialize, Serialize};

/// A literal in DIMACS convention: `v` or `-v` for variable `v >= 1`.
pub type Lit = i32;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfFormula {
    pub num_vars: u32,
    pub clauses: Vec<Vec<Lit>>,
}

impl CnfFormula {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn new_var(&mut self) -> Lit {
        self.num_vars += 1;
        self.num_vars as Lit
    }

    pub fn add_clause(&mut self, clause: impl Into<Vec<Lit>>) {
        let clause = clause.into();
        debug_assert!(clause.iter().all(|&l| l != 0 && l.unsigned_abs() <= self.num_vars));
        self.clauses.push(clause);
    }

    pub fn has_empty_clause(&self) -> bool {
        self.clauses.iter().any(Vec::is_empty)
    }

    /// Whether `model` (indexed by variable - 1) satisfies every clause.
    pub fn satisfied_by(&self, model: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|&l| model[l.unsigned_abs() as usize - 1] == (l > 0)))
    }
}
