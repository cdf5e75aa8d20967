//! Budget and coverage verification of a fleet design.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{dpll_solve, encode_pb, CnfFormula, Lit, PbConstraint, Relation, Solution, SolveStats};
use crate::constraints::Rule;
use crate::fleet::FleetDesign;
use crate::scenario::Scenario;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EncodeError {
    #[error("line `{config}` has {units} units but its bound is {max_units}")]
    BoundOverflow { config: String, units: u32, max_units: u32 },
}

/// A design's formula plus the slot variables of each line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesignEncoding {
    pub formula: CnfFormula,
    /// Slot literals per line; slot `j` true means at least `j + 1` units.
    pub slots: Vec<Vec<Lit>>,
    pub budget: PbConstraint,
    pub coverage: PbConstraint,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub valid: bool,
    /// Satisfying assignment, indexed by variable - 1.
    pub witness: Option<Vec<bool>>,
    /// Constraints that are unsatisfiable on their own; empty when valid.
    pub failed: Vec<Rule>,
    pub variables: u32,
    pub clauses: usize,
    pub stats: SolveStats,
}

impl Verdict {
    pub fn failed_constraint(&self) -> Option<Rule> {
        self.failed.first().copied()
    }
}

fn slots_and_counts(design: &FleetDesign) -> Result<(CnfFormula, Vec<Vec<Lit>>), EncodeError> {
    let mut f = CnfFormula::new();
    let mut slots = Vec::with_capacity(design.lines.len());
    for line in &design.lines {
        if line.units > line.max_units {
            return Err(EncodeError::BoundOverflow { config: line.config.id.clone(), units: line.units, max_units: line.max_units });
        }
        let vars: Vec<Lit> = (0..line.max_units).map(|_| f.new_var()).collect();
        for pair in vars.windows(2) {
            f.add_clause(vec![-pair[1], pair[0]]);
        }
        for (j, &v) in vars.iter().enumerate() {
            f.add_clause(vec![if (j as u32) < line.units { v } else { -v }]);
        }
        slots.push(vars);
    }
    Ok((f, slots))
}

/// Binary count of an ordered slot chain, least significant bit first.
/// `e_j` marks "exactly j units"; bit `k` is the disjunction of the `e_j`
/// whose index has bit `k` set.
fn binary_count(f: &mut CnfFormula, slots: &[Lit]) -> Vec<Lit> {
    let m = slots.len();
    let exact: Vec<Lit> = (0..m)
        .map(|j| {
            let e = f.new_var();
            let here = slots[j];
            f.add_clause(vec![-e, here]);
            match slots.get(j + 1) {
                Some(&next) => {
                    f.add_clause(vec![-e, -next]);
                    f.add_clause(vec![e, -here, next]);
                }
                None => f.add_clause(vec![e, -here]),
            }
            e
        })
        .collect();
    let width = (usize::BITS - m.leading_zeros()) as usize;
    (0..width)
        .map(|k| {
            let c = f.new_var();
            let mut back = vec![-c];
            for (j, &e) in exact.iter().enumerate() {
                if ((j + 1) >> k) & 1 == 1 {
                    f.add_clause(vec![-e, c]);
                    back.push(e);
                }
            }
            f.add_clause(back);
            c
        })
        .collect()
}

/// Budget and coverage over each line's binary unit count: a line with
/// weight `w` contributes `w * 2^k` when count bit `k` is set.
fn constraints(f: &mut CnfFormula, design: &FleetDesign, scen: &Scenario, slots: &[Vec<Lit>]) -> (PbConstraint, PbConstraint) {
    let mut cost_terms = Vec::new();
    let mut area_terms = Vec::new();
    for (line, vars) in design.lines.iter().zip(slots) {
        let cost = line.config.line_cost().cents();
        let area = line.config.area_m2;
        for (k, bit) in binary_count(f, vars).into_iter().enumerate() {
            if cost != 0 {
                cost_terms.push((cost << k, bit));
            }
            if area != 0 {
                area_terms.push((area << k, bit));
            }
        }
    }
    let budget = PbConstraint { terms: cost_terms, relation: Relation::Le, bound: (scen.budget - design.fixed_cost()).cents() };
    let coverage = PbConstraint { terms: area_terms, relation: Relation::Ge, bound: scen.farm_size_m2 };
    (budget, coverage)
}

/// Unary slot expansion of each line, unit clauses fixing the chosen counts,
/// a unary-to-binary count per line, and encodings of the budget and
/// coverage constraints over those counts.
pub fn encode_design(design: &FleetDesign, scen: &Scenario) -> Result<DesignEncoding, EncodeError> {
    let (mut formula, slots) = slots_and_counts(design)?;
    let (budget, coverage) = constraints(&mut formula, design, scen, &slots);
    encode_pb(&mut formula, &budget);
    encode_pb(&mut formula, &coverage);
    Ok(DesignEncoding { formula, slots, budget, coverage })
}

/// Satisfiability of the slots plus one of the two constraints.
fn alone(design: &FleetDesign, scen: &Scenario, rule: Rule) -> Result<bool, EncodeError> {
    let (mut f, slots) = slots_and_counts(design)?;
    let (budget, coverage) = constraints(&mut f, design, scen, &slots);
    encode_pb(&mut f, if rule == Rule::Budget { &budget } else { &coverage });
    Ok(dpll_solve(&f).0.is_sat())
}

pub fn verify(design: &FleetDesign, scen: &Scenario) -> Result<Verdict, EncodeError> {
    let enc = encode_design(design, scen)?;
    let (solution, stats) = dpll_solve(&enc.formula);
    let variables = enc.formula.num_vars;
    let clauses = enc.formula.clauses.len();
    Ok(match solution {
        Solution::Sat(model) => Verdict { valid: true, witness: Some(model), failed: Vec::new(), variables, clauses, stats },
        Solution::Unsat => {
            let mut failed = Vec::new();
            if !alone(design, scen, Rule::Budget)? {
                failed.push(Rule::Budget);
            }
            if !alone(design, scen, Rule::Coverage)? {
                failed.push(Rule::Coverage);
            }
            Verdict { valid: false, witness: None, failed, variables, clauses, stats }
        }
    })
}
