use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use super::{CnfFormula, Lit};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DimacsError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `p cnf` header")]
    MissingHeader,
    #[error("header declares {declared} clauses but body has {found}")]
    ClauseCount { declared: usize, found: usize },
}

pub fn to_dimacs(f: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", f.num_vars, f.clauses.len());
    for c in &f.clauses {
        for l in c {
            let _ = write!(out, "{l} ");
        }
        out.push_str("0\n");
    }
    out
}

pub fn export_dimacs(f: &CnfFormula, path: impl AsRef<Path>) -> std::io::Result<()> {
    std::fs::write(path, to_dimacs(f))
}

pub fn parse_dimacs(text: &str) -> Result<CnfFormula, DimacsError> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Lit> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        let syntax = |message: String| DimacsError::Syntax { line: n + 1, message };
        if line.starts_with('p') {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 || parts[1] != "cnf" {
                return Err(syntax("expected `p cnf <vars> <clauses>`".into()));
            }
            let vars = parts[2].parse().map_err(|_| syntax(format!("bad variable count `{}`", parts[2])))?;
            let count = parts[3].parse().map_err(|_| syntax(format!("bad clause count `{}`", parts[3])))?;
            header = Some((vars, count));
            continue;
        }
        let (vars, _) = header.ok_or(DimacsError::MissingHeader)?;
        for tok in line.split_whitespace() {
            let lit: Lit = tok.parse().map_err(|_| syntax(format!("bad literal `{tok}`")))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() > vars {
                return Err(syntax(format!("literal {lit} exceeds declared {vars} variables")));
            } else {
                current.push(lit);
            }
        }
    }
    let (num_vars, declared) = header.ok_or(DimacsError::MissingHeader)?;
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != declared {
        return Err(DimacsError::ClauseCount { declared, found: clauses.len() });
    }
    Ok(CnfFormula { num_vars, clauses })
}
