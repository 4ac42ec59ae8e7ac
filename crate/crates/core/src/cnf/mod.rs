//! CNF formulas with distinct-literal clauses, satisfiability, formula stability and
//! the formula-level constructions.

mod constructions;
mod dimacs;
mod sat;

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use constructions::{or2_combine, or2_product, sat_to_stable_cnf, sat_to_stable_cnf_unpadded, to_exact_3cnf, unsat_padding, CnfConstruction};
pub use dimacs::{parse_cnf, write_cnf, write_cnf_with_comments, CnfParseError};
pub use sat::{count_models, formula_stability, formula_stability_with, is_satisfiable, solve, FormulaStability};

/// A literal: `+v` or `-v` for variable `v ≥ 1`.
pub type Lit = i32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnfError {
    #[error("clause {clause}: literal 0 is not allowed")]
    ZeroLiteral { clause: usize },
    #[error("clause {clause}: variable {var} exceeds the declared {num_vars}")]
    VariableOutOfRange { clause: usize, var: u32, num_vars: u32 },
    #[error("clause {clause}: variable {var} occurs twice")]
    RepeatedVariable { clause: usize, var: u32 },
    #[error("expected an exact-3CNF formula, clause {clause} has width {width}")]
    NotExact3 { clause: usize, width: usize },
    #[error("need at least 3 variables, got {0}")]
    TooFewVariables(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CnfFormula {
    num_vars: u32,
    clauses: Vec<Vec<Lit>>,
}

impl CnfFormula {
    /// Validates that every clause uses declared variables at most once.
    pub fn new(num_vars: u32, clauses: Vec<Vec<Lit>>) -> Result<Self, CnfError> {
        for (i, c) in clauses.iter().enumerate() {
            check_clause(i, c, num_vars)?;
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    pub fn empty(num_vars: u32) -> Self {
        CnfFormula {
            num_vars,
            clauses: Vec::new(),
        }
    }

    /// All 2³ sign patterns over variables a, b, c.
    pub fn eight_block(a: u32, b: u32, c: u32, num_vars: u32) -> Self {
        let clauses = (0..8)
            .map(|bits| {
                [a, b, c]
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| if bits >> (2 - i) & 1 == 0 { v as Lit } else { -(v as Lit) })
                    .collect()
            })
            .collect();
        CnfFormula::new(num_vars, clauses).expect("distinct variables")
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// Clause widths, in clause order.
    pub fn widths(&self) -> Vec<usize> {
        self.clauses.iter().map(Vec::len).collect()
    }

    /// Width → number of clauses of that width.
    pub fn width_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for w in self.widths() {
            *h.entry(w).or_insert(0) += 1;
        }
        h
    }

    pub fn is_exact_k(&self, k: usize) -> bool {
        self.clauses.iter().all(|c| c.len() == k)
    }

    pub(crate) fn require_exact3(&self) -> Result<(), CnfError> {
        match self.clauses.iter().position(|c| c.len() != 3) {
            Some(i) => Err(CnfError::NotExact3 {
                clause: i,
                width: self.clauses[i].len(),
            }),
            None => Ok(()),
        }
    }

    pub fn without_clause(&self, i: usize) -> CnfFormula {
        let mut clauses = self.clauses.clone();
        clauses.remove(i);
        CnfFormula {
            num_vars: self.num_vars,
            clauses,
        }
    }

    pub fn push_clause(&mut self, clause: Vec<Lit>) -> Result<(), CnfError> {
        check_clause(self.clauses.len(), &clause, self.num_vars)?;
        self.clauses.push(clause);
        Ok(())
    }

    /// Renames variable v to v + offset.
    pub fn shifted(&self, offset: u32) -> CnfFormula {
        let clauses = self
            .clauses
            .iter()
            .map(|c| c.iter().map(|&l| l.signum() * (l.abs() + offset as Lit)).collect())
            .collect();
        CnfFormula {
            num_vars: self.num_vars + offset,
            clauses,
        }
    }

    /// Truth value under `assignment[v - 1]`.
    pub fn evaluate(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|&l| assignment[l.unsigned_abs() as usize - 1] == (l > 0)))
    }
}

fn check_clause(i: usize, c: &[Lit], num_vars: u32) -> Result<(), CnfError> {
    let mut seen = Vec::with_capacity(c.len());
    for &l in c {
        if l == 0 {
            return Err(CnfError::ZeroLiteral { clause: i });
        }
        let var = l.unsigned_abs();
        if var > num_vars {
            return Err(CnfError::VariableOutOfRange { clause: i, var, num_vars });
        }
        if seen.contains(&var) {
            return Err(CnfError::RepeatedVariable { clause: i, var });
        }
        seen.push(var);
    }
    Ok(())
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return f.write_str("⊤");
        }
        let parts: Vec<String> = self
            .clauses
            .iter()
            .map(|c| {
                let lits: Vec<String> = c
                    .iter()
                    .map(|&l| if l > 0 { format!("x{l}") } else { format!("¬x{}", -l) })
                    .collect();
                format!("({})", lits.join(" ∨ "))
            })
            .collect();
        f.write_str(&parts.join(" ∧ "))
    }
}

/// Uniform exact-3CNF: each clause picks 3 distinct variables and random signs.
pub fn random_3cnf(num_vars: u32, num_clauses: usize, seed: u64) -> Result<CnfFormula, CnfError> {
    random_kcnf(num_vars, num_clauses, 3, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn random_kcnf(num_vars: u32, num_clauses: usize, k: usize, rng: &mut impl Rng) -> Result<CnfFormula, CnfError> {
    if (num_vars as usize) < k.max(3) {
        return Err(CnfError::TooFewVariables(num_vars));
    }
    let clauses = (0..num_clauses)
        .map(|_| {
            sample(rng, num_vars as usize, k)
                .into_iter()
                .map(|v| if rng.gen_bool(0.5) { v as Lit + 1 } else { -(v as Lit + 1) })
                .collect()
        })
        .collect();
    CnfFormula::new(num_vars, clauses)
}

/// Clauses of mixed widths in `widths` (width 0 allowed) over `num_vars` variables.
pub fn random_mixed_cnf(num_vars: u32, widths: &[usize], rng: &mut impl Rng) -> CnfFormula {
    let clauses = widths
        .iter()
        .map(|&w| {
            sample(rng, num_vars as usize, w.min(num_vars as usize))
                .into_iter()
                .map(|v| if rng.gen_bool(0.5) { v as Lit + 1 } else { -(v as Lit + 1) })
                .collect()
        })
        .collect();
    CnfFormula::new(num_vars, clauses).expect("sampled without repetition")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants() {
        assert!(CnfFormula::new(2, vec![vec![1, -1]]).is_err());
        assert!(CnfFormula::new(2, vec![vec![1, 1]]).is_err());
        assert!(CnfFormula::new(2, vec![vec![3]]).is_err());
        assert!(CnfFormula::new(2, vec![vec![0]]).is_err());
        let f = CnfFormula::new(3, vec![vec![1, -2], vec![3], vec![]]).unwrap();
        assert_eq!(f.widths(), vec![2, 1, 0]);
    }

    #[test]
    fn random_formulas() {
        assert_eq!(random_3cnf(4, 6, 9).unwrap(), random_3cnf(4, 6, 9).unwrap());
        let f = random_3cnf(4, 6, 1).unwrap();
        assert_eq!(f.num_clauses(), 6);
        assert!(f.is_exact_k(3));
        assert!(random_3cnf(2, 1, 0).is_err());
        let block = CnfFormula::eight_block(1, 2, 3, 3);
        let mut hit = false;
        for seed in 0..20_000 {
            let mut f = random_3cnf(3, 8, seed).unwrap().clauses().to_vec();
            f.iter_mut().for_each(|c| c.sort_by_key(|l| l.abs()));
            f.sort();
            f.dedup();
            if f.len() == 8 {
                let mut b = block.clauses().to_vec();
                b.sort();
                assert_eq!(f, b);
                hit = true;
                break;
            }
        }
        assert!(hit, "the 8-block is in the support");
    }
}
