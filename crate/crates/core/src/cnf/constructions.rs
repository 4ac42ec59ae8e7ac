//! Formula constructions. Fresh variables are numbered after the current maximum,
//! in the order the construction introduces them.

use serde::{Deserialize, Serialize};

use super::{CnfError, CnfFormula, Lit};

/// Output formula plus a short origin note for every clause.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfConstruction {
    pub formula: CnfFormula,
    pub origins: Vec<String>,
}

impl CnfConstruction {
    fn identity(f: &CnfFormula) -> Self {
        CnfConstruction {
            formula: f.clone(),
            origins: (0..f.num_clauses()).map(|i| format!("input clause {i}")).collect(),
        }
    }

    /// Origin notes as DIMACS comment lines, one per clause.
    pub fn comments(&self) -> Vec<String> {
        self.origins
            .iter()
            .enumerate()
            .map(|(i, o)| format!("origin {i}: {o}"))
            .collect()
    }
}

struct Builder {
    next_var: u32,
    clauses: Vec<Vec<Lit>>,
    origins: Vec<String>,
}

impl Builder {
    fn new(num_vars: u32) -> Self {
        Builder {
            next_var: num_vars,
            clauses: Vec::new(),
            origins: Vec::new(),
        }
    }

    fn fresh(&mut self) -> Lit {
        self.next_var += 1;
        self.next_var as Lit
    }

    fn push(&mut self, clause: Vec<Lit>, origin: String) {
        self.clauses.push(clause);
        self.origins.push(origin);
    }

    fn finish(self) -> CnfConstruction {
        CnfConstruction {
            formula: CnfFormula::new(self.next_var, self.clauses).expect("constructions keep literals distinct"),
            origins: self.origins,
        }
    }
}

fn with(clause: &[Lit], extra: &[Lit]) -> Vec<Lit> {
    clause.iter().chain(extra).copied().collect()
}

fn exact3_of(input: &CnfConstruction) -> CnfConstruction {
    let f = &input.formula;
    let mut b = Builder::new(f.num_vars());
    for (c, origin) in f.clauses().iter().zip(&input.origins) {
        let pieces: Vec<(Vec<Lit>, String)> = match c.len() {
            0 => {
                let (x, y, z) = (b.fresh(), b.fresh(), b.fresh());
                CnfFormula::eight_block(x as u32, y as u32, z as u32, b.next_var)
                    .clauses()
                    .iter()
                    .enumerate()
                    .map(|(j, c)| (c.clone(), format!("{origin} [empty clause block {}/8]", j + 1)))
                    .collect()
            }
            1..=3 => vec![(c.clone(), origin.clone())],
            k => {
                let ys: Vec<Lit> = (0..k - 1).map(|_| b.fresh()).collect();
                let mut out = vec![(vec![c[0], ys[0]], format!("{origin} [chain 1/{k}]"))];
                for i in 1..k - 1 {
                    out.push((vec![-ys[i - 1], c[i], ys[i]], format!("{origin} [chain {}/{k}]", i + 1)));
                }
                out.push((vec![-ys[k - 2], c[k - 1]], format!("{origin} [chain {k}/{k}]")));
                out
            }
        };
        for (p, o) in pieces {
            match p.len() {
                3 => b.push(p, o),
                2 => {
                    let z = b.fresh();
                    b.push(with(&p, &[z]), format!("{o} [pad 1/2]"));
                    b.push(with(&p, &[-z]), format!("{o} [pad 2/2]"));
                }
                1 => {
                    let (z1, z2) = (b.fresh(), b.fresh());
                    for (j, (s1, s2)) in [(1, 1), (1, -1), (-1, 1), (-1, -1)].into_iter().enumerate() {
                        b.push(with(&p, &[s1 * z1, s2 * z2]), format!("{o} [pad {}/4]", j + 1));
                    }
                }
                w => unreachable!("piece of width {w}"),
            }
        }
    }
    b.finish()
}

/// Equisatisfiable, stability-preserving exact-3CNF: clauses of width ≥ 4 become
/// chains over fresh y_i, width-2 clauses are doubled with a fresh z, width-1 clauses
/// quadrupled with fresh z1, z2, and an empty clause becomes a full 8-clause block over
/// fresh variables. Width-3 clauses are kept, so exact-3CNF inputs come back unchanged.
pub fn to_exact_3cnf(f: &CnfFormula) -> CnfConstruction {
    exact3_of(&CnfConstruction::identity(f))
}

/// Φ ∧ (all eight clauses over fresh x, y, z): always unsatisfiable, and stable iff Φ
/// is unsatisfiable.
pub fn unsat_padding(f: &CnfFormula) -> Result<CnfConstruction, CnfError> {
    f.require_exact3()?;
    let mut out = CnfConstruction::identity(f);
    let n = f.num_vars();
    let block = CnfFormula::eight_block(n + 1, n + 2, n + 3, n + 3);
    let mut clauses = f.clauses().to_vec();
    for (j, c) in block.clauses().iter().enumerate() {
        clauses.push(c.clone());
        out.origins.push(format!("padding block {}/8", j + 1));
    }
    out.formula = CnfFormula::new(n + 3, clauses)?;
    Ok(out)
}

/// Ψ = ⋀ (C_i ∨ y) ∧ (C_i′ ∨ y′) ∧ (C_i″ ∨ y″) ∧ (ȳ ∨ ȳ′ ∨ ȳ″) over two fresh copies of
/// the variables; Ψ is stable iff satisfiable iff Φ is satisfiable. Mixed width.
pub fn sat_to_stable_cnf_unpadded(f: &CnfFormula) -> Result<CnfConstruction, CnfError> {
    f.require_exact3()?;
    let n = f.num_vars() as Lit;
    let (y0, y1, y2) = (3 * n + 1, 3 * n + 2, 3 * n + 3);
    let copy = |c: &[Lit], k: Lit| -> Vec<Lit> { c.iter().map(|&l| l.signum() * (l.abs() + k * n)).collect() };
    let mut clauses = Vec::new();
    let mut origins = Vec::new();
    for (i, c) in f.clauses().iter().enumerate() {
        for (k, (y, mark)) in [(y0, ""), (y1, "'"), (y2, "''")].into_iter().enumerate() {
            clauses.push(with(&copy(c, k as Lit), &[y]));
            origins.push(format!("input clause {i}{mark} or y{mark}"));
        }
    }
    clauses.push(vec![-y0, -y1, -y2]);
    origins.push("not y or not y' or not y''".to_string());
    Ok(CnfConstruction {
        formula: CnfFormula::new(3 * n as u32 + 3, clauses)?,
        origins,
    })
}

/// [`sat_to_stable_cnf_unpadded`] followed by [`to_exact_3cnf`].
pub fn sat_to_stable_cnf(f: &CnfFormula) -> Result<CnfConstruction, CnfError> {
    Ok(exact3_of(&sat_to_stable_cnf_unpadded(f)?))
}

/// Ψ = ⋀_{i,j} (C_i ∨ C′_j), with Φ′ renamed past Φ's variables; equivalent to Φ ∨ Φ′.
pub fn or2_product(f: &CnfFormula, g: &CnfFormula) -> CnfConstruction {
    let g = g.shifted(f.num_vars());
    let mut clauses = Vec::new();
    let mut origins = Vec::new();
    for (i, c) in f.clauses().iter().enumerate() {
        for (j, d) in g.clauses().iter().enumerate() {
            clauses.push(with(c, d));
            origins.push(format!("first clause {i} or second clause {j}"));
        }
    }
    CnfConstruction {
        formula: CnfFormula::new(g.num_vars(), clauses).expect("disjoint variables"),
        origins,
    }
}

/// [`or2_product`] followed by [`to_exact_3cnf`]: stable iff either input is stable.
pub fn or2_combine(f: &CnfFormula, g: &CnfFormula) -> CnfConstruction {
    exact3_of(&or2_product(f, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::{formula_stability, is_satisfiable};

    #[test]
    fn exact3_examples() {
        let f = CnfFormula::new(4, vec![vec![1, 2, 3, 4]]).unwrap();
        let out = to_exact_3cnf(&f).formula;
        assert_eq!(out.num_clauses(), 6);
        assert!(out.is_exact_k(3));

        let f = CnfFormula::new(1, vec![vec![1]]).unwrap();
        let out = to_exact_3cnf(&f).formula;
        assert_eq!(
            out.clauses(),
            &[vec![1, 2, 3], vec![1, 2, -3], vec![1, -2, 3], vec![1, -2, -3]]
        );

        let f = CnfFormula::new(3, vec![vec![1, -2, 3], vec![-1, 2, 3]]).unwrap();
        assert_eq!(to_exact_3cnf(&f).formula, f);

        let f = CnfFormula::new(0, vec![vec![]]).unwrap();
        let out = to_exact_3cnf(&f).formula;
        assert_eq!(out.num_clauses(), 8);
        assert!(!is_satisfiable(&out).unwrap());
    }

    #[test]
    fn padding_examples() {
        let f = CnfFormula::new(3, vec![vec![1, 2, 3]]).unwrap();
        let out = unsat_padding(&f).unwrap();
        assert_eq!(out.formula.num_clauses(), 9);
        assert!(!formula_stability(&out.formula).unwrap().stable);
        let block = CnfFormula::eight_block(1, 2, 3, 3);
        assert!(formula_stability(&unsat_padding(&block).unwrap().formula).unwrap().stable);
        assert!(unsat_padding(&CnfFormula::new(2, vec![vec![1, 2]]).unwrap()).is_err());
    }

    #[test]
    fn sat_to_stable_examples() {
        let f = CnfFormula::new(3, vec![vec![1, 2, 3]]).unwrap();
        let mid = sat_to_stable_cnf_unpadded(&f).unwrap().formula;
        assert_eq!(mid.num_clauses(), 4);
        assert_eq!(mid.widths(), vec![4, 4, 4, 3]);
        assert!(formula_stability(&sat_to_stable_cnf(&f).unwrap().formula).unwrap().stable);
        let block = CnfFormula::eight_block(1, 2, 3, 3);
        let out = sat_to_stable_cnf(&block).unwrap().formula;
        assert!(out.is_exact_k(3));
        assert!(!formula_stability(&out).unwrap().stable);
    }

    #[test]
    fn or2_examples() {
        let f = CnfFormula::new(3, vec![vec![1, 2, 3], vec![-1, 2, 3]]).unwrap();
        let p = or2_product(&f, &f).formula;
        assert_eq!(p.widths(), vec![6; 4]);
        let block = CnfFormula::eight_block(1, 2, 3, 3);
        // A lone block is minimally unsatisfiable, hence not stable.
        let out = or2_combine(&block, &block).formula;
        assert!(out.is_exact_k(3));
        assert!(!formula_stability(&out).unwrap().stable);
        let two = CnfFormula::new(6, block.clauses().iter().chain(block.shifted(3).clauses()).cloned().collect()).unwrap();
        assert!(formula_stability(&or2_product(&two, &block).formula).unwrap().stable);
        assert!(is_satisfiable(&or2_combine(&f, &block).formula).unwrap());
    }
}
