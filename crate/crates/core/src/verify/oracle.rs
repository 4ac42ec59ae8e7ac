//! Exhaustive ground truth on bitmasks. Deliberately shares nothing with `solvers`.

use super::HarnessError;
use crate::cnf::CnfFormula;
use crate::graph::Graph;
use crate::solvers::GraphNumber;

pub const SUBSET_LIMIT: usize = 20;
pub const COLORING_LIMIT: usize = 15;
/// Vertex limit for listing all optimal colorings (χ^n assignments).
pub const LISTING_LIMIT: usize = 8;
/// Variable limit for assignment enumeration.
pub const ASSIGNMENT_LIMIT: usize = 22;

fn masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect()
}

fn independent(adj: &[u32], set: u32) -> bool {
    (0..adj.len()).all(|v| set >> v & 1 == 0 || adj[v] & set == 0)
}

fn clique(adj: &[u32], set: u32) -> bool {
    (0..adj.len()).all(|v| set >> v & 1 == 0 || (set & !(1 << v)) & !adj[v] == 0)
}

fn covers(adj: &[u32], set: u32) -> bool {
    (0..adj.len()).all(|v| set >> v & 1 == 1 || adj[v] & !set == 0)
}

/// Exhaustive ξ(G).
pub fn brute_force_number(g: &Graph, xi: GraphNumber) -> Result<usize, HarnessError> {
    let n = g.n();
    let limit = if xi == GraphNumber::Chi { COLORING_LIMIT } else { SUBSET_LIMIT };
    if n > limit {
        return Err(HarnessError::TooLarge { n, limit });
    }
    let adj = masks(g);
    let all = 0..(1u32 << n);
    let size = |s: u32| s.count_ones() as usize;
    Ok(match xi {
        GraphNumber::Alpha => all.filter(|&s| independent(&adj, s)).map(size).max().unwrap_or(0),
        GraphNumber::Omega => all.filter(|&s| clique(&adj, s)).map(size).max().unwrap_or(0),
        GraphNumber::Beta => all.filter(|&s| covers(&adj, s)).map(size).min().unwrap_or(0),
        GraphNumber::Chi => chromatic(&adj),
    })
}

/// Minimum partition into independent sets by subset dynamic programming.
fn chromatic(adj: &[u32]) -> usize {
    let n = adj.len();
    let full = (1u32 << n) - 1;
    let mut best = vec![usize::MAX; 1 << n];
    best[0] = 0;
    for set in 1..=full {
        let low = set & set.wrapping_neg();
        let rest = set & !low;
        // Enumerate classes containing the lowest vertex.
        let mut sub = rest;
        loop {
            let class = sub | low;
            if independent(adj, class) {
                let prev = best[(set & !class) as usize];
                if prev != usize::MAX {
                    best[set as usize] = best[set as usize].min(prev + 1);
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    best[full as usize]
}

/// Every proper coloring using exactly the colors `0..χ(G)` (as labeled maps).
pub fn optimal_colorings(g: &Graph) -> Result<Vec<Vec<usize>>, HarnessError> {
    let n = g.n();
    if n > LISTING_LIMIT {
        return Err(HarnessError::TooLarge { n, limit: LISTING_LIMIT });
    }
    let k = brute_force_number(g, GraphNumber::Chi)?;
    let mut out = Vec::new();
    let mut col = vec![0usize; n];
    loop {
        let proper = (0..n).all(|v| g.neighbors(v).iter().all(|&w| col[w] != col[v]));
        if proper {
            out.push(col.clone());
        }
        // Odometer over k^n assignments.
        let mut i = 0;
        while i < n {
            col[i] += 1;
            if col[i] < k {
                break;
            }
            col[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    Ok(out)
}

/// Satisfiability of Φ and of every Φ − C_i, from one pass over all assignments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaTruth {
    pub satisfiable: bool,
    /// Entry i: is Φ without clause i satisfiable?
    pub without_clause: Vec<bool>,
}

impl FormulaTruth {
    pub fn stable(&self) -> bool {
        self.satisfiable || self.without_clause.iter().all(|&s| !s)
    }
}

pub fn brute_force_formula(f: &CnfFormula) -> Result<FormulaTruth, HarnessError> {
    let n = f.num_vars() as usize;
    if n > ASSIGNMENT_LIMIT {
        return Err(HarnessError::TooLarge { n, limit: ASSIGNMENT_LIMIT });
    }
    // Per clause: bits of its positive and of its negative variables.
    let clauses: Vec<(u32, u32)> = f
        .clauses()
        .iter()
        .map(|c| {
            c.iter().fold((0, 0), |(p, q), &l| {
                let bit = 1u32 << (l.unsigned_abs() - 1);
                if l > 0 {
                    (p | bit, q)
                } else {
                    (p, q | bit)
                }
            })
        })
        .collect();
    let mut truth = FormulaTruth {
        satisfiable: false,
        without_clause: vec![false; clauses.len()],
    };
    for a in 0u32..1 << n {
        let mut falsified = clauses.iter().enumerate().filter(|(_, &(p, q))| a & p == 0 && !a & q == 0);
        match (falsified.next(), falsified.next()) {
            (None, _) => {
                truth.satisfiable = true;
                truth.without_clause.fill(true);
                break;
            }
            (Some((i, _)), None) => truth.without_clause[i] = true,
            _ => {}
        }
    }
    Ok(truth)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        assert_eq!(brute_force_number(&Graph::cycle(5), GraphNumber::Chi).unwrap(), 3);
        assert_eq!(brute_force_number(&Graph::path(3), GraphNumber::Beta).unwrap(), 1);
        assert_eq!(brute_force_number(&Graph::null(), GraphNumber::Omega).unwrap(), 0);
        assert!(brute_force_number(&Graph::empty(16), GraphNumber::Chi).is_err());
        assert!(optimal_colorings(&Graph::empty(9)).is_err());
    }

    #[test]
    fn formula_truth() {
        let block = CnfFormula::eight_block(1, 2, 3, 3);
        let t = brute_force_formula(&block).unwrap();
        assert!(!t.satisfiable && t.without_clause.iter().all(|&s| s) && !t.stable());
        let f = CnfFormula::new(1, vec![vec![1], vec![-1], vec![1]]).unwrap();
        let t = brute_force_formula(&f).unwrap();
        assert_eq!(t.without_clause, vec![false, true, false]);
        assert!(brute_force_formula(&CnfFormula::empty(0)).unwrap().satisfiable);
        assert!(!brute_force_formula(&CnfFormula::new(0, vec![vec![]]).unwrap()).unwrap().satisfiable);
    }

    #[test]
    fn coloring_count() {
        // C5 has 30 proper 3-colorings.
        assert_eq!(optimal_colorings(&Graph::cycle(5)).unwrap().len(), 30);
        assert_eq!(optimal_colorings(&Graph::null()).unwrap(), vec![Vec::<usize>::new()]);
    }
}
