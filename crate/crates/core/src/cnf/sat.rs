//! DPLL with unit propagation and occurrence-count branching.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{CnfFormula, Lit};
use crate::solvers::{Budget, Meter, SolveError};

const UNSET: i8 = 0;

/// Adds, to a fixpoint, every resolvent of two clauses that agree except for one
/// complementary pair, e.g. (a∨b∨z), (a∨b∨¬z) give (a∨b). The resolvents are implied,
/// so satisfiability is unchanged, and they let unit propagation see through padding.
fn merge_closure(input: &[Vec<Lit>]) -> Vec<Vec<Lit>> {
    let mut clauses: Vec<Vec<Lit>> = input.to_vec();
    let mut seen: HashSet<Vec<Lit>> = HashSet::new();
    let mut halves: HashSet<(Vec<Lit>, Lit)> = HashSet::new();
    let mut i = 0;
    while i < clauses.len() {
        let mut sorted = clauses[i].clone();
        sorted.sort_unstable();
        i += 1;
        if !seen.insert(sorted.clone()) {
            continue;
        }
        for (j, &l) in sorted.iter().enumerate() {
            let mut rest = sorted.clone();
            rest.remove(j);
            if halves.contains(&(rest.clone(), -l)) && !seen.contains(&rest) {
                clauses.push(rest.clone());
            }
            halves.insert((rest, l));
        }
    }
    clauses
}

fn lit_index(l: Lit) -> usize {
    2 * l.unsigned_abs() as usize + usize::from(l < 0)
}

struct Dpll {
    clauses: Vec<Vec<Lit>>,
    occ: Vec<Vec<usize>>,
    value: Vec<i8>,
    trail: Vec<Lit>,
    true_count: Vec<u32>,
    false_count: Vec<u32>,
    pending: Vec<usize>,
    conflict: bool,
    // Scratch space reused across nodes.
    parent: Vec<usize>,
    score: Vec<u32>,
}

impl Dpll {
    fn new(f: &CnfFormula) -> Self {
        let n = f.num_vars() as usize;
        let clauses = merge_closure(f.clauses());
        let mut occ = vec![Vec::new(); 2 * n + 2];
        for (ci, c) in clauses.iter().enumerate() {
            for &l in c {
                occ[lit_index(l)].push(ci);
            }
        }
        let m = clauses.len();
        Dpll {
            occ,
            value: vec![UNSET; n + 1],
            trail: Vec::new(),
            true_count: vec![0; m],
            false_count: vec![0; m],
            pending: (0..m).filter(|&ci| clauses[ci].len() == 1).collect(),
            conflict: clauses.iter().any(Vec::is_empty),
            parent: (0..=n).collect(),
            score: vec![0; 2 * n + 2],
            clauses,
        }
    }

    fn lit_value(&self, l: Lit) -> i8 {
        let v = self.value[l.unsigned_abs() as usize];
        if l > 0 {
            v
        } else {
            -v
        }
    }

    fn open(&self, ci: usize) -> bool {
        self.true_count[ci] == 0
    }

    fn assign(&mut self, l: Lit) {
        self.value[l.unsigned_abs() as usize] = if l > 0 { 1 } else { -1 };
        self.trail.push(l);
        for &ci in &self.occ[lit_index(l)] {
            self.true_count[ci] += 1;
        }
        for &ci in &self.occ[lit_index(-l)] {
            self.false_count[ci] += 1;
            if self.true_count[ci] == 0 {
                let len = self.clauses[ci].len() as u32;
                if self.false_count[ci] == len {
                    self.conflict = true;
                } else if self.false_count[ci] + 1 == len {
                    self.pending.push(ci);
                }
            }
        }
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let l = self.trail.pop().expect("trail above mark");
            self.value[l.unsigned_abs() as usize] = UNSET;
            for &ci in &self.occ[lit_index(l)] {
                self.true_count[ci] -= 1;
            }
            for &ci in &self.occ[lit_index(-l)] {
                self.false_count[ci] -= 1;
            }
        }
        self.pending.clear();
        self.conflict = false;
    }

    /// Returns false on conflict.
    fn propagate(&mut self) -> bool {
        while let Some(ci) = self.pending.pop() {
            if self.conflict {
                break;
            }
            if !self.open(ci) {
                continue;
            }
            if let Some(&l) = self.clauses[ci].iter().find(|&&l| self.lit_value(l) == UNSET) {
                self.assign(l);
            }
        }
        self.pending.clear();
        !self.conflict
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Splits open clauses into groups sharing no unassigned variable.
    fn components(&mut self, open: &[usize]) -> Vec<Vec<usize>> {
        let clauses = std::mem::take(&mut self.clauses);
        for &ci in open {
            for &l in &clauses[ci] {
                let v = l.unsigned_abs() as usize;
                self.parent[v] = v;
            }
        }
        for &ci in open {
            let mut first = None;
            for &l in &clauses[ci] {
                if self.lit_value(l) != UNSET {
                    continue;
                }
                let v = l.unsigned_abs() as usize;
                match first {
                    None => first = Some(v),
                    Some(f) => {
                        let (a, b) = (self.find(f), self.find(v));
                        self.parent[a] = b;
                    }
                }
            }
        }
        let mut roots: Vec<usize> = Vec::new();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for &ci in open {
            let v = clauses[ci]
                .iter()
                .find(|&&l| self.lit_value(l) == UNSET)
                .expect("open clause after propagation has an unassigned literal")
                .unsigned_abs() as usize;
            let r = self.find(v);
            match roots.iter().position(|&x| x == r) {
                Some(i) => groups[i].push(ci),
                None => {
                    roots.push(r);
                    groups.push(vec![ci]);
                }
            }
        }
        self.clauses = clauses;
        groups
    }

    /// Literal with the most occurrences in the open clauses; ties go to the lowest
    /// variable, positive first.
    fn choose(&mut self, open: &[usize]) -> Lit {
        let clauses = std::mem::take(&mut self.clauses);
        let mut best: Option<(u32, Lit)> = None;
        for &ci in open {
            for &l in &clauses[ci] {
                if self.lit_value(l) == UNSET {
                    self.score[lit_index(l)] += 1;
                }
            }
        }
        for &ci in open {
            for &l in &clauses[ci] {
                let idx = lit_index(l);
                let sc = self.score[idx];
                if sc == 0 {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bs, bl)) => sc > bs || (sc == bs && lit_index(l) < lit_index(bl)),
                };
                if better {
                    best = Some((sc, l));
                }
            }
        }
        for &ci in open {
            for &l in &clauses[ci] {
                self.score[lit_index(l)] = 0;
            }
        }
        self.clauses = clauses;
        best.expect("open clauses have unassigned literals").1
    }

    fn search(&mut self, active: &[usize], meter: &mut Meter) -> Result<bool, SolveError> {
        meter.tick()?;
        let mark = self.trail.len();
        if !self.propagate() {
            self.undo(mark);
            return Ok(false);
        }
        let open: Vec<usize> = active.iter().copied().filter(|&ci| self.open(ci)).collect();
        if open.is_empty() {
            return Ok(true);
        }
        let comps = self.components(&open);
        if comps.len() > 1 {
            for comp in comps {
                if !self.search(&comp, meter)? {
                    self.undo(mark);
                    return Ok(false);
                }
            }
            return Ok(true);
        }
        let l = self.choose(&open);
        for choice in [l, -l] {
            let inner = self.trail.len();
            self.assign(choice);
            if self.search(&open, meter)? {
                return Ok(true);
            }
            self.undo(inner);
        }
        self.undo(mark);
        Ok(false)
    }
}

/// A satisfying assignment (`model[v - 1]`), or `None` when unsatisfiable.
pub fn solve(f: &CnfFormula, budget: Budget) -> Result<Option<Vec<bool>>, SolveError> {
    let mut d = Dpll::new(f);
    if d.conflict {
        return Ok(None);
    }
    let all: Vec<usize> = (0..f.num_clauses()).collect();
    if !d.search(&all, &mut Meter::new(budget))? {
        return Ok(None);
    }
    let model: Vec<bool> = d.value[1..].iter().map(|&v| v == 1).collect();
    debug_assert!(f.evaluate(&model));
    Ok(Some(model))
}

pub fn is_satisfiable(f: &CnfFormula) -> Result<bool, SolveError> {
    Ok(solve(f, Budget::default())?.is_some())
}

/// Number of satisfying assignments over all `num_vars` variables, by enumeration.
pub fn count_models(f: &CnfFormula) -> u64 {
    let n = f.num_vars() as usize;
    assert!(n <= 30, "model counting enumerates 2^{n} assignments");
    let mut assignment = vec![false; n];
    (0u64..1 << n)
        .filter(|&bits| {
            for (i, a) in assignment.iter_mut().enumerate() {
                *a = bits >> i & 1 == 1;
            }
            f.evaluate(&assignment)
        })
        .count() as u64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaStability {
    pub satisfiable: bool,
    /// (clause index, is the formula without that clause satisfiable?)
    pub per_clause: Vec<(usize, bool)>,
    pub stable: bool,
}

impl FormulaStability {
    /// Unsatisfiable, and every 1-clause deletion makes it satisfiable.
    pub fn minimally_unsatisfiable(&self) -> bool {
        !self.satisfiable && self.per_clause.iter().all(|&(_, s)| s)
    }
}

pub fn formula_stability(f: &CnfFormula) -> Result<FormulaStability, SolveError> {
    formula_stability_with(f, Budget::default())
}

pub fn formula_stability_with(f: &CnfFormula, budget: Budget) -> Result<FormulaStability, SolveError> {
    let satisfiable = solve(f, budget)?.is_some();
    let per_clause: Vec<(usize, bool)> = if satisfiable {
        // Deleting a clause keeps every model.
        (0..f.num_clauses()).map(|i| (i, true)).collect()
    } else {
        (0..f.num_clauses())
            .into_par_iter()
            .map(|i| Ok((i, solve(&f.without_clause(i), budget)?.is_some())))
            .collect::<Result<_, SolveError>>()?
    };
    let stable = satisfiable || per_clause.iter().all(|&(_, s)| !s);
    Ok(FormulaStability {
        satisfiable,
        per_clause,
        stable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let f = CnfFormula::new(2, vec![vec![1, 2], vec![-1], vec![-2]]).unwrap();
        assert!(!is_satisfiable(&f).unwrap());
        assert!(is_satisfiable(&CnfFormula::empty(0)).unwrap());
        assert!(!is_satisfiable(&CnfFormula::new(1, vec![vec![]]).unwrap()).unwrap());
        let block = CnfFormula::eight_block(1, 2, 3, 3);
        assert!(!is_satisfiable(&block).unwrap());
        assert_eq!(count_models(&block), 0);
        assert_eq!(count_models(&CnfFormula::new(3, vec![vec![1, 2, 3]]).unwrap()), 7);
    }

    #[test]
    fn stability_examples() {
        let sat = CnfFormula::new(3, vec![vec![1, 2, 3]]).unwrap();
        assert!(formula_stability(&sat).unwrap().stable);
        let block = CnfFormula::eight_block(1, 2, 3, 3);
        let s = formula_stability(&block).unwrap();
        assert!(!s.stable && s.minimally_unsatisfiable());
        let other = CnfFormula::eight_block(4, 5, 6, 6);
        let two = CnfFormula::new(6, block.clauses().iter().chain(other.clauses()).cloned().collect()).unwrap();
        let s = formula_stability(&two).unwrap();
        assert!(!s.satisfiable && s.stable);
    }
}
