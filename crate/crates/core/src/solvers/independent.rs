//! Maximum independent set (and hence minimum vertex cover) by branch and bound.
//!
//! Kernelization: isolated and pendant vertices, simplicial vertices of small degree,
//! degree-2 folding and neighborhood domination. Branching is on a maximum-degree
//! vertex, disconnected kernels are solved per component, and the bound is a greedy
//! clique cover.

use super::{Meter, SolveError};
use crate::graph::Graph;

const SIMPLICIAL_MAX_DEGREE: usize = 8;

#[derive(Clone, Copy, Debug)]
enum Op {
    Take(usize),
    /// `v` had exactly the nonadjacent neighbors `a`, `b`; all three were replaced by `w`.
    Fold { v: usize, a: usize, b: usize, w: usize },
}

#[derive(Clone)]
struct Kernel {
    adj: Vec<Vec<usize>>,
    alive: Vec<bool>,
    live: usize,
    log: Vec<Op>,
}

impl Kernel {
    fn new(adj: Vec<Vec<usize>>) -> Kernel {
        let n = adj.len();
        Kernel {
            adj,
            alive: vec![true; n],
            live: n,
            log: Vec::new(),
        }
    }

    fn credit(&self) -> usize {
        self.log.len()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    fn remove(&mut self, v: usize, touched: &mut Vec<usize>) {
        debug_assert!(self.alive[v]);
        self.alive[v] = false;
        self.live -= 1;
        let nb = std::mem::take(&mut self.adj[v]);
        for w in nb {
            if let Ok(pos) = self.adj[w].binary_search(&v) {
                self.adj[w].remove(pos);
            }
            touched.push(w);
        }
    }

    fn take(&mut self, v: usize, touched: &mut Vec<usize>) {
        self.log.push(Op::Take(v));
        let nb = self.adj[v].clone();
        for w in nb {
            self.remove(w, touched);
        }
        self.remove(v, touched);
    }

    fn fold(&mut self, v: usize, a: usize, b: usize, touched: &mut Vec<usize>) {
        let mut nb: Vec<usize> = self.adj[a]
            .iter()
            .chain(self.adj[b].iter())
            .copied()
            .filter(|&x| x != v && x != a && x != b)
            .collect();
        nb.sort_unstable();
        nb.dedup();
        for x in [v, a, b] {
            self.remove(x, touched);
        }
        let w = self.adj.len();
        for &x in &nb {
            self.adj[x].push(w);
            touched.push(x);
        }
        self.adj.push(nb);
        self.alive.push(true);
        self.live += 1;
        touched.push(w);
        self.log.push(Op::Fold { v, a, b, w });
    }

    fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&w| self.has_edge(u, w)))
    }

    /// Applies the cheap rules to a fixpoint, then domination, until nothing changes.
    fn reduce(&mut self) {
        let mut work: Vec<usize> = (0..self.adj.len()).filter(|&v| self.alive[v]).collect();
        loop {
            while let Some(v) = work.pop() {
                if !self.alive[v] {
                    continue;
                }
                let d = self.adj[v].len();
                if d <= 1 {
                    self.take(v, &mut work);
                } else if d == 2 {
                    let (a, b) = (self.adj[v][0], self.adj[v][1]);
                    if self.has_edge(a, b) {
                        self.take(v, &mut work);
                    } else {
                        self.fold(v, a, b, &mut work);
                    }
                } else if d <= SIMPLICIAL_MAX_DEGREE && self.is_clique(&self.adj[v]) {
                    self.take(v, &mut work);
                }
            }
            // Domination: if N[v] ⊆ N[u] for an edge uv, some maximum set avoids u.
            let mut removed_any = false;
            for u in 0..self.adj.len() {
                if !self.alive[u] {
                    continue;
                }
                let dominated = self.adj[u].iter().copied().find(|&v| {
                    self.adj[v].len() <= self.adj[u].len()
                        && self.adj[v].iter().all(|&x| x == u || self.has_edge(u, x))
                });
                if dominated.is_some() {
                    self.remove(u, &mut work);
                    removed_any = true;
                }
            }
            if !removed_any {
                break;
            }
        }
    }

    /// Number of cliques in a greedy clique partition of the live vertices.
    fn clique_cover_bound(&self) -> usize {
        let n = self.adj.len();
        let mut order: Vec<usize> = (0..n).filter(|&v| self.alive[v]).collect();
        order.sort_by_key(|&v| (self.adj[v].len(), v));
        let mut covered = vec![false; n];
        let mut count = 0;
        let mut clique = Vec::new();
        for v in order {
            if covered[v] {
                continue;
            }
            count += 1;
            covered[v] = true;
            clique.clear();
            clique.push(v);
            for &w in &self.adj[v] {
                if !covered[w] && clique.iter().all(|&x| self.has_edge(x, w)) {
                    covered[w] = true;
                    clique.push(w);
                }
            }
        }
        count
    }

    fn components(&self) -> Vec<Vec<usize>> {
        let n = self.adj.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if !self.alive[s] || seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    fn extract(&self, comp: &[usize]) -> Kernel {
        let mut map = std::collections::HashMap::with_capacity(comp.len());
        for (i, &v) in comp.iter().enumerate() {
            map.insert(v, i);
        }
        let adj = comp
            .iter()
            .map(|&v| {
                let mut l: Vec<usize> = self.adj[v].iter().map(|w| map[w]).collect();
                l.sort_unstable();
                l
            })
            .collect();
        Kernel::new(adj)
    }

    /// Maps a set of live vertices back through the log to ids of the original kernel.
    fn unwind(&self, mut set: Vec<usize>) -> Vec<usize> {
        let mut inside = vec![false; self.adj.len()];
        for &v in &set {
            inside[v] = true;
        }
        for op in self.log.iter().rev() {
            match *op {
                Op::Take(v) => {
                    inside[v] = true;
                    set.push(v);
                }
                Op::Fold { v, a, b, w } => {
                    if inside[w] {
                        inside[w] = false;
                        set.retain(|&x| x != w);
                        inside[a] = true;
                        inside[b] = true;
                        set.push(a);
                        set.push(b);
                    } else {
                        inside[v] = true;
                        set.push(v);
                    }
                }
            }
        }
        set
    }
}

/// Returns a maximum independent set of `k` (in the kernel's original ids) when its
/// size exceeds `lb`, `None` when α ≤ lb. Stops early at any set of size ≥ `stop_at`.
fn solve(mut k: Kernel, lb: isize, stop_at: usize, meter: &mut Meter) -> Result<Option<Vec<usize>>, SolveError> {
    meter.tick()?;
    k.reduce();
    let credit = k.credit();
    if k.live == 0 {
        return Ok(if credit as isize > lb { Some(k.unwind(Vec::new())) } else { None });
    }
    if (credit + k.clique_cover_bound()) as isize <= lb {
        return Ok(None);
    }
    let comps = k.components();
    if comps.len() > 1 {
        let subs: Vec<Kernel> = comps.iter().map(|c| k.extract(c)).collect();
        let bounds: Vec<usize> = subs.iter().map(Kernel::clique_cover_bound).collect();
        let mut remaining: usize = bounds.iter().sum();
        let mut total = credit;
        let mut picked = Vec::new();
        for ((sub, comp), bound) in subs.into_iter().zip(&comps).zip(bounds) {
            remaining -= bound;
            let need = lb - (total + remaining) as isize;
            match solve(sub, need.max(-1), usize::MAX, meter)? {
                Some(s) => {
                    total += s.len();
                    picked.extend(s.into_iter().map(|i| comp[i]));
                }
                None => return Ok(None),
            }
        }
        return Ok(Some(k.unwind(picked)));
    }
    let v = (0..k.adj.len())
        .filter(|&v| k.alive[v])
        .max_by(|&a, &b| k.adj[a].len().cmp(&k.adj[b].len()).then(b.cmp(&a)))
        .expect("live vertex");
    let mut touched = Vec::new();
    let mut with_v = k.clone();
    with_v.take(v, &mut touched);
    let first = solve(with_v, lb, stop_at, meter)?;
    let mut lb = lb;
    if let Some(s) = &first {
        if s.len() >= stop_at {
            return Ok(first);
        }
        lb = s.len() as isize;
    }
    let mut without_v = k;
    without_v.remove(v, &mut touched);
    let second = solve(without_v, lb, stop_at, meter)?;
    Ok(second.or(first))
}

fn kernel_of(g: &Graph) -> Kernel {
    Kernel::new((0..g.n()).map(|v| g.neighbors(v).to_vec()).collect())
}

fn greedy(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut blocked = vec![false; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    let mut set = Vec::new();
    for v in order {
        if !blocked[v] {
            set.push(v);
            blocked[v] = true;
            for &w in g.neighbors(v) {
                blocked[w] = true;
            }
        }
    }
    set
}

pub(crate) fn maximum(g: &Graph, meter: &mut Meter) -> Result<Vec<usize>, SolveError> {
    let start = greedy(g);
    let found = solve(kernel_of(g), start.len() as isize, usize::MAX, meter)?;
    let mut set = found.unwrap_or(start);
    set.sort_unstable();
    debug_assert!(g.is_independent_set(&set));
    Ok(set)
}

pub(crate) fn at_least(g: &Graph, t: usize, meter: &mut Meter) -> Result<Option<Vec<usize>>, SolveError> {
    if t == 0 {
        return Ok(Some(Vec::new()));
    }
    let start = greedy(g);
    if start.len() >= t {
        let mut s = start;
        s.sort_unstable();
        return Ok(Some(s));
    }
    let found = solve(kernel_of(g), t as isize - 1, t, meter)?;
    Ok(found.map(|mut s| {
        s.sort_unstable();
        debug_assert!(g.is_independent_set(&s) && s.len() >= t);
        s
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::Budget;

    fn alpha(g: &Graph) -> usize {
        maximum(g, &mut Meter::new(Budget::default())).unwrap().len()
    }

    #[test]
    fn classic_values() {
        assert_eq!(alpha(&Graph::cycle(5)), 2);
        assert_eq!(alpha(&Graph::cycle(9)), 4);
        assert_eq!(alpha(&Graph::path(6)), 3);
        assert_eq!(alpha(&Graph::complete(5)), 1);
        assert_eq!(alpha(&Graph::null()), 0);
        let petersen = Graph::from_edges(
            10,
            [
                (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
                (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
            ],
        )
        .unwrap();
        assert_eq!(alpha(&petersen), 4);
    }

    #[test]
    fn fold_reconstruction() {
        // Long even and odd paths force chains of folds.
        for n in 1..12 {
            assert_eq!(alpha(&Graph::path(n)), n.div_ceil(2));
        }
        for n in 3..12 {
            assert_eq!(alpha(&Graph::cycle(n)), n / 2);
        }
    }

    #[test]
    fn decision() {
        let c7 = Graph::cycle(7);
        let mut m = Meter::new(Budget::default());
        assert!(at_least(&c7, 3, &mut m).unwrap().is_some());
        assert!(at_least(&c7, 4, &mut m).unwrap().is_none());
    }
}
