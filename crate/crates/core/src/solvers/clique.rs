//! Maximum clique by bitset branch and bound with a greedy coloring bound.

use fixedbitset::FixedBitSet;

use super::{Meter, SolveError};
use crate::graph::Graph;

struct Search<'a> {
    bits: Vec<FixedBitSet>,
    order: Vec<usize>,
    best: Vec<usize>,
    stop_at: usize,
    meter: &'a mut Meter,
}

impl Search<'_> {
    /// Orders `p` greedily into color classes; returns (vertex, color bound) pairs.
    fn color_sort(&self, p: &FixedBitSet) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(p.count_ones(..));
        let mut uncolored = p.clone();
        let mut color = 0;
        while !uncolored.is_clear() {
            color += 1;
            let mut q = uncolored.clone();
            while let Some(v) = self.order.iter().copied().find(|&v| q.contains(v)) {
                q.set(v, false);
                q.difference_with(&self.bits[v]);
                uncolored.set(v, false);
                out.push((v, color));
            }
        }
        out
    }

    fn expand(&mut self, r: &mut Vec<usize>, mut p: FixedBitSet) -> Result<(), SolveError> {
        self.meter.tick()?;
        let sorted = self.color_sort(&p);
        for &(v, bound) in sorted.iter().rev() {
            if r.len() + bound <= self.best.len() || self.best.len() >= self.stop_at {
                return Ok(());
            }
            r.push(v);
            let mut np = p.clone();
            np.intersect_with(&self.bits[v]);
            if np.is_clear() {
                if r.len() > self.best.len() {
                    self.best = r.clone();
                }
            } else {
                self.expand(r, np)?;
            }
            r.pop();
            p.set(v, false);
        }
        Ok(())
    }
}

fn run(g: &Graph, stop_at: usize, meter: &mut Meter) -> Result<Vec<usize>, SolveError> {
    let n = g.n();
    let bits: Vec<FixedBitSet> = (0..n)
        .map(|v| {
            let mut b = FixedBitSet::with_capacity(n);
            for &w in g.neighbors(v) {
                b.insert(w);
            }
            b
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut s = Search {
        bits,
        order,
        best: Vec::new(),
        stop_at,
        meter,
    };
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    if n > 0 {
        s.expand(&mut Vec::new(), all)?;
    }
    let mut best = s.best;
    best.sort_unstable();
    debug_assert!(g.is_clique(&best));
    Ok(best)
}

pub(crate) fn maximum(g: &Graph, meter: &mut Meter) -> Result<Vec<usize>, SolveError> {
    run(g, usize::MAX, meter)
}

pub(crate) fn at_least(g: &Graph, t: usize, meter: &mut Meter) -> Result<Option<Vec<usize>>, SolveError> {
    if t == 0 {
        return Ok(Some(Vec::new()));
    }
    let best = run(g, t, meter)?;
    Ok((best.len() >= t).then_some(best))
}
