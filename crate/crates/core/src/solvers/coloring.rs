//! Exact graph coloring.
//!
//! Pieces are split into connected components (χ is the max) and co-components
//! (χ is the sum). A k-colorability test first removes vertices of degree < k and
//! dominated vertices, then runs DSATUR-ordered backtracking with forward checking,
//! clique-based Hall pruning and component splitting of the uncolored remainder.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use super::{Meter, SolveError};
use crate::graph::Graph;

const NONE: usize = usize::MAX;
const MAX_SEARCH_COLORS: usize = 128;

struct Piece {
    adj: Vec<Vec<usize>>,
    bits: Vec<FixedBitSet>,
}

impl Piece {
    fn from_graph(g: &Graph) -> Piece {
        let adj: Vec<Vec<usize>> = (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect();
        Piece::from_adj(adj)
    }

    fn from_adj(adj: Vec<Vec<usize>>) -> Piece {
        let n = adj.len();
        let bits = adj
            .iter()
            .map(|l| {
                let mut b = FixedBitSet::with_capacity(n);
                for &w in l {
                    b.insert(w);
                }
                b
            })
            .collect();
        Piece { adj, bits }
    }

    fn n(&self) -> usize {
        self.adj.len()
    }

    fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    fn induced(&self, vs: &[usize]) -> Piece {
        let mut map = vec![NONE; self.n()];
        for (i, &v) in vs.iter().enumerate() {
            map[v] = i;
        }
        let adj = vs
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter(|&&w| map[w] != NONE)
                    .map(|&w| map[w])
                    .collect()
            })
            .collect();
        Piece::from_adj(adj)
    }

    fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
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

    /// Connected components of the complement graph.
    fn co_components(&self) -> Vec<Vec<usize>> {
        let mut unvisited: Vec<usize> = (0..self.n()).collect();
        let mut out = Vec::new();
        while let Some(s) = unvisited.first().copied() {
            unvisited.swap_remove(0);
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() && !unvisited.is_empty() {
                let v = comp[i];
                i += 1;
                let (mut keep, mut take) = (Vec::new(), Vec::new());
                for &w in &unvisited {
                    if self.bits[v].contains(w) {
                        keep.push(w);
                    } else {
                        take.push(w);
                    }
                }
                unvisited = keep;
                comp.extend(take);
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out.sort();
        out
    }
}

fn num_colors(col: &[usize]) -> usize {
    col.iter().max().map_or(0, |m| m + 1)
}

/// Renames colors in order of first appearance.
fn compact(col: &mut [usize]) {
    let mut map = std::collections::HashMap::new();
    for c in col.iter_mut() {
        let next = map.len();
        *c = *map.entry(*c).or_insert(next);
    }
}

pub(crate) fn chromatic(g: &Graph, meter: &mut Meter) -> Result<(usize, Vec<usize>), SolveError> {
    let (k, mut col) = chi_piece(&Piece::from_graph(g), meter)?;
    compact(&mut col);
    debug_assert!(g.is_proper_coloring(&col));
    Ok((k, col))
}

pub(crate) fn decide(g: &Graph, k: usize, meter: &mut Meter) -> Result<Option<Vec<usize>>, SolveError> {
    let res = decide_piece(&Piece::from_graph(g), k, meter)?;
    Ok(res.map(|mut col| {
        compact(&mut col);
        debug_assert!(g.is_proper_coloring(&col) && num_colors(&col) <= k);
        col
    }))
}

fn assemble(n: usize, parts: &[(Vec<usize>, Vec<usize>)], offsets: &[usize]) -> Vec<usize> {
    let mut col = vec![0; n];
    for ((vs, c), off) in parts.iter().zip(offsets) {
        for (i, &v) in vs.iter().enumerate() {
            col[v] = c[i] + off;
        }
    }
    col
}

fn chi_piece(p: &Piece, meter: &mut Meter) -> Result<(usize, Vec<usize>), SolveError> {
    let n = p.n();
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let comps = p.components();
    if comps.len() > 1 {
        let mut parts = Vec::new();
        let mut best = 0;
        for comp in comps {
            let (k, col) = chi_piece(&p.induced(&comp), meter)?;
            best = best.max(k);
            parts.push((comp, col));
        }
        return Ok((best, assemble(n, &parts, &vec![0; parts.len()])));
    }
    let cos = p.co_components();
    if cos.len() > 1 {
        let mut parts = Vec::new();
        let mut offsets = Vec::new();
        let mut total = 0;
        for co in cos {
            let (k, col) = chi_piece(&p.induced(&co), meter)?;
            offsets.push(total);
            total += k;
            parts.push((co, col));
        }
        return Ok((total, assemble(n, &parts, &offsets)));
    }
    let cliques = clique_family(p);
    let lb = cliques.iter().map(Vec::len).max().unwrap_or(1).max(if p.edge_count() > 0 { 2 } else { 1 });
    let mut best = dsatur_greedy(p);
    let mut ub = num_colors(&best);
    while ub > lb {
        match decide_piece(p, ub - 1, meter)? {
            Some(col) => {
                ub = num_colors(&col);
                best = col;
            }
            None => break,
        }
    }
    Ok((ub, best))
}

enum Removal {
    Peeled(usize),
    Dominated(usize, usize),
}

/// Removes vertices of degree < k and vertices dominated by a nonadjacent vertex,
/// to a fixpoint. Both removals preserve k-colorability.
fn reduce_for_k(p: &Piece, k: usize) -> (Vec<usize>, Vec<Removal>) {
    let n = p.n();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = p.adj.iter().map(Vec::len).collect();
    let mut removed = Vec::new();
    let remove = |v: usize, alive: &mut Vec<bool>, deg: &mut Vec<usize>| {
        alive[v] = false;
        for &w in &p.adj[v] {
            deg[w] -= 1;
        }
    };
    loop {
        let mut changed = false;
        let mut stack: Vec<usize> = (0..n).filter(|&v| alive[v] && deg[v] < k).collect();
        while let Some(v) = stack.pop() {
            if !alive[v] {
                continue;
            }
            remove(v, &mut alive, &mut deg);
            removed.push(Removal::Peeled(v));
            changed = true;
            for &w in &p.adj[v] {
                if alive[w] && deg[w] + 1 == k {
                    stack.push(w);
                }
            }
        }
        for u in 0..n {
            if !alive[u] || deg[u] == 0 {
                continue;
            }
            let x = p.adj[u]
                .iter()
                .copied()
                .filter(|&x| alive[x])
                .min_by_key(|&x| (deg[x], x))
                .expect("positive degree");
            let dominator = p.adj[x].iter().copied().find(|&w| {
                w != u
                    && alive[w]
                    && deg[w] >= deg[u]
                    && !p.bits[u].contains(w)
                    && p.adj[u].iter().all(|&y| !alive[y] || p.bits[w].contains(y))
            });
            if let Some(w) = dominator {
                remove(u, &mut alive, &mut deg);
                removed.push(Removal::Dominated(u, w));
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    ((0..n).filter(|&v| alive[v]).collect(), removed)
}

fn decide_piece(p: &Piece, k: usize, meter: &mut Meter) -> Result<Option<Vec<usize>>, SolveError> {
    let n = p.n();
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    if k == 0 {
        return Ok(None);
    }
    if k >= n {
        return Ok(Some((0..n).collect()));
    }
    let (kept, removed) = reduce_for_k(p, k);
    let core_col = if removed.is_empty() {
        decide_core(p, k, meter)?
    } else {
        let core = p.induced(&kept);
        decide_core(&core, k, meter)?.map(|c| {
            let mut col = vec![NONE; n];
            for (i, &v) in kept.iter().enumerate() {
                col[v] = c[i];
            }
            col
        })
    };
    let Some(mut col) = core_col else {
        return Ok(None);
    };
    for r in removed.iter().rev() {
        match *r {
            Removal::Dominated(u, w) => col[u] = col[w],
            Removal::Peeled(v) => {
                let mut used = vec![false; k];
                for &w in &p.adj[v] {
                    if col[w] != NONE {
                        used[col[w]] = true;
                    }
                }
                col[v] = used.iter().position(|&u| !u).expect("peeled vertex has a free color");
            }
        }
    }
    Ok(Some(col))
}

fn decide_core(p: &Piece, k: usize, meter: &mut Meter) -> Result<Option<Vec<usize>>, SolveError> {
    let n = p.n();
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let comps = p.components();
    if comps.len() > 1 {
        let mut parts = Vec::new();
        for comp in comps {
            match decide_piece(&p.induced(&comp), k, meter)? {
                Some(col) => parts.push((comp, col)),
                None => return Ok(None),
            }
        }
        return Ok(Some(assemble(n, &parts, &vec![0; parts.len()])));
    }
    let cos = p.co_components();
    if cos.len() > 1 {
        let mut parts = Vec::new();
        let mut offsets = Vec::new();
        let mut total = 0;
        for co in cos {
            let (c, col) = chi_piece(&p.induced(&co), meter)?;
            offsets.push(total);
            total += c;
            if total > k {
                return Ok(None);
            }
            parts.push((co, col));
        }
        return Ok(Some(assemble(n, &parts, &offsets)));
    }
    let cliques = clique_family(p);
    if cliques.iter().any(|c| c.len() > k) {
        return Ok(None);
    }
    let greedy = dsatur_greedy(p);
    if num_colors(&greedy) <= k {
        return Ok(Some(greedy));
    }
    if k > MAX_SEARCH_COLORS {
        return Err(SolveError::TooManyColors { k });
    }
    if n >= SEPARATION_MIN_N {
        let splits = separations(p);
        if !splits.is_empty() {
            return decide_by_separation(p, k, splits, meter);
        }
    }
    Search::new(p, k, cliques, meter).run()
}

const SEPARATION_MIN_N: usize = 24;

/// A side `side` that touches the rest of the piece only through `sep` (1 or 2
/// vertices).
struct Split {
    sep: Vec<usize>,
    side: Vec<usize>,
}

/// Separations by at most two vertices whose side holds at most half the vertices,
/// found by a lowpoint DFS of G − a for every vertex a.
fn separations(p: &Piece) -> Vec<Split> {
    let n = p.n();
    let max_side = n / 2;
    let mut found = Vec::new();
    let mut disc = vec![NONE; n];
    let mut low = vec![0; n];
    let mut size = vec![0; n];
    let mut order = Vec::with_capacity(n);
    for a in 0..n {
        disc.iter_mut().for_each(|d| *d = NONE);
        order.clear();
        let mut comps: Vec<(usize, usize)> = Vec::new();
        for root in 0..n {
            if root == a || disc[root] != NONE {
                continue;
            }
            let start = order.len();
            disc[root] = start;
            low[root] = start;
            order.push(root);
            let mut root_children = Vec::new();
            let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
            while let Some(&mut (v, ref mut i)) = stack.last_mut() {
                if let Some(&w) = p.adj[v].get(*i) {
                    *i += 1;
                    if w == a {
                        continue;
                    }
                    if disc[w] == NONE {
                        disc[w] = order.len();
                        low[w] = disc[w];
                        order.push(w);
                        stack.push((w, 0));
                        if v == root {
                            root_children.push(w);
                        }
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                    continue;
                }
                stack.pop();
                size[v] = order.len() - disc[v];
                if let Some(&(parent, _)) = stack.last() {
                    low[parent] = low[parent].min(low[v]);
                    if parent != root && low[v] >= disc[parent] && size[v] <= max_side {
                        found.push(Split {
                            sep: vec![a.min(parent), a.max(parent)],
                            side: order[disc[v]..disc[v] + size[v]].to_vec(),
                        });
                    }
                }
            }
            if root_children.len() > 1 {
                for &c in &root_children {
                    if size[c] <= max_side {
                        found.push(Split {
                            sep: vec![a.min(root), a.max(root)],
                            side: order[disc[c]..disc[c] + size[c]].to_vec(),
                        });
                    }
                }
            }
            comps.push((start, order.len()));
        }
        if comps.len() > 1 {
            for &(s, e) in &comps {
                if e - s <= max_side {
                    found.push(Split {
                        sep: vec![a],
                        side: order[s..e].to_vec(),
                    });
                }
            }
        }
    }
    // Smallest sides first; keep a family whose sides are pairwise disjoint and avoid
    // every chosen separator.
    found.sort_by_key(|s| s.side.len());
    let mut in_side = vec![false; n];
    let mut in_sep = vec![false; n];
    let mut chosen = Vec::new();
    for s in found {
        if s.sep.iter().any(|&v| in_side[v]) || s.side.iter().any(|&v| in_side[v] || in_sep[v]) {
            continue;
        }
        s.side.iter().for_each(|&v| in_side[v] = true);
        s.sep.iter().for_each(|&v| in_sep[v] = true);
        chosen.push(s);
    }
    chosen
}

enum Replacement {
    Drop,
    Edge,
    Merge,
}

struct Solved {
    split: Split,
    /// Coloring of side ++ sep with the separator vertices equal / different.
    same: Option<Vec<usize>>,
    different: Option<Vec<usize>>,
}

fn piece_with(p: &Piece, vs: &[usize], extra: Option<(usize, usize)>, merge_last: bool) -> Piece {
    let sub = p.induced(vs);
    let mut adj = sub.adj;
    if let Some((x, y)) = extra {
        adj[x].push(y);
        adj[y].push(x);
    }
    if merge_last {
        let b = adj.len() - 1;
        let a = b - 1;
        let moved = std::mem::take(&mut adj[b]);
        adj.pop();
        for w in moved {
            adj[w].retain(|&x| x != b);
            if !adj[a].contains(&w) {
                adj[a].push(w);
                adj[w].push(a);
            }
        }
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    Piece::from_adj(adj)
}

/// k-colorability is decided on each side once per separator pattern; the side is
/// then replaced by nothing, an edge, or a merge of the two separator vertices.
fn decide_by_separation(
    p: &Piece,
    k: usize,
    splits: Vec<Split>,
    meter: &mut Meter,
) -> Result<Option<Vec<usize>>, SolveError> {
    let n = p.n();
    let mut solved = Vec::with_capacity(splits.len());
    let mut parent: Vec<usize> = (0..n).collect();
    let mut extra: Vec<(usize, usize)> = Vec::new();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for split in splits {
        let vs: Vec<usize> = split.side.iter().chain(&split.sep).copied().collect();
        let (same, different) = match split.sep[..] {
            [_] => (decide_piece(&p.induced(&vs), k, meter)?, None),
            [a, b] if p.bits[a].contains(b) => (None, decide_piece(&p.induced(&vs), k, meter)?),
            [_, _] => {
                let m = vs.len();
                let same = decide_piece(&piece_with(p, &vs, None, true), k, meter)?.map(|mut c| {
                    c.push(c[m - 2]);
                    c
                });
                let different = decide_piece(&piece_with(p, &vs, Some((m - 2, m - 1)), false), k, meter)?;
                (same, different)
            }
            _ => unreachable!("separators have one or two vertices"),
        };
        let replacement = match (&split.sep[..], same.is_some(), different.is_some()) {
            ([_], true, _) => Replacement::Drop,
            ([a, b], _, true) if p.bits[*a].contains(*b) => Replacement::Drop,
            (_, true, true) => Replacement::Drop,
            (_, false, true) => Replacement::Edge,
            (_, true, false) => Replacement::Merge,
            (_, false, false) => return Ok(None),
        };
        match replacement {
            Replacement::Drop => {}
            Replacement::Edge => extra.push((split.sep[0], split.sep[1])),
            Replacement::Merge => {
                let (ra, rb) = (find(&mut parent, split.sep[0]), find(&mut parent, split.sep[1]));
                parent[rb] = ra;
            }
        }
        solved.push(Solved { split, same, different });
    }
    let mut removed = vec![false; n];
    for s in &solved {
        s.split.side.iter().for_each(|&v| removed[v] = true);
    }
    // Quotient graph over the class representatives of the surviving vertices.
    let mut index = vec![NONE; n];
    let mut reps = Vec::new();
    for v in 0..n {
        if !removed[v] && find(&mut parent, v) == v {
            index[v] = reps.len();
            reps.push(v);
        }
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); reps.len()];
    let edges = (0..n)
        .filter(|&v| !removed[v])
        .flat_map(|v| p.adj[v].iter().map(move |&w| (v, w)))
        .filter(|&(v, w)| v < w && !removed[w])
        .chain(extra.iter().copied())
        .collect::<Vec<_>>();
    for (v, w) in edges {
        let (x, y) = (index[find(&mut parent, v)], index[find(&mut parent, w)]);
        if x == y {
            return Ok(None);
        }
        adj[x].push(y);
        adj[y].push(x);
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    let Some(qcol) = decide_piece(&Piece::from_adj(adj), k, meter)? else {
        return Ok(None);
    };
    let mut col = vec![NONE; n];
    for v in 0..n {
        if !removed[v] {
            col[v] = qcol[index[find(&mut parent, v)]];
        }
    }
    for s in &solved {
        let sep = &s.split.sep;
        let equal = sep.len() == 1 || col[sep[0]] == col[sep[1]];
        let sub = if equal { &s.same } else { &s.different }.as_ref().expect("replacement keeps a feasible pattern");
        let m = s.split.side.len();
        let mut perm = vec![NONE; k];
        let mut taken = vec![false; k];
        for (i, &v) in sep.iter().enumerate() {
            perm[sub[m + i]] = col[v];
            taken[col[v]] = true;
        }
        let mut free = (0..k).filter(|&c| !taken[c]);
        for slot in perm.iter_mut().filter(|c| **c == NONE) {
            *slot = free.next().expect("k colors suffice");
        }
        for (i, &v) in s.split.side.iter().enumerate() {
            col[v] = perm[sub[i]];
        }
    }
    Ok(Some(col))
}

/// One greedy maximal clique through each vertex, grown by preferring neighbors that
/// share the most neighbors with the seed. Only cliques of size >= 3 are kept.
fn clique_family(p: &Piece) -> Vec<Vec<usize>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for v in 0..p.n() {
        let mut cand: Vec<(usize, usize)> = p.adj[v]
            .iter()
            .map(|&c| {
                let mut b = p.bits[c].clone();
                b.intersect_with(&p.bits[v]);
                (b.count_ones(..), c)
            })
            .collect();
        cand.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut clique = vec![v];
        for (_, c) in cand {
            if clique.iter().all(|&x| p.bits[c].contains(x)) {
                clique.push(c);
            }
        }
        if clique.len() >= 3 {
            clique.sort_unstable();
            if seen.insert(clique.clone()) {
                out.push(clique);
            }
        }
    }
    out
}

/// DSATUR greedy coloring (max saturation, then max degree, then lowest id).
fn dsatur_greedy(p: &Piece) -> Vec<usize> {
    let n = p.n();
    let mut col = vec![NONE; n];
    let mut sat: Vec<FixedBitSet> = vec![FixedBitSet::new(); n];
    let mut sat_count = vec![0usize; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| col[v] == NONE)
            .max_by(|&a, &b| {
                (sat_count[a], p.adj[a].len())
                    .cmp(&(sat_count[b], p.adj[b].len()))
                    .then(b.cmp(&a))
            })
            .expect("uncolored vertex remains");
        let c = (0..).find(|&c| !sat[v].contains(c)).expect("free color");
        col[v] = c;
        for &w in &p.adj[v] {
            if col[w] == NONE {
                sat[w].grow(c + 1);
                if !sat[w].put(c) {
                    sat_count[w] += 1;
                }
            }
        }
    }
    col
}

struct Search<'a> {
    p: &'a Piece,
    k: usize,
    dom: Vec<u128>,
    color: Vec<usize>,
    cliques: Vec<Vec<usize>>,
    vertex_cliques: Vec<Vec<usize>>,
    trail: Vec<(usize, u128)>,
    assigned: Vec<usize>,
    clique_stamp: Vec<u64>,
    mark: Vec<u64>,
    generation: u64,
    meter: &'a mut Meter,
}

impl<'a> Search<'a> {
    fn new(p: &'a Piece, k: usize, cliques: Vec<Vec<usize>>, meter: &'a mut Meter) -> Self {
        let n = p.n();
        let full = if k == 128 { u128::MAX } else { (1u128 << k) - 1 };
        let mut vertex_cliques = vec![Vec::new(); n];
        for (i, c) in cliques.iter().enumerate() {
            for &v in c {
                vertex_cliques[v].push(i);
            }
        }
        Search {
            p,
            k,
            dom: vec![full; n],
            color: vec![NONE; n],
            clique_stamp: vec![0; cliques.len()],
            cliques,
            vertex_cliques,
            trail: Vec::new(),
            assigned: Vec::new(),
            mark: vec![0; n],
            generation: 0,
            meter,
        }
    }

    fn run(mut self) -> Result<Option<Vec<usize>>, SolveError> {
        let all: Vec<usize> = (0..self.p.n()).collect();
        if self.solve(&all, 0)? {
            Ok(Some(self.color))
        } else {
            Ok(None)
        }
    }

    fn next_generation(&mut self) -> u64 {
        self.generation += 1;
        self.generation
    }

    fn assign(&mut self, v: usize, c: usize) -> bool {
        let bit = 1u128 << c;
        self.color[v] = c;
        self.assigned.push(v);
        let mut changed = vec![v];
        for &w in &self.p.adj[v] {
            if self.color[w] == NONE && self.dom[w] & bit != 0 {
                self.trail.push((w, self.dom[w]));
                self.dom[w] &= !bit;
                if self.dom[w] == 0 {
                    return false;
                }
                changed.push(w);
            }
        }
        let gen = self.next_generation();
        for x in changed {
            for &ci in &self.vertex_cliques[x] {
                if self.clique_stamp[ci] == gen {
                    continue;
                }
                self.clique_stamp[ci] = gen;
                let mut union = 0u128;
                let mut count = 0u32;
                for &y in &self.cliques[ci] {
                    if self.color[y] == NONE {
                        union |= self.dom[y];
                        count += 1;
                    }
                }
                if count > union.count_ones() {
                    return false;
                }
            }
        }
        true
    }

    fn undo(&mut self, trail_mark: usize, assigned_mark: usize) {
        while self.trail.len() > trail_mark {
            let (w, d) = self.trail.pop().expect("trail entry");
            self.dom[w] = d;
        }
        while self.assigned.len() > assigned_mark {
            let v = self.assigned.pop().expect("assigned entry");
            self.color[v] = NONE;
        }
    }

    /// Components of `vs` (all uncolored) in the uncolored subgraph, smallest first.
    fn split(&mut self, vs: &[usize]) -> Vec<Vec<usize>> {
        let gen = self.next_generation();
        for &v in vs {
            self.mark[v] = gen;
        }
        let done = self.next_generation();
        let mut out = Vec::new();
        for &s in vs {
            if self.mark[s] != gen {
                continue;
            }
            self.mark[s] = done;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in &self.p.adj[v] {
                    if self.mark[w] == gen {
                        self.mark[w] = done;
                        comp.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out.sort_by_key(Vec::len);
        out
    }

    /// Colors every vertex of `active` (a connected set of uncolored vertices).
    /// Colors `>= used` are unused by every colored neighbor, hence interchangeable.
    fn solve(&mut self, active: &[usize], used: usize) -> Result<bool, SolveError> {
        if active.is_empty() {
            return Ok(true);
        }
        let v = *active
            .iter()
            .min_by(|&&a, &&b| {
                (self.dom[a].count_ones(), std::cmp::Reverse(self.p.adj[a].len()), a).cmp(&(
                    self.dom[b].count_ones(),
                    std::cmp::Reverse(self.p.adj[b].len()),
                    b,
                ))
            })
            .expect("nonempty");
        let rest: Vec<usize> = active.iter().copied().filter(|&w| w != v).collect();
        let limit = (used + 1).min(self.k);
        let mut options = self.dom[v];
        while options != 0 {
            let c = options.trailing_zeros() as usize;
            options &= options - 1;
            if c >= limit {
                break;
            }
            self.meter.tick()?;
            let (tm, am) = (self.trail.len(), self.assigned.len());
            if self.assign(v, c) {
                let next_used = used.max(c + 1);
                let parts = self.split(&rest);
                let mut ok = true;
                for part in &parts {
                    if !self.solve(part, next_used)? {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    return Ok(true);
                }
            }
            self.undo(tm, am);
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::Budget;

    fn chi(g: &Graph) -> usize {
        chromatic(g, &mut Meter::new(Budget::default())).unwrap().0
    }

    #[test]
    fn joins_and_unions() {
        let c5 = Graph::cycle(5);
        assert_eq!(chi(&c5.join(&c5)), 6);
        assert_eq!(chi(&c5.disjoint_union(&Graph::complete(4))), 4);
        let k33 = Graph::complete(3).disjoint_union(&Graph::complete(3));
        assert_eq!(chi(&k33.join(&k33).join(&k33)), 9);
    }

    #[test]
    fn mycielski_graphs() {
        // Grötzsch graph: triangle-free with χ = 4.
        let g = Graph::from_edges(
            11,
            [
                (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                (5, 1), (5, 4), (6, 0), (6, 2), (7, 1), (7, 3), (8, 2), (8, 4), (9, 3), (9, 0),
                (10, 5), (10, 6), (10, 7), (10, 8), (10, 9),
            ],
        )
        .unwrap();
        assert_eq!(chi(&g), 4);
        assert!(decide(&g, 3, &mut Meter::new(Budget::default())).unwrap().is_none());
    }

    #[test]
    fn co_components_of_join() {
        let p = Piece::from_graph(&Graph::empty(2).join(&Graph::path(3)));
        assert_eq!(p.co_components(), vec![vec![0, 1], vec![2, 4], vec![3]]);
    }

    /// Small random blocks glued along one or two shared vertices, so that the piece
    /// has many small separators.
    fn glued(seed: u64) -> Graph {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut b = crate::graph::GraphBuilder::new(4);
        for (u, v) in [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)] {
            b.add_edge(u, v);
        }
        while b.n() < 30 {
            let n = b.n();
            let attach: Vec<usize> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(0..n)).collect();
            let fresh: Vec<usize> = (0..rng.gen_range(2..=5)).map(|_| b.add_vertex()).collect();
            let mut block: Vec<usize> = attach;
            block.dedup();
            block.extend(&fresh);
            for i in 0..block.len() {
                for j in i + 1..block.len() {
                    let (u, v) = (block[i], block[j]);
                    if (fresh.contains(&u) || fresh.contains(&v)) && rng.gen_bool(0.7) && !b.has_edge(u, v) {
                        b.add_edge(u, v);
                    }
                }
            }
        }
        b.build()
    }

    #[test]
    fn separation_matches_plain_search() {
        for seed in 0..60 {
            let g = glued(seed);
            let p = Piece::from_graph(&g);
            assert!(!separations(&p).is_empty());
            for k in 2..=5 {
                let mut m = Meter::new(Budget::default());
                let plain = Search::new(&p, k, clique_family(&p), &mut m).run().unwrap();
                let split = decide_by_separation(&p, k, separations(&p), &mut m).unwrap();
                assert_eq!(plain.is_some(), split.is_some(), "seed {seed}, k = {k}");
                if let Some(col) = split {
                    assert!(g.is_proper_coloring(&col) && num_colors(&col) <= k);
                }
            }
        }
    }
}
