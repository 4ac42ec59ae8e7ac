//! Instance families: exhaustive labeled graphs, seeded random graphs and small
//! isomorphism classes.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::HarnessError;
use crate::graph::Graph;

pub const EXHAUSTIVE_LIMIT: usize = 7;
const CANONICAL_LIMIT: usize = 8;

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// All 2^(n choose 2) labeled graphs on `n` vertices; graph `i` contains the j-th
/// lexicographic pair iff bit j of `i` is set.
pub fn enumerate_graphs(n: usize) -> Result<impl Iterator<Item = Graph>, HarnessError> {
    if n > EXHAUSTIVE_LIMIT {
        return Err(HarnessError::TooLarge {
            n,
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    let p = pairs(n);
    Ok((0u64..1 << p.len()).map(move |mask| {
        let edges = p.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, &e)| e);
        Graph::from_edges(n, edges).expect("distinct pairs")
    }))
}

/// Labeled graphs for every order 0..=max_n, smaller orders first.
pub fn enumerate_graphs_up_to(max_n: usize) -> Result<Vec<Graph>, HarnessError> {
    let mut out = Vec::new();
    for n in 0..=max_n {
        out.extend(enumerate_graphs(n)?);
    }
    Ok(out)
}

/// G(n, p), deterministic in `seed`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_graph_with(n, p, &mut rng)
}

pub fn random_graph_with(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let edges: Vec<(usize, usize)> = pairs(n).into_iter().filter(|_| rng.gen_bool(p)).collect();
    Graph::from_edges(n, edges).expect("distinct pairs")
}

/// Lexicographically least adjacency bitstring over all relabelings.
pub fn canonical_form(g: &Graph) -> Result<Vec<bool>, HarnessError> {
    let n = g.n();
    if n > CANONICAL_LIMIT {
        return Err(HarnessError::TooLarge {
            n,
            limit: CANONICAL_LIMIT,
        });
    }
    let p = pairs(n);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<bool>> = None;
    loop {
        let code: Vec<bool> = p.iter().map(|&(u, v)| g.has_edge(perm[u], perm[v])).collect();
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(best.unwrap_or_default())
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

pub fn isomorphic(a: &Graph, b: &Graph) -> Result<bool, HarnessError> {
    Ok(a.n() == b.n() && a.m() == b.m() && canonical_form(a)? == canonical_form(b)?)
}

/// One representative per isomorphism class with at most `max_n` vertices, in
/// generation order (the first labeled graph met in each class).
pub fn nonisomorphic_graphs(max_n: usize) -> Result<Vec<Graph>, HarnessError> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for n in 0..=max_n {
        for g in enumerate_graphs(n)? {
            if seen.insert((n, canonical_form(&g)?)) {
                out.push(g);
            }
        }
    }
    Ok(out)
}
