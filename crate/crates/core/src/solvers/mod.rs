//! Exact solvers for α, β, χ and ω with witnesses and search budgets.

mod clique;
mod coloring;
mod independent;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

/// One of the four graph numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphNumber {
    Alpha,
    Beta,
    Chi,
    Omega,
}

impl GraphNumber {
    pub const ALL: [GraphNumber; 4] = [
        GraphNumber::Alpha,
        GraphNumber::Beta,
        GraphNumber::Chi,
        GraphNumber::Omega,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GraphNumber::Alpha => "alpha",
            GraphNumber::Beta => "beta",
            GraphNumber::Chi => "chi",
            GraphNumber::Omega => "omega",
        }
    }
}

impl fmt::Display for GraphNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphNumber {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "alpha" | "α" => Ok(GraphNumber::Alpha),
            "beta" | "β" => Ok(GraphNumber::Beta),
            "chi" | "χ" => Ok(GraphNumber::Chi),
            "omega" | "ω" => Ok(GraphNumber::Omega),
            other => Err(format!("unknown graph number '{other}' (expected alpha|beta|chi|omega)")),
        }
    }
}

/// Per-solve resource limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_time: Duration,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: 100_000_000,
            max_time: Duration::from_secs(120),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("search budget exceeded after {nodes} nodes ({elapsed_ms} ms)")]
    BudgetExceeded { nodes: u64, elapsed_ms: u128 },
    #[error("colorability with {k} colors is beyond the supported 128")]
    TooManyColors { k: usize },
}

pub(crate) struct Meter {
    budget: Budget,
    nodes: u64,
    start: Instant,
}

impl Meter {
    pub(crate) fn new(budget: Budget) -> Self {
        Meter {
            budget,
            nodes: 0,
            start: Instant::now(),
        }
    }

    pub(crate) fn tick(&mut self) -> Result<(), SolveError> {
        self.nodes += 1;
        let over_nodes = self.nodes > self.budget.max_nodes;
        if over_nodes || (self.nodes & 1023 == 0 && self.start.elapsed() > self.budget.max_time) {
            return Err(SolveError::BudgetExceeded {
                nodes: self.nodes,
                elapsed_ms: self.start.elapsed().as_millis(),
            });
        }
        Ok(())
    }

    fn stats(&self) -> SolveStats {
        SolveStats {
            nodes: self.nodes,
            elapsed: self.start.elapsed(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// Color index per vertex.
    Coloring(Vec<usize>),
    /// Sorted vertex set: cover, clique or independent set depending on the number.
    VertexSet(Vec<usize>),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    pub nodes: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub value: usize,
    pub witness: Option<Witness>,
    pub stats: SolveStats,
}

pub fn graph_number(g: &Graph, xi: GraphNumber) -> Result<SolveResult, SolveError> {
    graph_number_with(g, xi, Budget::default())
}

pub fn graph_number_with(g: &Graph, xi: GraphNumber, budget: Budget) -> Result<SolveResult, SolveError> {
    let mut meter = Meter::new(budget);
    let (value, witness) = match xi {
        GraphNumber::Chi => {
            let (k, col) = coloring::chromatic(g, &mut meter)?;
            (k, Witness::Coloring(col))
        }
        GraphNumber::Alpha => {
            let s = independent::maximum(g, &mut meter)?;
            (s.len(), Witness::VertexSet(s))
        }
        GraphNumber::Beta => {
            let s = independent::maximum(g, &mut meter)?;
            let cover = complement_set(g.n(), &s);
            (cover.len(), Witness::VertexSet(cover))
        }
        GraphNumber::Omega => {
            let s = clique::maximum(g, &mut meter)?;
            (s.len(), Witness::VertexSet(s))
        }
    };
    Ok(SolveResult {
        value,
        witness: Some(witness),
        stats: meter.stats(),
    })
}

pub fn chromatic_number(g: &Graph) -> Result<SolveResult, SolveError> {
    graph_number(g, GraphNumber::Chi)
}

pub fn vertex_cover_number(g: &Graph) -> Result<SolveResult, SolveError> {
    graph_number(g, GraphNumber::Beta)
}

pub fn independence_number(g: &Graph) -> Result<SolveResult, SolveError> {
    graph_number(g, GraphNumber::Alpha)
}

pub fn clique_number(g: &Graph) -> Result<SolveResult, SolveError> {
    graph_number(g, GraphNumber::Omega)
}

pub fn is_k_colorable(g: &Graph, k: usize) -> Result<bool, SolveError> {
    Ok(k_coloring(g, k, Budget::default())?.is_some())
}

/// A proper coloring with colors `0..k`, or `None` when χ(g) > k.
pub fn k_coloring(g: &Graph, k: usize, budget: Budget) -> Result<Option<Vec<usize>>, SolveError> {
    coloring::decide(g, k, &mut Meter::new(budget))
}

/// An independent set of size at least `t`, or `None` when α(g) < t.
pub fn independent_set_of_size(g: &Graph, t: usize, budget: Budget) -> Result<Option<Vec<usize>>, SolveError> {
    independent::at_least(g, t, &mut Meter::new(budget))
}

/// A clique of size at least `t`, or `None` when ω(g) < t.
pub fn clique_of_size(g: &Graph, t: usize, budget: Budget) -> Result<Option<Vec<usize>>, SolveError> {
    clique::at_least(g, t, &mut Meter::new(budget))
}

pub(crate) fn complement_set(n: usize, set: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; n];
    for &v in set {
        inside[v] = true;
    }
    (0..n).filter(|&v| !inside[v]).collect()
}

/// Checks that a witness certifies `value` for `xi` on `g`.
pub fn witness_is_valid(g: &Graph, xi: GraphNumber, res: &SolveResult) -> bool {
    match (xi, &res.witness) {
        (GraphNumber::Chi, Some(Witness::Coloring(c))) => {
            g.is_proper_coloring(c)
                && c.iter().max().map_or(0, |m| m + 1) == res.value
        }
        (GraphNumber::Alpha, Some(Witness::VertexSet(s))) => s.len() == res.value && g.is_independent_set(s),
        (GraphNumber::Beta, Some(Witness::VertexSet(s))) => s.len() == res.value && g.is_vertex_cover(s),
        (GraphNumber::Omega, Some(Witness::VertexSet(s))) => s.len() == res.value && g.is_clique(s),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn value(g: &Graph, xi: GraphNumber) -> usize {
        let r = graph_number(g, xi).unwrap();
        assert!(witness_is_valid(g, xi, &r), "{xi} witness invalid");
        r.value
    }

    #[test]
    fn small_values() {
        let c5 = Graph::cycle(5);
        assert_eq!(value(&c5, GraphNumber::Chi), 3);
        assert_eq!(value(&c5, GraphNumber::Beta), 3);
        assert_eq!(value(&c5, GraphNumber::Omega), 2);
        assert_eq!(value(&Graph::path(3), GraphNumber::Alpha), 2);
        assert_eq!(value(&Graph::path(3), GraphNumber::Beta), 1);
        assert_eq!(value(&Graph::complete(4), GraphNumber::Beta), 3);
        assert_eq!(value(&Graph::empty(6), GraphNumber::Beta), 0);
        for xi in GraphNumber::ALL {
            assert_eq!(value(&Graph::null(), xi), 0);
        }
        for k in 0..=6 {
            assert_eq!(value(&Graph::complete(k), GraphNumber::Chi), k);
        }
    }

    #[test]
    fn colorability() {
        let c5 = Graph::cycle(5);
        assert!(!is_k_colorable(&c5, 2).unwrap());
        assert!(is_k_colorable(&c5, 3).unwrap());
        assert!(is_k_colorable(&Graph::null(), 0).unwrap());
        assert!(!is_k_colorable(&Graph::complete(1), 0).unwrap());
    }

    #[test]
    fn budget_is_reported() {
        let tiny = Budget {
            max_nodes: 1,
            max_time: Duration::from_secs(10),
        };
        let g = crate::graph::Graph::cycle(7).join(&Graph::cycle(5)).join(&Graph::cycle(9));
        let r = graph_number_with(&g, GraphNumber::Alpha, tiny);
        assert!(matches!(r, Err(SolveError::BudgetExceeded { .. })));
    }

    #[test]
    fn parse_names() {
        assert_eq!("CHI".parse::<GraphNumber>().unwrap(), GraphNumber::Chi);
        assert!("delta".parse::<GraphNumber>().is_err());
    }
}
