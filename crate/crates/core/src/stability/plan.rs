//! One-round χ query plan: colorability queries on G, every G − e and every G − v,
//! for every k in 0..=|V(G)|, combined into the stability verdicts.

use serde::Serialize;

use super::AnalysisError;
use crate::graph::Graph;
use crate::solvers::{self, Budget};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QueryMode {
    Edges,
    Vertices,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuerySubject {
    Base,
    EdgeDeleted(usize, usize),
    VertexDeleted(usize),
}

/// "Is `graph` k-colorable?"
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub subject: QuerySubject,
    pub graph: Graph,
    pub k: usize,
}

#[derive(Debug, Clone)]
pub struct QueryPlan {
    pub mode: QueryMode,
    pub queries: Vec<Query>,
    pub combiner: String,
    /// Number of k values per subject graph.
    width: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct PlanVerdicts {
    pub stable: Option<bool>,
    pub vertex_stable: Option<bool>,
}

pub fn query_plan(g: &Graph, mode: QueryMode) -> QueryPlan {
    let n = g.n();
    let mut subjects = vec![(QuerySubject::Base, g.clone())];
    if matches!(mode, QueryMode::Edges | QueryMode::Both) {
        for (u, v) in g.edges() {
            subjects.push((QuerySubject::EdgeDeleted(u, v), g.delete_edge(u, v).expect("edge")));
        }
    }
    if matches!(mode, QueryMode::Vertices | QueryMode::Both) {
        for v in 0..n {
            subjects.push((QuerySubject::VertexDeleted(v), g.delete_vertex(v).expect("vertex")));
        }
    }
    let queries = subjects
        .into_iter()
        .flat_map(|(subject, graph)| (0..=n).map(move |k| Query { subject, graph: graph.clone(), k }))
        .collect();
    let combiner = match mode {
        QueryMode::Edges => "chi(X) = least k with (X,k) yes; stable = chi(G-e) = chi(G) for every edge e",
        QueryMode::Vertices => "chi(X) = least k with (X,k) yes; vertex-stable = chi(G-v) = chi(G) for every vertex v",
        QueryMode::Both => {
            "chi(X) = least k with (X,k) yes; stable = chi(G-e) = chi(G) for every edge e; \
             vertex-stable = chi(G-v) = chi(G) for every vertex v"
        }
    };
    QueryPlan {
        mode,
        queries,
        combiner: combiner.to_string(),
        width: n + 1,
    }
}

impl QueryPlan {
    /// Combines answers given in query order.
    pub fn combine(&self, answers: &[bool]) -> PlanVerdicts {
        assert_eq!(answers.len(), self.queries.len(), "one answer per query");
        let mut base = None;
        let mut stable = matches!(self.mode, QueryMode::Edges | QueryMode::Both).then_some(true);
        let mut vertex_stable = matches!(self.mode, QueryMode::Vertices | QueryMode::Both).then_some(true);
        for (chunk, answers) in self.queries.chunks(self.width).zip(answers.chunks(self.width)) {
            // Every subject has at most |V(G)| vertices, so some k in range answers yes.
            let chi = answers.iter().position(|&a| a).expect("k = |V(G)| always colorable");
            match chunk[0].subject {
                QuerySubject::Base => base = Some(chi),
                QuerySubject::EdgeDeleted(..) => {
                    if Some(chi) != base {
                        stable = Some(false);
                    }
                }
                QuerySubject::VertexDeleted(_) => {
                    if Some(chi) != base {
                        vertex_stable = Some(false);
                    }
                }
            }
        }
        PlanVerdicts { stable, vertex_stable }
    }

    pub fn answer_all(&self, budget: Budget) -> Result<Vec<bool>, AnalysisError> {
        self.queries
            .iter()
            .map(|q| {
                solvers::k_coloring(&q.graph, q.k, budget)
                    .map(|c| c.is_some())
                    .map_err(|source| AnalysisError::Solver {
                        query: format!("{:?} colorable with {}", q.subject, q.k),
                        source,
                    })
            })
            .collect()
    }

    pub fn execute(&self, budget: Budget) -> Result<PlanVerdicts, AnalysisError> {
        Ok(self.combine(&self.answer_all(budget)?))
    }
}
