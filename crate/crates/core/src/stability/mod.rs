//! Element and graph level stability, criticality and unfrozenness.
//!
//! [`analyze`] answers every element query through per-number identities and
//! certificate reuse; [`analyze_definitional`] recomputes ξ on every edited graph and
//! exists as an independent cross-check. Vertex-addition predicates are closed forms.

mod engines;
mod plan;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{ElementKind, ElementRef, Graph, GraphError};
use crate::solvers::{self, Budget, GraphNumber, SolveError};

pub use plan::{query_plan, PlanVerdicts, Query, QueryMode, QueryPlan, QuerySubject};

/// Default vertex bound for [`enumerate_vertex_addition`].
pub const ENUMERATION_THRESHOLD: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("solver failed on query {query}")]
    Solver {
        query: String,
        #[source]
        source: SolveError,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("unknown predicate '{0}'")]
    UnknownPredicate(String),
    #[error("graph has {n} vertices, above the enumeration threshold {threshold}")]
    ThresholdExceeded { n: usize, threshold: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Stable,
    Critical,
    Unfrozen,
    Frozen,
}

impl Status {
    /// Stable for deletions, unfrozen for additions.
    pub fn is_unchanged(self) -> bool {
        matches!(self, Status::Stable | Status::Unfrozen)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementStatus {
    #[serde(flatten)]
    pub element: ElementRef,
    pub status: Status,
    /// ξ(G′) − ξ(G).
    pub delta: i64,
}

/// Graph-level verdicts. `None` means the element class was not analyzed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub stable: Option<bool>,
    pub vertex_stable: Option<bool>,
    pub unfrozen: Option<bool>,
    pub vertex_unfrozen: Option<bool>,
    pub two_way_stable: Option<bool>,
    pub vertex_two_way_stable: Option<bool>,
}

impl Verdicts {
    fn restrict(self, holds: bool) -> Verdicts {
        let f = |x: Option<bool>| x.map(|b| b && holds);
        Verdicts {
            stable: f(self.stable),
            vertex_stable: f(self.vertex_stable),
            unfrozen: f(self.unfrozen),
            vertex_unfrozen: f(self.vertex_unfrozen),
            two_way_stable: f(self.two_way_stable),
            vertex_two_way_stable: f(self.vertex_two_way_stable),
        }
    }
}

fn and(a: Option<bool>, b: Option<bool>) -> Option<bool> {
    match (a, b) {
        (Some(false), _) | (_, Some(false)) => Some(false),
        (Some(true), Some(true)) => Some(true),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KVerdicts {
    pub k: usize,
    #[serde(flatten)]
    pub verdicts: Verdicts,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ReportJson", try_from = "ReportJson")]
pub struct StabilityReport {
    pub xi: GraphNumber,
    pub value: usize,
    pub edge_statuses: Vec<ElementStatus>,
    pub vertex_statuses: Vec<ElementStatus>,
    pub nonedge_statuses: Vec<ElementStatus>,
    pub verdicts: Verdicts,
    pub k_verdicts: Option<KVerdicts>,
}

impl StabilityReport {
    pub fn status_of(&self, element: ElementRef) -> Option<&ElementStatus> {
        let list = match element.kind() {
            ElementKind::Vertex => &self.vertex_statuses,
            ElementKind::Edge => &self.edge_statuses,
            ElementKind::Nonedge => &self.nonedge_statuses,
        };
        list.iter().find(|s| s.element == element)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct ReportJson {
    xi: GraphNumber,
    value: usize,
    elements: Vec<ElementStatus>,
    verdicts: Verdicts,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    k_verdicts: Option<KVerdicts>,
}

impl From<StabilityReport> for ReportJson {
    fn from(r: StabilityReport) -> Self {
        let mut elements = r.edge_statuses;
        elements.extend(r.vertex_statuses);
        elements.extend(r.nonedge_statuses);
        ReportJson {
            xi: r.xi,
            value: r.value,
            elements,
            verdicts: r.verdicts,
            k_verdicts: r.k_verdicts,
        }
    }
}

impl TryFrom<ReportJson> for StabilityReport {
    type Error = String;

    fn try_from(j: ReportJson) -> Result<Self, Self::Error> {
        let mut r = StabilityReport {
            xi: j.xi,
            value: j.value,
            edge_statuses: Vec::new(),
            vertex_statuses: Vec::new(),
            nonedge_statuses: Vec::new(),
            verdicts: j.verdicts,
            k_verdicts: j.k_verdicts,
        };
        for s in j.elements {
            match s.element.kind() {
                ElementKind::Edge => r.edge_statuses.push(s),
                ElementKind::Vertex => r.vertex_statuses.push(s),
                ElementKind::Nonedge => r.nonedge_statuses.push(s),
            }
        }
        Ok(r)
    }
}

/// Which element classes to analyze.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classes {
    pub edges: bool,
    pub vertices: bool,
    pub nonedges: bool,
}

impl Classes {
    pub const ALL: Classes = Classes {
        edges: true,
        vertices: true,
        nonedges: true,
    };
    pub const EDGES: Classes = Classes {
        edges: true,
        vertices: false,
        nonedges: false,
    };
    pub const VERTICES: Classes = Classes {
        edges: false,
        vertices: true,
        nonedges: false,
    };
    pub const NONEDGES: Classes = Classes {
        edges: false,
        vertices: false,
        nonedges: true,
    };
}

#[derive(Debug, Clone, Copy)]
pub struct AnalysisOptions {
    pub classes: Classes,
    pub k: Option<usize>,
    /// Stop a class at its first critical or frozen element. The class verdict is
    /// still exact; only the element list is truncated.
    pub early_exit: bool,
    pub budget: Budget,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            classes: Classes::ALL,
            k: None,
            early_exit: false,
            budget: Budget::default(),
        }
    }
}

pub fn analyze(g: &Graph, xi: GraphNumber, k: Option<usize>) -> Result<StabilityReport, AnalysisError> {
    analyze_with(
        g,
        xi,
        &AnalysisOptions {
            k,
            ..AnalysisOptions::default()
        },
    )
}

pub fn analyze_with(g: &Graph, xi: GraphNumber, opts: &AnalysisOptions) -> Result<StabilityReport, AnalysisError> {
    let mut engine = engines::engine(g, xi, opts.budget)?;
    let value = engine.value();
    let c = opts.classes;
    let early = opts.early_exit;
    // Vertices first: χ and ω edge queries reuse vertex answers.
    let (vertex_statuses, vertex_stable) = run_class(
        c.vertices,
        (0..g.n()).map(ElementRef::Vertex),
        engine.as_mut(),
        early,
    )?;
    let (edge_statuses, stable) = run_class(
        c.edges,
        g.edges().into_iter().map(|(u, v)| ElementRef::edge(u, v)),
        engine.as_mut(),
        early,
    )?;
    let (nonedge_statuses, unfrozen) = run_class(
        c.nonedges,
        g.nonedges().into_iter().map(|(u, v)| ElementRef::nonedge(u, v)),
        engine.as_mut(),
        early,
    )?;
    Ok(assemble(
        g,
        xi,
        value,
        opts.k,
        [edge_statuses, vertex_statuses, nonedge_statuses],
        [stable, vertex_stable, unfrozen],
    ))
}

fn run_class(
    enabled: bool,
    elements: impl Iterator<Item = ElementRef>,
    engine: &mut dyn engines::Engine,
    early_exit: bool,
) -> Result<(Vec<ElementStatus>, Option<bool>), AnalysisError> {
    if !enabled {
        return Ok((Vec::new(), None));
    }
    let mut out = Vec::new();
    let mut all = true;
    for e in elements {
        let s = match e {
            ElementRef::Vertex(v) => engine.vertex(v)?,
            ElementRef::Edge(u, v) => engine.edge(u, v)?,
            ElementRef::Nonedge(u, v) => engine.nonedge(u, v)?,
        };
        out.push(s);
        if !s.status.is_unchanged() {
            all = false;
            if early_exit {
                break;
            }
        }
    }
    Ok((out, Some(all)))
}

fn assemble(
    g: &Graph,
    xi: GraphNumber,
    value: usize,
    k: Option<usize>,
    [edge_statuses, vertex_statuses, nonedge_statuses]: [Vec<ElementStatus>; 3],
    [stable, vertex_stable, unfrozen]: [Option<bool>; 3],
) -> StabilityReport {
    let vertex_unfrozen = Some(vertex_unfrozen_closed_form(g, xi));
    let verdicts = Verdicts {
        stable,
        vertex_stable,
        unfrozen,
        vertex_unfrozen,
        two_way_stable: and(stable, unfrozen),
        vertex_two_way_stable: and(vertex_stable, vertex_unfrozen),
    };
    StabilityReport {
        xi,
        value,
        edge_statuses,
        vertex_statuses,
        nonedge_statuses,
        verdicts,
        k_verdicts: k.map(|k| KVerdicts {
            k,
            verdicts: verdicts.restrict(value == k),
        }),
    }
}

/// Same report as [`analyze`], computed by solving ξ on every edited graph.
pub fn analyze_definitional(g: &Graph, xi: GraphNumber, k: Option<usize>, budget: Budget) -> Result<StabilityReport, AnalysisError> {
    let value_of = |h: &Graph, query: String| -> Result<i64, AnalysisError> {
        solvers::graph_number_with(h, xi, budget)
            .map(|r| r.value as i64)
            .map_err(|source| AnalysisError::Solver { query, source })
    };
    let base = value_of(g, format!("{xi}(G)"))?;
    let mut lists: [Vec<ElementStatus>; 3] = Default::default();
    let edges = g.edges().into_iter().map(|(u, v)| ElementRef::edge(u, v));
    let vertices = (0..g.n()).map(ElementRef::Vertex);
    let nonedges = g.nonedges().into_iter().map(|(u, v)| ElementRef::nonedge(u, v));
    for (slot, elements) in lists.iter_mut().zip([
        edges.collect::<Vec<_>>(),
        vertices.collect(),
        nonedges.collect(),
    ]) {
        for e in elements {
            let (h, addition) = match e {
                ElementRef::Nonedge(u, v) => (g.add_edge(u, v)?, true),
                other => (g.delete(other)?, false),
            };
            let delta = value_of(&h, format!("{xi}(G ± {e})"))? - base;
            let status = match (addition, delta == 0) {
                (false, true) => Status::Stable,
                (false, false) => Status::Critical,
                (true, true) => Status::Unfrozen,
                (true, false) => Status::Frozen,
            };
            slot.push(ElementStatus { element: e, status, delta });
        }
    }
    let all = |l: &Vec<ElementStatus>| Some(l.iter().all(|s| s.status.is_unchanged()));
    let verdicts = [all(&lists[0]), all(&lists[1]), all(&lists[2])];
    Ok(assemble(g, xi, base as usize, k, lists, verdicts))
}

fn single(g: &Graph, xi: GraphNumber, e: ElementRef) -> Result<ElementStatus, AnalysisError> {
    let mut engine = engines::engine(g, xi, Budget::default())?;
    match e {
        ElementRef::Vertex(v) => engine.vertex(v),
        ElementRef::Edge(u, v) => engine.edge(u, v),
        ElementRef::Nonedge(u, v) => engine.nonedge(u, v),
    }
}

pub fn edge_status(g: &Graph, (u, v): (usize, usize), xi: GraphNumber) -> Result<ElementStatus, AnalysisError> {
    let e = ElementRef::edge(u, v);
    if u >= g.n() || v >= g.n() || !g.has_edge(u, v) {
        return Err(GraphError::WrongElement(e).into());
    }
    single(g, xi, e)
}

pub fn vertex_status(g: &Graph, v: usize, xi: GraphNumber) -> Result<ElementStatus, AnalysisError> {
    if v >= g.n() {
        return Err(GraphError::VertexOutOfRange { vertex: v, n: g.n() }.into());
    }
    single(g, xi, ElementRef::Vertex(v))
}

pub fn nonedge_status(g: &Graph, (u, v): (usize, usize), xi: GraphNumber) -> Result<ElementStatus, AnalysisError> {
    let e = ElementRef::nonedge(u, v);
    if u >= g.n() || v >= g.n() || u == v || g.has_edge(u, v) {
        return Err(GraphError::WrongElement(e).into());
    }
    single(g, xi, e)
}

fn verdict(g: &Graph, xi: GraphNumber, classes: Classes) -> Result<Verdicts, AnalysisError> {
    let opts = AnalysisOptions {
        classes,
        early_exit: true,
        ..AnalysisOptions::default()
    };
    Ok(analyze_with(g, xi, &opts)?.verdicts)
}

pub fn is_stable(g: &Graph, xi: GraphNumber) -> Result<bool, AnalysisError> {
    Ok(verdict(g, xi, Classes::EDGES)?.stable == Some(true))
}

pub fn is_vertex_stable(g: &Graph, xi: GraphNumber) -> Result<bool, AnalysisError> {
    Ok(verdict(g, xi, Classes::VERTICES)?.vertex_stable == Some(true))
}

pub fn is_unfrozen(g: &Graph, xi: GraphNumber) -> Result<bool, AnalysisError> {
    Ok(verdict(g, xi, Classes::NONEDGES)?.unfrozen == Some(true))
}

pub fn is_two_way_stable(g: &Graph, xi: GraphNumber) -> Result<bool, AnalysisError> {
    let classes = Classes {
        edges: true,
        vertices: false,
        nonedges: true,
    };
    Ok(verdict(g, xi, classes)?.two_way_stable == Some(true))
}

/// Vertex-unfrozenness: only K0 for β, never for α, χ, ω.
pub fn vertex_unfrozen_closed_form(g: &Graph, xi: GraphNumber) -> bool {
    match xi {
        GraphNumber::Beta => g.is_null(),
        _ => false,
    }
}

/// Closed-form verdicts for predicates named like `beta-vertex-stable`.
pub fn closed_form_verdict(g: &Graph, predicate: &str) -> Result<bool, AnalysisError> {
    let unknown = || AnalysisError::UnknownPredicate(predicate.to_string());
    let (xi, rest) = predicate.split_once('-').ok_or_else(unknown)?;
    let xi: GraphNumber = xi.parse().map_err(|_| unknown())?;
    match (xi, rest) {
        (GraphNumber::Beta, "vertex-stable") => Ok(g.is_edgeless()),
        (_, "vertex-unfrozen") => Ok(vertex_unfrozen_closed_form(g, xi)),
        (GraphNumber::Beta, "vertex-two-way-stable") => Ok(g.is_null()),
        // The K1 vertex is χ-critical, and K0 is not χ-vertex-unfrozen either.
        (_, "vertex-two-way-stable") => Ok(false),
        _ => Err(unknown()),
    }
}

/// Every way of adding one vertex: (sorted neighborhood, ξ(G+v) − ξ(G)), neighborhoods
/// in increasing bitmask order.
pub fn enumerate_vertex_addition(g: &Graph, xi: GraphNumber, threshold: usize) -> Result<Vec<(Vec<usize>, i64)>, AnalysisError> {
    let n = g.n();
    if n > threshold {
        return Err(AnalysisError::ThresholdExceeded { n, threshold });
    }
    let solve = |h: &Graph, query: String| {
        solvers::graph_number(h, xi)
            .map(|r| r.value as i64)
            .map_err(|source| AnalysisError::Solver { query, source })
    };
    let base = solve(g, format!("{xi}(G)"))?;
    (0u64..1 << n)
        .map(|mask| {
            let nb: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let h = g.add_vertex(&nb)?;
            Ok((nb, solve(&h, format!("{xi}(G + v) with N(v) = {mask:#b}"))? - base))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_json_round_trip() {
        let r = analyze(&Graph::path(3), GraphNumber::Chi, Some(2)).unwrap();
        let json = r.to_json();
        assert!(json.contains("\"elements\""));
        assert!(json.contains("\"kind\": \"edge\""));
        let back: StabilityReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn closed_forms() {
        assert!(closed_form_verdict(&Graph::empty(7), "beta-vertex-stable").unwrap());
        assert!(closed_form_verdict(&Graph::null(), "beta-vertex-unfrozen").unwrap());
        assert!(!closed_form_verdict(&Graph::complete(1), "chi-vertex-unfrozen").unwrap());
        assert!(matches!(
            closed_form_verdict(&Graph::null(), "delta-stable"),
            Err(AnalysisError::UnknownPredicate(_))
        ));
    }
}
