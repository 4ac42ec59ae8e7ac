//! Local graph surgeries with provenance-tagged outputs: χ-edge stabilization, β-edge
//! stabilization, the two-way β gadget and the join-based AND combinators.
//!
//! Gadget vertices carry labels naming their role. `<eid>` is the index of the edge in
//! the input graph's sorted edge list.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{ElementRef, Graph, GraphBuilder, Origin, ProvenanceTag};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("the edge set to stabilize is empty")]
    EmptyEdgeSet,
    #[error("{{{0},{1}}} is not an edge of the input graph")]
    NotAnEdge(usize, usize),
    #[error("the input graph has no vertices")]
    EmptyGraph,
    #[error("at least one input graph is required")]
    NoInputs,
}

/// Output graph of a construction with one provenance tag per vertex and edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionResult {
    pub graph: Graph,
    pub element_provenance: BTreeMap<ElementRef, ProvenanceTag>,
    /// Claimed ξ(output) − ξ(input), when the construction makes such a claim.
    pub value_shift: Option<i64>,
    pub notes: String,
}

#[derive(Serialize, Deserialize)]
struct ProvenanceEntry {
    #[serde(flatten)]
    element: ElementRef,
    #[serde(flatten)]
    tag: ProvenanceTag,
}

/// The JSON sidecar written next to the DIMACS output.
#[derive(Serialize, Deserialize)]
pub struct ProvenanceSidecar {
    pub notes: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub value_shift: Option<i64>,
    provenance: Vec<ProvenanceEntry>,
}

impl ConstructionResult {
    pub fn sidecar(&self) -> ProvenanceSidecar {
        ProvenanceSidecar {
            notes: self.notes.clone(),
            value_shift: self.value_shift,
            provenance: self
                .element_provenance
                .iter()
                .map(|(&element, &tag)| ProvenanceEntry { element, tag })
                .collect(),
        }
    }

    pub fn provenance_of(&self, element: ElementRef) -> Option<ProvenanceTag> {
        self.element_provenance.get(&element).copied()
    }

    /// Output elements tagged with `origin`.
    pub fn elements_with(&self, origin: Origin) -> Vec<ElementRef> {
        self.element_provenance
            .iter()
            .filter(|(_, t)| t.origin == origin)
            .map(|(&e, _)| e)
            .collect()
    }
}

/// Graph builder that records a provenance tag for every vertex and edge it adds.
pub(crate) struct Tracked {
    b: GraphBuilder,
    prov: BTreeMap<ElementRef, ProvenanceTag>,
}

impl Tracked {
    pub(crate) fn new() -> Self {
        Tracked {
            b: GraphBuilder::new(0),
            prov: BTreeMap::new(),
        }
    }

    pub(crate) fn n(&self) -> usize {
        self.b.n()
    }

    pub(crate) fn vertex(&mut self, tag: ProvenanceTag, label: Option<String>) -> usize {
        let v = match label {
            Some(l) => self.b.add_labeled(l),
            None => self.b.add_vertex(),
        };
        self.prov.insert(ElementRef::Vertex(v), tag);
        v
    }

    pub(crate) fn edge(&mut self, u: usize, v: usize, tag: ProvenanceTag) {
        self.b.add_edge(u, v);
        self.prov.insert(ElementRef::edge(u, v), tag);
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) {
        self.b.remove_edge(u, v);
        self.prov.remove(&ElementRef::edge(u, v));
    }

    /// Copies `g` with every vertex and edge tagged `origin`, sourced from the element
    /// it copies. Returns the id offset.
    pub(crate) fn import(&mut self, g: &Graph, origin: Origin, input: Option<usize>) -> usize {
        let tag = |e: ElementRef| {
            let t = ProvenanceTag::derived(origin, e);
            match input {
                Some(i) => t.of_input(i),
                None => t,
            }
        };
        let off = self.n();
        for v in 0..g.n() {
            self.vertex(tag(ElementRef::Vertex(v)), g.label(v).map(str::to_string));
        }
        for (u, v) in g.edges() {
            self.edge(u + off, v + off, tag(ElementRef::edge(u, v)));
        }
        off
    }

    /// Copies a construction output keeping its tags, with `input` filled in on sourced
    /// tags that lack one. Returns the id offset.
    pub(crate) fn import_result(&mut self, r: &ConstructionResult, input: usize) -> usize {
        let off = self.n();
        let tag = |e: ElementRef| {
            let t = r.element_provenance[&e];
            if t.input.is_none() && t.source.is_some() {
                t.of_input(input)
            } else {
                t
            }
        };
        let g = &r.graph;
        for v in 0..g.n() {
            self.vertex(tag(ElementRef::Vertex(v)), g.label(v).map(str::to_string));
        }
        for (u, v) in g.edges() {
            self.edge(u + off, v + off, tag(ElementRef::edge(u, v)));
        }
        off
    }

    pub(crate) fn finish(self, value_shift: Option<i64>, notes: String) -> ConstructionResult {
        ConstructionResult {
            graph: self.b.build(),
            element_provenance: self.prov,
            value_shift,
            notes,
        }
    }
}

fn edge_ids(g: &Graph) -> BTreeMap<(usize, usize), usize> {
    g.edges().into_iter().enumerate().map(|(i, e)| (e, i)).collect()
}

/// Sorted, deduplicated copy of `s`, checked against E(g).
fn normalize_edges(g: &Graph, s: &[(usize, usize)]) -> Result<Vec<(usize, usize)>, GadgetError> {
    let mut out: Vec<(usize, usize)> = s.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    out.sort_unstable();
    out.dedup();
    for &(u, v) in &out {
        if u == v || v >= g.n() || !g.has_edge(u, v) {
            return Err(GadgetError::NotAnEdge(u, v));
        }
    }
    Ok(out)
}

fn format_edges(s: &[(usize, usize)]) -> String {
    let parts: Vec<String> = s.iter().map(|(u, v)| format!("{u}-{v}")).collect();
    parts.join(",")
}

/// Adds the χ-stabilizing structure for the edges `s` of `g`, whose vertices are
/// 0..g.n() in `t`, and deletes those edges.
fn chi_stabilize_into(t: &mut Tracked, g: &Graph, s: &[(usize, usize)]) {
    let gadget = ProvenanceTag::new(Origin::Gadget);
    let cycle: Vec<usize> = ["w1'", "w2'", "w1''", "w2''"]
        .into_iter()
        .map(|l| t.vertex(gadget, Some(l.to_string())))
        .collect();
    for i in 0..4 {
        t.edge(cycle[i], cycle[(i + 1) % 4], gadget);
    }
    for &w in &cycle {
        for v in 0..g.n() {
            t.edge(w, v, gadget);
        }
    }
    let ids = edge_ids(g);
    for &(v1, v2) in s {
        let eid = ids[&(v1, v2)];
        let source = ElementRef::edge(v1, v2);
        let off = t.n();
        for v in 0..g.n() {
            t.vertex(
                ProvenanceTag::derived(Origin::Gadget, ElementRef::Vertex(v)),
                Some(format!("v'{eid}.{v}")),
            );
        }
        for (a, b) in g.edges() {
            t.edge(a + off, b + off, ProvenanceTag::derived(Origin::Gadget, ElementRef::edge(a, b)));
        }
        let u1 = t.vertex(ProvenanceTag::derived(Origin::Gadget, source), Some(format!("u'{eid}")));
        for v in 0..g.n() {
            t.edge(v1, v + off, gadget);
            t.edge(u1, v + off, gadget);
        }
        t.edge(u1, v2, gadget);
        // Simultaneous replication: the replicas form an edgeless copy G''_e and are
        // not adjacent to u''_e.
        let rep_off = t.n();
        for v in 0..g.n() {
            t.vertex(
                ProvenanceTag::derived(Origin::Replica, ElementRef::Vertex(v)),
                Some(format!("v''{eid}.{v}")),
            );
        }
        let u2 = t.vertex(ProvenanceTag::derived(Origin::Replica, source), Some(format!("u''{eid}")));
        for v in 0..g.n() {
            let replica = ProvenanceTag::new(Origin::Replica);
            for &w in g.neighbors(v) {
                t.edge(v + rep_off, w + off, replica);
            }
            t.edge(v + rep_off, v1, replica);
            t.edge(v + rep_off, u1, replica);
            t.edge(u2, v + off, replica);
        }
        t.edge(u2, v2, ProvenanceTag::new(Origin::Replica));
        t.remove_edge(v1, v2);
    }
}

/// Ĝ with χ(Ĝ) = χ(G) + 2, every edge outside E(G) ∖ S stable, and every edge of
/// E(G) ∖ S stable in Ĝ exactly when it is stable in G. The edges of S are deleted.
pub fn chi_stabilize_edges(g: &Graph, s: &[(usize, usize)]) -> Result<ConstructionResult, GadgetError> {
    if s.is_empty() {
        return Err(GadgetError::EmptyEdgeSet);
    }
    let s = normalize_edges(g, s)?;
    let mut t = Tracked::new();
    t.import(g, Origin::Original, None);
    chi_stabilize_into(&mut t, g, &s);
    Ok(t.finish(Some(2), format!("chi_stabilize_edges S={{{}}}", format_edges(&s))))
}

pub(crate) fn beta_stabilize_into(t: &mut Tracked, name: &str, (v1, v2): (usize, usize), tag: ProvenanceTag) {
    let u: Vec<usize> = (1..=4).map(|i| t.vertex(tag, Some(format!("u{i}.{name}")))).collect();
    for i in 0..4 {
        t.edge(u[i], u[(i + 1) % 4], tag);
    }
    for (a, b) in [(v1, u[0]), (v1, u[2]), (v2, u[1]), (v2, u[3])] {
        t.edge(a, b, tag);
    }
    t.remove_edge(v1, v2);
}

/// Replaces e = {v1, v2} by a 4-cycle u1u2u3u4 with v1 ~ u1, u3 and v2 ~ u2, u4.
/// β rises by exactly 2, all gadget edges are β-stable and every other edge keeps its
/// β-stability status.
pub fn beta_stabilize_edge(g: &Graph, e: (usize, usize)) -> Result<ConstructionResult, GadgetError> {
    beta_stabilize_edges(g, &[e])
}

/// [`beta_stabilize_edge`] applied to each edge of `s` in ascending order.
pub fn beta_stabilize_edges(g: &Graph, s: &[(usize, usize)]) -> Result<ConstructionResult, GadgetError> {
    let s = normalize_edges(g, s)?;
    let ids = edge_ids(g);
    let mut t = Tracked::new();
    t.import(g, Origin::Original, None);
    for &e in &s {
        let tag = ProvenanceTag::derived(Origin::Gadget, ElementRef::edge(e.0, e.1));
        beta_stabilize_into(&mut t, &ids[&e].to_string(), e, tag);
    }
    Ok(t.finish(
        Some(2 * s.len() as i64),
        format!("beta_stabilize_edges S={{{}}}", format_edges(&s)),
    ))
}

pub(crate) fn two_way_into(t: &mut Tracked, name: &str, (v, v2): (usize, usize), tag: ProvenanceTag) {
    let mut q = Vec::with_capacity(8);
    for prime in ["", "'"] {
        for i in 1..=4 {
            q.push(t.vertex(tag, Some(format!("u{i}{prime}.{name}"))));
        }
    }
    // K8 minus the perfect matching {u_i, u_i'}.
    for a in 0..8 {
        for b in a + 1..8 {
            if b != a + 4 {
                t.edge(q[a], q[b], tag);
            }
        }
    }
    for (x, y) in [(v, q[0]), (v, q[1]), (v2, q[2]), (v2, q[3])] {
        t.edge(x, y, tag);
    }
}

/// Attaches to e = {v, v'} the 8-vertex gadget Q (K8 minus a perfect matching) with
/// v ~ u1, u2 and v' ~ u3, u4. The edge e itself stays (deleting it would let
/// {v, u1, u1', v'} grow once v-u1 goes, so gadget edges would turn critical). β rises
/// by exactly 6; other old edges keep their β-stability, e and the gadget edges are
/// β-stable, old nonedges keep their frozenness and every new nonedge is β-unfrozen.
pub fn two_way_gadget_edge(g: &Graph, e: (usize, usize)) -> Result<ConstructionResult, GadgetError> {
    if g.is_null() {
        return Err(GadgetError::EmptyGraph);
    }
    let s = normalize_edges(g, &[e])?;
    let mut t = Tracked::new();
    t.import(g, Origin::Original, None);
    let tag = ProvenanceTag::derived(Origin::Gadget, ElementRef::edge(s[0].0, s[0].1));
    two_way_into(&mut t, &edge_ids(g)[&s[0]].to_string(), s[0], tag);
    Ok(t.finish(Some(6), format!("two_way_gadget_edge e={}", format_edges(&s))))
}

/// [`two_way_gadget_edge`] applied to every edge of `g`, in ascending order.
pub fn two_way_gadget_all(g: &Graph) -> Result<ConstructionResult, GadgetError> {
    if g.is_null() {
        return Err(GadgetError::EmptyGraph);
    }
    let mut t = Tracked::new();
    t.import(g, Origin::Original, None);
    for (eid, e) in g.edges().into_iter().enumerate() {
        let tag = ProvenanceTag::derived(Origin::Gadget, ElementRef::edge(e.0, e.1));
        two_way_into(&mut t, &eid.to_string(), e, tag);
    }
    Ok(t.finish(Some(6 * g.m() as i64), "two_way_gadget_all".to_string()))
}

/// Property carried through [`join_and`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AndFlavor {
    VertexStability,
    Unfrozenness,
}

/// Imports all inputs, tagged with their index, and joins them. Returns the join edges.
fn join_into(t: &mut Tracked, graphs: &[Graph]) -> Vec<(usize, usize)> {
    let mut offsets = Vec::with_capacity(graphs.len());
    for (i, g) in graphs.iter().enumerate() {
        offsets.push(t.import(g, Origin::Original, Some(i)));
    }
    let mut joins = Vec::new();
    for i in 0..graphs.len() {
        for j in i + 1..graphs.len() {
            for a in 0..graphs[i].n() {
                for b in 0..graphs[j].n() {
                    let (u, v) = (offsets[i] + a, offsets[j] + b);
                    t.edge(u, v, ProvenanceTag::new(Origin::Join));
                    joins.push((u, v));
                }
            }
        }
    }
    joins
}

/// G1 + ⋯ + Gk. χ adds up, and the output is vertex-stable (resp. unfrozen) exactly
/// when every input is.
pub fn join_and(graphs: &[Graph], flavor: AndFlavor) -> Result<ConstructionResult, GadgetError> {
    if graphs.is_empty() {
        return Err(GadgetError::NoInputs);
    }
    let mut t = Tracked::new();
    join_into(&mut t, graphs);
    let flavor = match flavor {
        AndFlavor::VertexStability => "vertex-stability",
        AndFlavor::Unfrozenness => "unfrozenness",
    };
    Ok(t.finish(None, format!("join_and k={} flavor={flavor}", graphs.len())))
}

/// The join with all join edges χ-stabilized in a single application: stable exactly
/// when every input is. `value_shift` is relative to the plain join.
pub fn stabilized_join_and(graphs: &[Graph]) -> Result<ConstructionResult, GadgetError> {
    if graphs.is_empty() {
        return Err(GadgetError::NoInputs);
    }
    let mut t = Tracked::new();
    let joins = join_into(&mut t, graphs);
    let k = graphs.len();
    if joins.is_empty() {
        // A single input, or all but one input empty: nothing to stabilize.
        return Ok(t.finish(Some(0), format!("stabilized_join_and k={k} (no join edges)")));
    }
    let joined = graphs[1..].iter().fold(graphs[0].clone(), |acc, g| acc.join(g)).without_labels();
    chi_stabilize_into(&mut t, &joined, &joins);
    Ok(t.finish(Some(2), format!("stabilized_join_and k={k}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete_provenance(r: &ConstructionResult) -> bool {
        let g = &r.graph;
        r.element_provenance.len() == g.n() + g.m()
            && (0..g.n()).all(|v| r.element_provenance.contains_key(&ElementRef::Vertex(v)))
            && g.edges().iter().all(|&(u, v)| r.element_provenance.contains_key(&ElementRef::edge(u, v)))
    }

    #[test]
    fn chi_sizes_and_labels() {
        let r = chi_stabilize_edges(&Graph::path(3), &[(1, 0)]).unwrap();
        assert_eq!(r.graph.n(), 15);
        assert!(!r.graph.has_edge(0, 1));
        assert!(r.graph.has_edge(1, 2));
        assert!(complete_provenance(&r));
        let g = &r.graph;
        let (u1, u2) = (g.vertex_by_label("u'0").unwrap(), g.vertex_by_label("u''0").unwrap());
        assert!(!g.has_edge(u1, u2));
        let r0 = g.vertex_by_label("v''0.0").unwrap();
        let r1 = g.vertex_by_label("v''0.1").unwrap();
        assert!(!g.has_edge(r0, r1));
        assert!(g.has_edge(r0, 0) && g.has_edge(r0, u1));
        assert!(g.has_edge(u2, 1) && g.has_edge(u1, 1) && !g.has_edge(u2, 0));
        assert_eq!(r.elements_with(Origin::Original).len(), 3 + 1);
        assert!(matches!(chi_stabilize_edges(&Graph::path(3), &[]), Err(GadgetError::EmptyEdgeSet)));
        assert!(matches!(chi_stabilize_edges(&Graph::path(3), &[(0, 2)]), Err(GadgetError::NotAnEdge(0, 2))));
    }

    #[test]
    fn beta_and_two_way_sizes() {
        let r = beta_stabilize_edge(&Graph::complete(2), (0, 1)).unwrap();
        assert_eq!((r.graph.n(), r.graph.m()), (6, 8));
        assert!(complete_provenance(&r));
        let r = beta_stabilize_edges(&Graph::complete(3), &Graph::complete(3).edges()).unwrap();
        assert_eq!((r.graph.n(), r.value_shift), (15, Some(6)));
        let r = two_way_gadget_edge(&Graph::complete(2), (0, 1)).unwrap();
        assert_eq!((r.graph.n(), r.graph.m()), (10, 1 + 24 + 4));
        assert!(complete_provenance(&r));
        assert!(matches!(two_way_gadget_all(&Graph::null()), Err(GadgetError::EmptyGraph)));
    }

    #[test]
    fn joins() {
        let c5 = Graph::cycle(5);
        let r = join_and(&[c5.clone(), c5.clone()], AndFlavor::Unfrozenness).unwrap();
        assert_eq!((r.graph.n(), r.graph.m()), (10, 35));
        assert_eq!(r.elements_with(Origin::Join).len(), 25);
        assert!(complete_provenance(&r));
        let r = stabilized_join_and(&[Graph::complete(1), Graph::complete(1)]).unwrap();
        // 2 + 4 + one join edge with (2 + 1) · 2 gadget vertices.
        assert_eq!(r.graph.n(), 12);
        assert_eq!(r.graph.m(), 27);
        assert!(complete_provenance(&r));
        let r = stabilized_join_and(&[Graph::complete(1)]).unwrap();
        assert_eq!(r.graph.n(), 1);
    }
}
