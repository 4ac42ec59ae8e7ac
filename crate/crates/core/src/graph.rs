//! Simple undirected graphs on dense vertex ids `0..n`, plus the graph algebra
//! (union, join, complement, element edits, replication) used by every construction.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0},{1}}}")]
    DuplicateEdge(usize, usize),
    #[error("{0} is not an element of the required kind in this graph")]
    WrongElement(ElementRef),
}

/// Kind of a graph element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ElementKind {
    Vertex,
    Edge,
    Nonedge,
}

/// A vertex, an edge or a nonedge. Pairs are stored with the smaller id first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "RawElement", try_from = "RawElement")]
pub enum ElementRef {
    Vertex(usize),
    Edge(usize, usize),
    Nonedge(usize, usize),
}

impl ElementRef {
    pub fn edge(u: usize, v: usize) -> Self {
        ElementRef::Edge(u.min(v), u.max(v))
    }

    pub fn nonedge(u: usize, v: usize) -> Self {
        ElementRef::Nonedge(u.min(v), u.max(v))
    }

    pub fn kind(&self) -> ElementKind {
        match self {
            ElementRef::Vertex(_) => ElementKind::Vertex,
            ElementRef::Edge(..) => ElementKind::Edge,
            ElementRef::Nonedge(..) => ElementKind::Nonedge,
        }
    }

    pub fn ids(&self) -> Vec<usize> {
        match *self {
            ElementRef::Vertex(v) => vec![v],
            ElementRef::Edge(u, v) | ElementRef::Nonedge(u, v) => vec![u, v],
        }
    }
}

impl fmt::Display for ElementRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementRef::Vertex(v) => write!(f, "vertex {v}"),
            ElementRef::Edge(u, v) => write!(f, "edge {{{u},{v}}}"),
            ElementRef::Nonedge(u, v) => write!(f, "nonedge {{{u},{v}}}"),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RawElement {
    kind: ElementKind,
    ids: Vec<usize>,
}

impl From<ElementRef> for RawElement {
    fn from(e: ElementRef) -> Self {
        RawElement {
            kind: e.kind(),
            ids: e.ids(),
        }
    }
}

impl TryFrom<RawElement> for ElementRef {
    type Error = String;

    fn try_from(raw: RawElement) -> Result<Self, Self::Error> {
        match (raw.kind, raw.ids.as_slice()) {
            (ElementKind::Vertex, [v]) => Ok(ElementRef::Vertex(*v)),
            (ElementKind::Edge, [u, v]) if u != v => Ok(ElementRef::edge(*u, *v)),
            (ElementKind::Nonedge, [u, v]) if u != v => Ok(ElementRef::nonedge(*u, *v)),
            (kind, ids) => Err(format!("malformed {kind:?} element with ids {ids:?}")),
        }
    }
}

/// Where an output element of a construction came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    Original,
    Gadget,
    Join,
    Replica,
    Padding,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProvenanceTag {
    pub origin: Origin,
    /// The input element this one copies or stands in for.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub source: Option<ElementRef>,
    /// Index of the input graph, for constructions with several inputs.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub input: Option<usize>,
}

impl ProvenanceTag {
    pub fn original(source: ElementRef) -> Self {
        ProvenanceTag::derived(Origin::Original, source)
    }

    pub fn new(origin: Origin) -> Self {
        ProvenanceTag {
            origin,
            source: None,
            input: None,
        }
    }

    pub fn derived(origin: Origin, source: ElementRef) -> Self {
        ProvenanceTag {
            origin,
            source: Some(source),
            input: None,
        }
    }

    pub fn of_input(mut self, input: usize) -> Self {
        self.input = Some(input);
        self
    }
}

/// Simple undirected graph. Adjacency lists are kept sorted; values are immutable,
/// every edit returns a new graph.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "RawGraph", try_from = "RawGraph")]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
    labels: BTreeMap<usize, String>,
}

/// JSON form: vertex count, 0-based edge list and optional labels.
#[derive(Serialize, Deserialize)]
struct RawGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    labels: BTreeMap<usize, String>,
}

impl From<Graph> for RawGraph {
    fn from(g: Graph) -> Self {
        RawGraph {
            n: g.n(),
            edges: g.edges(),
            labels: g.labels,
        }
    }
}

impl TryFrom<RawGraph> for Graph {
    type Error = GraphError;

    fn try_from(raw: RawGraph) -> Result<Self, Self::Error> {
        let mut g = Graph::from_edges(raw.n, raw.edges)?;
        if let Some(&v) = raw.labels.keys().find(|&&v| v >= raw.n) {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: raw.n });
        }
        g.labels = raw.labels;
        Ok(g)
    }
}

impl Graph {
    /// The edgeless graph I_n.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
            labels: BTreeMap::new(),
        }
    }

    /// The null graph K_0.
    pub fn null() -> Self {
        Graph::empty(0)
    }

    /// The complete graph K_n.
    pub fn complete(n: usize) -> Self {
        let adj = (0..n)
            .map(|v| (0..n).filter(|&w| w != v).collect())
            .collect();
        Graph {
            adj,
            m: n * n.saturating_sub(1) / 2,
            labels: BTreeMap::new(),
        }
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
    }

    /// The cycle C_n; requires n >= 3.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are valid")
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut m = 0;
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
            m += 1;
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(v.min(w[0]), v.max(w[0])));
            }
        }
        Ok(Graph {
            adj,
            m,
            labels: BTreeMap::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_null(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn is_edgeless(&self) -> bool {
        self.m == 0
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.m == n * n.saturating_sub(1) / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    /// Nonedges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn nonedges(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for u in 0..n {
            let mut it = self.adj[u].iter().peekable();
            for v in u + 1..n {
                while it.peek().is_some_and(|&&w| w < v) {
                    it.next();
                }
                if it.peek() != Some(&&v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn nonedge_count(&self) -> usize {
        let n = self.n();
        n * n.saturating_sub(1) / 2 - self.m
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    pub fn labels(&self) -> &BTreeMap<usize, String> {
        &self.labels
    }

    pub fn vertex_by_label(&self, name: &str) -> Option<usize> {
        self.labels
            .iter()
            .find(|(_, l)| l.as_str() == name)
            .map(|(&v, _)| v)
    }

    pub fn with_label(mut self, v: usize, name: impl Into<String>) -> Self {
        assert!(v < self.n(), "label for unknown vertex {v}");
        self.labels.insert(v, name.into());
        self
    }

    pub fn without_labels(mut self) -> Self {
        self.labels.clear();
        self
    }

    /// True when both graphs have the same vertex count and edge set (labels ignored).
    pub fn same_structure(&self, other: &Graph) -> bool {
        self.adj == other.adj
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::WrongElement(ElementRef::edge(u, v)));
        }
        let mut g = self.clone();
        g.adj[u].retain(|&w| w != v);
        g.adj[v].retain(|&w| w != u);
        g.m -= 1;
        Ok(g)
    }

    pub fn add_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        if u == v || u >= self.n() || v >= self.n() || self.has_edge(u, v) {
            return Err(GraphError::WrongElement(ElementRef::nonedge(u, v)));
        }
        let mut g = self.clone();
        let pos = g.adj[u].binary_search(&v).unwrap_err();
        g.adj[u].insert(pos, v);
        let pos = g.adj[v].binary_search(&u).unwrap_err();
        g.adj[v].insert(pos, u);
        g.m += 1;
        Ok(g)
    }

    /// Removes `v`; vertices above `v` shift down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        let keep: Vec<usize> = (0..self.n()).filter(|&w| w != v).collect();
        Ok(self.induced(&keep))
    }

    /// Adds a new vertex `n` adjacent to `neighborhood`.
    pub fn add_vertex(&self, neighborhood: &[usize]) -> Result<Graph, GraphError> {
        for &w in neighborhood {
            self.check_vertex(w)?;
        }
        let n = self.n();
        let mut g = self.clone();
        let mut nb = neighborhood.to_vec();
        nb.sort_unstable();
        nb.dedup();
        for &w in &nb {
            g.adj[w].push(n);
        }
        g.m += nb.len();
        g.adj.push(nb);
        Ok(g)
    }

    /// Deletes the given element (vertex or edge).
    pub fn delete(&self, element: ElementRef) -> Result<Graph, GraphError> {
        match element {
            ElementRef::Vertex(v) => self.delete_vertex(v),
            ElementRef::Edge(u, v) => self.delete_edge(u, v),
            ElementRef::Nonedge(..) => Err(GraphError::WrongElement(element)),
        }
    }

    /// Subgraph induced by `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut map = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            map[v] = i;
        }
        let mut m2 = 0;
        let adj: Vec<Vec<usize>> = vertices
            .iter()
            .map(|&v| {
                let mut l: Vec<usize> = self.adj[v]
                    .iter()
                    .filter(|&&w| map[w] != usize::MAX)
                    .map(|&w| map[w])
                    .collect();
                l.sort_unstable();
                m2 += l.len();
                l
            })
            .collect();
        let labels = self
            .labels
            .iter()
            .filter(|(&v, _)| map[v] != usize::MAX)
            .map(|(&v, l)| (map[v], l.clone()))
            .collect();
        Graph {
            adj,
            m: m2 / 2,
            labels,
        }
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let adj: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                let mut it = self.adj[v].iter().peekable();
                let mut out = Vec::with_capacity(n - 1 - self.adj[v].len());
                for w in 0..n {
                    if it.peek() == Some(&&w) {
                        it.next();
                    } else if w != v {
                        out.push(w);
                    }
                }
                out
            })
            .collect();
        Graph {
            adj,
            m: n * n.saturating_sub(1) / 2 - self.m,
            labels: self.labels.clone(),
        }
    }

    /// G ∪ H; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|l| l.iter().map(|&w| w + off).collect::<Vec<_>>()),
        );
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().map(|(&v, l)| (v + off, l.clone())));
        Graph {
            adj,
            m: self.m + other.m,
            labels,
        }
    }

    /// G + H: the disjoint union plus every edge between the two parts.
    pub fn join(&self, other: &Graph) -> Graph {
        let (a, b) = (self.n(), other.n());
        let mut g = self.disjoint_union(other);
        for v in 0..a {
            g.adj[v].extend(a..a + b);
        }
        for v in a..a + b {
            let mut l: Vec<usize> = (0..a).collect();
            l.extend_from_slice(&g.adj[v]);
            g.adj[v] = l;
        }
        g.m += a * b;
        g
    }

    /// Adds a replica of `v`: a new vertex (id `n`) nonadjacent to `v` with the same neighbors.
    pub fn replicate_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        let nb = self.adj[v].clone();
        self.add_vertex(&nb)
    }

    /// Replicates all of `vertices` at once: the replica of `vertices[i]` gets id `n + i`
    /// and is adjacent exactly to the original neighbors of `vertices[i]`.
    pub fn replicate_simultaneously(&self, vertices: &[usize]) -> Result<Graph, GraphError> {
        for &v in vertices {
            self.check_vertex(v)?;
        }
        let n = self.n();
        let mut b = GraphBuilder::from_graph(self);
        for (i, &v) in vertices.iter().enumerate() {
            let r = b.add_vertex();
            debug_assert_eq!(r, n + i);
            for &w in &self.adj[v] {
                b.add_edge(r, w);
            }
        }
        Ok(b.build())
    }

    /// True when the vertex coloring `colors` has no monochromatic edge.
    pub fn is_proper_coloring(&self, colors: &[usize]) -> bool {
        colors.len() == self.n() && self.edges().iter().all(|&(u, v)| colors[u] != colors[v])
    }

    pub fn is_independent_set(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &u)| {
            u < self.n() && set[i + 1..].iter().all(|&v| u != v && !self.has_edge(u, v))
        })
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &u)| {
            u < self.n() && set[i + 1..].iter().all(|&v| self.has_edge(u, v))
        })
    }

    pub fn is_vertex_cover(&self, set: &[usize]) -> bool {
        let mut inside = vec![false; self.n()];
        for &v in set {
            if v >= self.n() {
                return false;
            }
            inside[v] = true;
        }
        self.edges().iter().all(|&(u, v)| inside[u] || inside[v])
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
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
}

/// Incremental builder used by constructions. Misuse (self-loops, duplicates,
/// unknown vertices) is a programming error and panics.
#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    adj: Vec<Vec<usize>>,
    labels: BTreeMap<usize, String>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            adj: vec![Vec::new(); n],
            labels: BTreeMap::new(),
        }
    }

    pub fn from_graph(g: &Graph) -> Self {
        GraphBuilder {
            adj: g.adj.clone(),
            labels: g.labels.clone(),
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub fn add_labeled(&mut self, name: impl Into<String>) -> usize {
        let v = self.add_vertex();
        self.labels.insert(v, name.into());
        v
    }

    pub fn set_label(&mut self, v: usize, name: impl Into<String>) {
        self.labels.insert(v, name.into());
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop at {u}");
        assert!(u < self.n() && v < self.n(), "edge {{{u},{v}}} out of range");
        self.adj[u].push(v);
        self.adj[v].push(u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        let before = self.adj[u].len();
        self.adj[u].retain(|&w| w != v);
        self.adj[v].retain(|&w| w != u);
        assert!(self.adj[u].len() < before, "edge {{{u},{v}}} not present");
    }

    /// Appends `h` as a disjoint block and returns the id offset of its vertices.
    pub fn add_graph(&mut self, h: &Graph) -> usize {
        let off = self.n();
        for list in &h.adj {
            self.adj.push(list.iter().map(|&w| w + off).collect());
        }
        for (&v, l) in &h.labels {
            self.labels.insert(v + off, l.clone());
        }
        off
    }

    pub fn build(self) -> Graph {
        let mut adj = self.adj;
        let mut m = 0;
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            let len = list.len();
            list.dedup();
            assert_eq!(len, list.len(), "duplicate edge at vertex {v}");
            m += list.len();
        }
        Graph {
            adj,
            m: m / 2,
            labels: self.labels,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let g = Graph::path(3).with_label(1, "mid");
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"n":3,"edges":[[0,1],[1,2]],"labels":{"1":"mid"}}"#);
        assert_eq!(serde_json::from_str::<Graph>(&json).unwrap(), g);
        assert!(serde_json::from_str::<Graph>(r#"{"n":2,"edges":[[0,0]]}"#).is_err());
    }

    #[test]
    fn families() {
        assert_eq!(Graph::complete(4).m(), 6);
        assert_eq!(Graph::empty(0), Graph::null());
        assert_eq!(Graph::complete(1).m(), 0);
        assert_eq!(Graph::cycle(5).m(), 5);
        assert_eq!(Graph::path(3).edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn algebra() {
        let k3 = Graph::complete(3);
        let u = k3.disjoint_union(&k3);
        assert_eq!((u.n(), u.m()), (6, 6));
        assert!(Graph::complete(2).join(&Graph::complete(3)).same_structure(&Graph::complete(5)));
        let c4 = Graph::empty(2).join(&Graph::empty(2));
        assert_eq!(c4.m(), 4);
        assert!(c4.edges().iter().all(|&(u, v)| (u < 2) != (v < 2)));
        let p3k1 = Graph::path(3).join(&Graph::complete(1));
        assert_eq!((p3k1.n(), p3k1.m()), (4, 5));
        assert!(Graph::complete(4).complement().same_structure(&Graph::empty(4)));
        assert_eq!(Graph::null().complement(), Graph::null());
        assert!(Graph::empty(2).disjoint_union(&Graph::empty(3)).same_structure(&Graph::empty(5)));
    }

    #[test]
    fn edits() {
        let k3 = Graph::complete(3);
        assert_eq!(k3.delete_edge(0, 2).unwrap().edges(), vec![(0, 1), (1, 2)]);
        assert!(k3.delete_edge(0, 0).is_err());
        let p3 = Graph::path(3);
        assert!(p3.delete_vertex(1).unwrap().same_structure(&Graph::empty(2)));
        assert_eq!(p3.add_edge(0, 1), Err(GraphError::WrongElement(ElementRef::nonedge(0, 1))));
        let star = p3.add_vertex(&[0, 1, 2]).unwrap();
        assert!(star.same_structure(&p3.join(&Graph::complete(1))));
        assert_eq!(p3.nonedges(), vec![(0, 2)]);
    }

    #[test]
    fn replication() {
        let c4 = Graph::path(3).replicate_vertex(1).unwrap();
        assert_eq!(c4.edges(), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
        assert!(Graph::complete(1).replicate_vertex(0).unwrap().same_structure(&Graph::empty(2)));
        let k3r = Graph::complete(3).replicate_vertex(0).unwrap();
        assert_eq!((k3r.n(), k3r.m()), (4, 5));
        let both = Graph::complete(2).replicate_simultaneously(&[0, 1]).unwrap();
        assert_eq!(both.edges(), vec![(0, 1), (0, 3), (1, 2)]);
    }

    #[test]
    fn labels_follow_vertices() {
        let g = Graph::path(3).with_label(2, "end");
        assert_eq!(g.delete_vertex(0).unwrap().label(1), Some("end"));
        assert_eq!(Graph::complete(1).disjoint_union(&g).label(3), Some("end"));
        assert_eq!(g.vertex_by_label("end"), Some(2));
    }

    #[test]
    fn element_json() {
        let e = ElementRef::edge(3, 1);
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"{"kind":"edge","ids":[1,3]}"#);
        assert_eq!(serde_json::from_str::<ElementRef>(&s).unwrap(), e);
        assert!(serde_json::from_str::<ElementRef>(r#"{"kind":"edge","ids":[1,1]}"#).is_err());
    }
}
