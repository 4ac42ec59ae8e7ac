//! Formula→graph and graph→graph reductions: the Cai–Meyer graph and its replication,
//! self-join and self-union, the vertex-cover comparisons for β-stability and
//! β-unfrozenness, the two-way β pipeline, the 3-colorability graph and the
//! colorability comparison, and the unfrozenness reduction parameterized by an
//! unfreezer.
//!
//! Every single-graph reduction returns a [`ConstructionResult`], so outputs carry a
//! provenance tag per element. Graph inputs are numbered 0 (G) and 1 (H).

use thiserror::Error;

use crate::cnf::{CnfError, CnfFormula, Lit};
use crate::gadgets::{beta_stabilize_edges, beta_stabilize_into, two_way_gadget_all, ConstructionResult, Tracked};
use crate::graph::{ElementRef, Graph, Origin, ProvenanceTag};
use crate::solvers::{chromatic_number, SolveError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error(transparent)]
    Cnf(#[from] CnfError),
    #[error("the formula has no clauses")]
    NoClauses,
    #[error("at least one formula per side is required")]
    NoFormulas,
    #[error("formula lists differ in length: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

fn padding() -> ProvenanceTag {
    ProvenanceTag::new(Origin::Padding)
}

fn join_tag() -> ProvenanceTag {
    ProvenanceTag::new(Origin::Join)
}

/// Adds `k` vertices forming a clique, tagged as padding.
fn clique_into(t: &mut Tracked, k: usize) -> Vec<usize> {
    let vs: Vec<usize> = (0..k).map(|_| t.vertex(padding(), None)).collect();
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            t.edge(u, v, padding());
        }
    }
    vs
}

fn isolated_into(t: &mut Tracked, k: usize) -> Vec<usize> {
    (0..k).map(|_| t.vertex(padding(), None)).collect()
}

fn join_sets(t: &mut Tracked, left: &[usize], right: &[usize]) {
    for &u in left {
        for &v in right {
            t.edge(u, v, join_tag());
        }
    }
}

fn input_into(t: &mut Tracked, g: &Graph, origin: Origin, input: usize) -> Vec<usize> {
    let off = t.import(g, origin, Some(input));
    (off..off + g.n()).collect()
}

fn range(from: usize, to: usize) -> Vec<usize> {
    (from..to).collect()
}

/// The Cai–Meyer graph together with its clause vertices t_{i1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaiMeyerGraph {
    pub graph: Graph,
    /// t_{i1} for clause i, in clause order.
    pub t_vertices: Vec<usize>,
}

impl CaiMeyerGraph {
    pub fn v_c(&self) -> usize {
        0
    }

    pub fn v_s(&self) -> usize {
        1
    }
}

fn literal_vertex(l: Lit) -> usize {
    let v = l.unsigned_abs() as usize;
    2 + 2 * (v - 1) + usize::from(l < 0)
}

/// v_c ~ v_s; per variable x_i ~ x̄_i, both adjacent to v_c; per clause i and literal j
/// an edge a_ij ~ b_ij with both ends adjacent to v_s, a_ij adjacent to the literal and
/// b_ij to t_ij; the t_ij of a clause form a triangle. 3-colorable iff Φ is satisfiable,
/// otherwise χ = 4. Labels: `v_c`, `v_s`, `x<i>`, `~x<i>`, `a<i>.<j>`, `b<i>.<j>`,
/// `t<i>.<j>`, 1-based.
pub fn cai_meyer_graph(f: &CnfFormula) -> Result<CaiMeyerGraph, ReductionError> {
    f.require_exact3()?;
    if f.num_clauses() == 0 {
        return Err(ReductionError::NoClauses);
    }
    let mut t = Tracked::new();
    let tag = ProvenanceTag::new(Origin::Gadget);
    let vc = t.vertex(tag, Some("v_c".into()));
    let vs = t.vertex(tag, Some("v_s".into()));
    t.edge(vc, vs, tag);
    for i in 1..=f.num_vars() {
        let x = t.vertex(tag, Some(format!("x{i}")));
        let nx = t.vertex(tag, Some(format!("~x{i}")));
        t.edge(x, nx, tag);
        t.edge(x, vc, tag);
        t.edge(nx, vc, tag);
    }
    let mut t_vertices = Vec::with_capacity(f.num_clauses());
    for (i, c) in f.clauses().iter().enumerate() {
        let mut ts = Vec::with_capacity(3);
        for (j, &l) in c.iter().enumerate() {
            let a = t.vertex(tag, Some(format!("a{}.{}", i + 1, j + 1)));
            let b = t.vertex(tag, Some(format!("b{}.{}", i + 1, j + 1)));
            let tv = t.vertex(tag, Some(format!("t{}.{}", i + 1, j + 1)));
            t.edge(a, b, tag);
            t.edge(a, vs, tag);
            t.edge(b, vs, tag);
            t.edge(a, literal_vertex(l), tag);
            t.edge(b, tv, tag);
            ts.push(tv);
        }
        t.edge(ts[0], ts[1], tag);
        t.edge(ts[0], ts[2], tag);
        t.edge(ts[1], ts[2], tag);
        t_vertices.push(ts[0]);
    }
    Ok(CaiMeyerGraph {
        graph: t.finish(None, String::new()).graph,
        t_vertices,
    })
}

/// r(G_Φ): every vertex of the Cai–Meyer graph other than the t_{i1} is replicated, one
/// after another, so later replicas also see earlier ones. χ-vertex-stable iff Φ is
/// stable; 2|V(G_Φ)| − m vertices.
pub fn stable3cnf_to_vertex_stability(f: &CnfFormula) -> Result<ConstructionResult, ReductionError> {
    let cm = cai_meyer_graph(f)?;
    let g = &cm.graph;
    let mut t = Tracked::new();
    t.import(g, Origin::Gadget, None);
    let mut adj: Vec<Vec<usize>> = (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect();
    for v in 0..g.n() {
        if cm.t_vertices.contains(&v) {
            continue;
        }
        let label = g.label(v).map(|l| format!("{l}'"));
        let r = t.vertex(ProvenanceTag::derived(Origin::Replica, ElementRef::Vertex(v)), label);
        let nbrs = adj[v].clone();
        adj.push(nbrs.clone());
        for w in nbrs {
            t.edge(r, w, ProvenanceTag::derived(Origin::Replica, ElementRef::Vertex(v)));
            adj[w].push(r);
        }
    }
    let m = f.num_clauses();
    Ok(t.finish(Some(0), format!("replicated {} of {} vertices, m={m}", g.n() - m, g.n())))
}

/// G + G: stable iff G is vertex-stable.
pub fn vstab_to_stab(g: &Graph) -> ConstructionResult {
    let mut t = Tracked::new();
    let a = input_into(&mut t, g, Origin::Original, 0);
    let b = input_into(&mut t, g, Origin::Replica, 0);
    join_sets(&mut t, &a, &b);
    t.finish(None, "self-join".into())
}

/// G ∪ G: χ unchanged, stable and vertex-stable; two-way-stable iff G is unfrozen, for
/// every G other than K1.
pub fn union_double(g: &Graph) -> ConstructionResult {
    let mut t = Tracked::new();
    input_into(&mut t, g, Origin::Original, 0);
    input_into(&mut t, g, Origin::Replica, 0);
    t.finish(Some(0), "self-union".into())
}

/// Reduction from unfrozenness to two-way stability: G ∪ G, except that K1 (unfrozen,
/// while I_2 has a frozen nonedge) maps to the canonical yes-instance K0.
pub fn unfrozen_to_two_way(g: &Graph) -> ConstructionResult {
    if g.n() == 1 {
        return Tracked::new().finish(None, "canonical yes-instance for K1".into());
    }
    union_double(g)
}

/// The two sides of the β-stability comparison before the final join.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaComparisonSides {
    /// G ∪ K2 ∪ K_{2|E(H)|}; its K2 edge is β-critical.
    pub critical: ConstructionResult,
    /// H with every edge β-stabilized (H ∪ P3 when H has no edges); β-stable.
    pub stable: ConstructionResult,
}

/// Both sides have β shifted by the same amount: 2|E(H)|, or 1 when H is edgeless.
pub fn beta_comparison_sides(g: &Graph, h: &Graph) -> BetaComparisonSides {
    let m = h.m();
    let mut t = Tracked::new();
    input_into(&mut t, g, Origin::Original, 0);
    clique_into(&mut t, 2);
    clique_into(&mut t, 2 * m);
    let critical = t.finish(None, format!("G + K2 + K{}", 2 * m));
    let stable = if m > 0 {
        beta_stabilize_edges(h, &h.edges()).expect("all edges of H")
    } else {
        let mut t = Tracked::new();
        input_into(&mut t, h, Origin::Original, 1);
        let p = isolated_into(&mut t, 3);
        t.edge(p[0], p[1], padding());
        t.edge(p[1], p[2], padding());
        t.finish(Some(1), "H + P3".into())
    };
    BetaComparisonSides { critical, stable }
}

/// S = (critical side) + (stable side), both padded with isolated vertices to a common
/// order c, with every one of the c² join edges β-stabilized. S is β-stable iff
/// β(G) > β(H).
pub fn compare_vc_to_beta_stability(g: &Graph, h: &Graph) -> ConstructionResult {
    let sides = beta_comparison_sides(g, h);
    let c = sides.critical.graph.n().max(sides.stable.graph.n());
    let mut t = Tracked::new();
    let off = t.import_result(&sides.critical, 0);
    let mut left = range(off, t.n());
    left.extend(isolated_into(&mut t, c - sides.critical.graph.n()));
    let off = t.import_result(&sides.stable, 1);
    let mut right = range(off, t.n());
    right.extend(isolated_into(&mut t, c - sides.stable.graph.n()));
    let mut idx = 0;
    for &u in &left {
        for &v in &right {
            t.edge(u, v, join_tag());
            beta_stabilize_into(&mut t, &format!("j{idx}"), (u, v), join_tag());
            idx += 1;
        }
    }
    t.finish(
        None,
        format!("order per side c={c}, stabilized join edges {}, cover gadget vertices k={}", c * c, 2 * c * c),
    )
}

/// J = G′ + H′ with G′ = (G ∪ I_h) + (G ∪ I_h) and H′ = (H + K_{g+h}) ∪ I_g; J is
/// β-unfrozen iff β(G) ≤ β(H). When g ≤ 1 the answer is always yes and the canonical
/// yes-instance I_1 is returned instead. A null H is replaced by I_1, since
/// β(K0 + K_m) = m − 1 would break β(H′) = β(H) + g + h.
pub fn compare_vc_to_beta_unfrozenness(g: &Graph, h: &Graph) -> ConstructionResult {
    let (gn, hn) = (g.n(), h.n().max(1));
    let mut t = Tracked::new();
    if gn <= 1 {
        isolated_into(&mut t, 1);
        return t.finish(None, "canonical yes-instance: g <= 1".into());
    }
    let mut a = input_into(&mut t, g, Origin::Original, 0);
    a.extend(isolated_into(&mut t, hn));
    let mut b = input_into(&mut t, g, Origin::Replica, 0);
    b.extend(isolated_into(&mut t, hn));
    join_sets(&mut t, &a, &b);
    let mut left = a;
    left.extend(b);

    let hv = if h.is_null() {
        isolated_into(&mut t, 1)
    } else {
        input_into(&mut t, h, Origin::Original, 1)
    };
    let k = clique_into(&mut t, gn + hn);
    join_sets(&mut t, &hv, &k);
    let mut right = hv;
    right.extend(k);
    right.extend(isolated_into(&mut t, gn));
    join_sets(&mut t, &left, &right);
    t.finish(None, format!("g={gn}, h={hn}, each side has {} vertices", 2 * (gn + hn)))
}

/// Every edge gets the two-way β gadget: β-two-way-stable iff G is β-unfrozen. Edgeless
/// graphs come back unchanged.
pub fn beta_unfrozen_to_beta_twoway(g: &Graph) -> ConstructionResult {
    if g.m() == 0 {
        let mut t = Tracked::new();
        input_into(&mut t, g, Origin::Original, 0);
        return t.finish(Some(0), "edgeless input, unchanged".into());
    }
    two_way_gadget_all(g).expect("graph with an edge")
}

/// The textbook 3-colorability graph: a palette triangle T, F, B; per variable a pair
/// x ~ ¬x, both adjacent to B; per clause two chained OR triangles whose output is
/// adjacent to F and B. χ = 3 if Φ is satisfiable, otherwise 4. Labels: `T`, `F`, `B`,
/// `x<i>`, `~x<i>`, `g<i>.<k>` for clause i's gate vertices.
pub fn gjs_3col(f: &CnfFormula) -> Result<ConstructionResult, ReductionError> {
    f.require_exact3()?;
    let mut t = Tracked::new();
    let tag = ProvenanceTag::new(Origin::Gadget);
    let [tt, ff, bb] = ["T", "F", "B"].map(|l| t.vertex(tag, Some(l.into())));
    for (u, v) in [(tt, ff), (tt, bb), (ff, bb)] {
        t.edge(u, v, tag);
    }
    // Variable i sits at 3 + 2(i-1), its negation right after.
    for i in 1..=f.num_vars() {
        let x = t.vertex(tag, Some(format!("x{i}")));
        let nx = t.vertex(tag, Some(format!("~x{i}")));
        t.edge(x, nx, tag);
        t.edge(x, bb, tag);
        t.edge(nx, bb, tag);
    }
    let lit = |l: Lit| literal_vertex(l) + 1;
    for (i, c) in f.clauses().iter().enumerate() {
        let gv: Vec<usize> = (1..=6).map(|k| t.vertex(tag, Some(format!("g{}.{k}", i + 1)))).collect();
        // OR(l1, l2) -> g3, then OR(g3, l3) -> g6.
        for (u, v) in [(gv[0], gv[1]), (gv[0], gv[2]), (gv[1], gv[2]), (gv[3], gv[4]), (gv[3], gv[5]), (gv[4], gv[5])] {
            t.edge(u, v, tag);
        }
        t.edge(gv[0], lit(c[0]), tag);
        t.edge(gv[1], lit(c[1]), tag);
        t.edge(gv[3], gv[2], tag);
        t.edge(gv[4], lit(c[2]), tag);
        t.edge(gv[5], ff, tag);
        t.edge(gv[5], bb, tag);
    }
    Ok(t.finish(None, format!("n={}, m={}", f.num_vars(), f.num_clauses())))
}

fn join_all(graphs: &[Graph]) -> Graph {
    graphs[1..].iter().fold(graphs[0].clone(), |acc, g| acc.join(g))
}

/// (G, H) with χ(G) ≤ χ(H) iff |sat Φs| ≤ |sat Ψs|. Each h(·) has χ ∈ {3, 4}, so the
/// join of k of them has χ = 4k − #satisfiable; hence G is built from the Ψs and H from
/// the Φs.
pub fn compare_colorability_instance(phis: &[CnfFormula], psis: &[CnfFormula]) -> Result<(Graph, Graph), ReductionError> {
    if phis.len() != psis.len() {
        return Err(ReductionError::LengthMismatch(phis.len(), psis.len()));
    }
    if phis.is_empty() {
        return Err(ReductionError::NoFormulas);
    }
    let build = |fs: &[CnfFormula]| -> Result<Graph, ReductionError> {
        let parts = fs.iter().map(|f| Ok(gjs_3col(f)?.graph.without_labels())).collect::<Result<Vec<_>, ReductionError>>()?;
        Ok(join_all(&parts))
    };
    Ok((build(psis)?, build(phis)?))
}

type GraphMap = dyn Fn(&Graph) -> Result<Graph, ReductionError> + Send + Sync;
type ShiftMap = dyn Fn(&Graph) -> Result<i64, ReductionError> + Send + Sync;

/// A map f with f(G) χ-unfrozen and χ(f(G)) = χ(G) + shift(G). The contract is the
/// caller's responsibility; nothing checks it here.
pub struct Unfreezer {
    pub transform: Box<GraphMap>,
    pub shift: Box<ShiftMap>,
}

impl Unfreezer {
    pub fn new(
        transform: impl Fn(&Graph) -> Result<Graph, ReductionError> + Send + Sync + 'static,
        shift: impl Fn(&Graph) -> Result<i64, ReductionError> + Send + Sync + 'static,
    ) -> Self {
        Unfreezer {
            transform: Box::new(transform),
            shift: Box::new(shift),
        }
    }

    /// Test-only: f(G) = K_{χ(G)} with shift 0. Computes χ exactly, so it is only usable
    /// on small graphs.
    pub fn exact_clique() -> Self {
        Unfreezer::new(|g| Ok(Graph::complete(chromatic_number(g)?.value)), |_| Ok(0))
    }
}

/// U = G″ ∪ H″ with G″ = G + I_2 + K_{max(0, s−1)} and H″ = f(H) + K_{1 + max(1−s, 0)},
/// where s = shift(H). If the unfreezer meets its contract, U is χ-unfrozen iff
/// χ(G) ≤ χ(H).
pub fn conditional_unfrozenness_reduction(g: &Graph, h: &Graph, u: &Unfreezer) -> Result<ConstructionResult, ReductionError> {
    let fh = (u.transform)(h)?;
    let s = (u.shift)(h)?;
    let mut t = Tracked::new();
    let gv = input_into(&mut t, g, Origin::Original, 0);
    let i2 = isolated_into(&mut t, 2);
    let kg = clique_into(&mut t, (s - 1).max(0) as usize);
    join_sets(&mut t, &gv, &i2);
    join_sets(&mut t, &gv, &kg);
    join_sets(&mut t, &i2, &kg);

    let off = t.import(&fh, Origin::Gadget, Some(1));
    let fv = range(off, t.n());
    let kh = clique_into(&mut t, 1 + (1 - s).max(0) as usize);
    join_sets(&mut t, &fv, &kh);
    Ok(t.finish(None, format!("shift(H)={s}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::is_satisfiable;

    fn chi(g: &Graph) -> usize {
        chromatic_number(g).unwrap().value
    }

    fn complete_provenance(r: &ConstructionResult) -> bool {
        let g = &r.graph;
        r.element_provenance.len() == g.n() + g.m()
    }

    #[test]
    fn cai_meyer_shape() {
        let f = CnfFormula::new(3, vec![vec![1, -2, 3]]).unwrap();
        let cm = cai_meyer_graph(&f).unwrap();
        let g = &cm.graph;
        assert_eq!(g.n(), 2 + 6 + 9);
        assert_eq!(g.m(), 1 + 3 * 3 + 3 * 5 + 3);
        let v = |l: &str| g.vertex_by_label(l).unwrap();
        assert!(g.has_edge(v("a1.2"), v("~x2")));
        assert!(g.has_edge(v("b1.3"), v("t1.3")));
        assert!(g.has_edge(v("a1.1"), v("v_s")) && g.has_edge(v("~x3"), v("v_c")));
        assert_eq!(cm.t_vertices, vec![v("t1.1")]);
        assert!(cai_meyer_graph(&CnfFormula::new(3, vec![]).unwrap()).is_err());
        assert!(cai_meyer_graph(&CnfFormula::new(3, vec![vec![1, 2]]).unwrap()).is_err());
    }

    #[test]
    fn replication_size() {
        let f = CnfFormula::eight_block(1, 2, 3, 3);
        let r = stable3cnf_to_vertex_stability(&f).unwrap();
        assert_eq!(r.graph.n(), 2 * 80 - 8);
        assert!(complete_provenance(&r));
        assert_eq!(r.elements_with(Origin::Replica).iter().filter(|e| matches!(e, ElementRef::Vertex(_))).count(), 72);
    }

    #[test]
    fn gjs_values() {
        let f = CnfFormula::new(3, vec![vec![1, 2, 3]]).unwrap();
        assert_eq!(chi(&gjs_3col(&f).unwrap().graph), 3);
        let block = CnfFormula::eight_block(1, 2, 3, 3);
        assert!(!is_satisfiable(&block).unwrap());
        assert_eq!(chi(&gjs_3col(&block).unwrap().graph), 4);
    }

    #[test]
    fn unfrozenness_comparison_shape() {
        let r = compare_vc_to_beta_unfrozenness(&Graph::complete(2), &Graph::empty(1));
        assert_eq!(r.graph.n(), 12);
        assert!(complete_provenance(&r));
        let r = compare_vc_to_beta_unfrozenness(&Graph::complete(1), &Graph::complete(3));
        assert!(r.graph.same_structure(&Graph::empty(1)));
    }

    #[test]
    fn stability_comparison_shape() {
        let r = compare_vc_to_beta_stability(&Graph::complete(2), &Graph::empty(2));
        // Sides K2 ∪ K2 (4) and I_2 ∪ P3 (5), padded to 5 each.
        assert_eq!(r.graph.n(), 10 + 4 * 25);
        assert!(complete_provenance(&r));
        assert_eq!(r.elements_with(Origin::Join).len(), 4 * 25 + 8 * 25);
    }

    #[test]
    fn colorability_errors() {
        let f = CnfFormula::new(3, vec![vec![1, 2, 3]]).unwrap();
        assert_eq!(compare_colorability_instance(std::slice::from_ref(&f), &[]), Err(ReductionError::LengthMismatch(1, 0)));
        assert_eq!(compare_colorability_instance(&[], &[]), Err(ReductionError::NoFormulas));
    }
}
