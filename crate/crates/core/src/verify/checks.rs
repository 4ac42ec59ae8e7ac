//! Instance generators and per-law checks for the registry in `laws`.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::generate::{enumerate_graphs_up_to, nonisomorphic_graphs, random_graph_with};
use super::laws::{GeneratorConfig, Instance};
use super::oracle::{brute_force_formula, brute_force_number, optimal_colorings, FormulaTruth};
use super::HarnessError;
use crate::cnf::{
    formula_stability, is_satisfiable, or2_combine, or2_product, random_kcnf, random_mixed_cnf, sat_to_stable_cnf,
    sat_to_stable_cnf_unpadded, to_exact_3cnf, unsat_padding, CnfFormula,
};
use crate::gadgets::{beta_stabilize_edge, chi_stabilize_edges, join_and, stabilized_join_and, two_way_gadget_edge, AndFlavor};
use crate::graph::{ElementRef, Graph, Origin};
use crate::reductions::{
    beta_unfrozen_to_beta_twoway, cai_meyer_graph, compare_colorability_instance, compare_vc_to_beta_stability,
    compare_vc_to_beta_unfrozenness, conditional_unfrozenness_reduction, stable3cnf_to_vertex_stability,
    unfrozen_to_two_way, union_double, vstab_to_stab, Unfreezer,
};
use crate::solvers::{graph_number, Budget, GraphNumber};
use crate::stability::{
    analyze_with, closed_form_verdict, enumerate_vertex_addition, query_plan, AnalysisOptions, Classes, QueryMode,
    StabilityReport, Status,
};

use GraphNumber::{Alpha, Beta, Chi, Omega};

type Outcome = Result<(), String>;
type Instances = Result<Vec<Instance>, HarnessError>;

/// Graphs up to this order get every main-solver delta re-derived by brute force.
const CROSS_CHECK_CHI: usize = 9;
const CROSS_CHECK_OTHER: usize = 14;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn wrong_kind(i: &Instance) -> String {
    format!("check received an instance of the wrong kind: {i:?}")
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

// ---------------------------------------------------------------- oracles

fn bf(g: &Graph, xi: GraphNumber) -> Result<usize, String> {
    brute_force_number(g, xi).map_err(err)
}

fn edit(g: &Graph, e: ElementRef) -> Result<Graph, String> {
    match e {
        ElementRef::Vertex(v) => g.delete_vertex(v),
        ElementRef::Edge(u, v) => g.delete_edge(u, v),
        ElementRef::Nonedge(u, v) => g.add_edge(u, v),
    }
    .map_err(err)
}

/// ξ(G′) − ξ(G) by brute force.
fn bf_delta(g: &Graph, xi: GraphNumber, e: ElementRef) -> Result<i64, String> {
    Ok(bf(&edit(g, e)?, xi)? as i64 - bf(g, xi)? as i64)
}

fn solve(g: &Graph, xi: GraphNumber) -> Result<usize, String> {
    let v = graph_number(g, xi).map_err(err)?.value;
    let limit = if xi == Chi { CROSS_CHECK_CHI } else { CROSS_CHECK_OTHER };
    if g.n() <= limit {
        let b = bf(g, xi)?;
        ensure!(v == b, "{xi} solver gives {v}, brute force {b}");
    }
    Ok(v)
}

/// Full analysis of `classes`, every delta cross-checked against brute force when small.
fn report(g: &Graph, xi: GraphNumber, classes: Classes) -> Result<StabilityReport, String> {
    let opts = AnalysisOptions {
        classes,
        ..AnalysisOptions::default()
    };
    let r = analyze_with(g, xi, &opts).map_err(err)?;
    let limit = if xi == Chi { CROSS_CHECK_CHI } else { CROSS_CHECK_OTHER };
    if g.n() <= limit {
        let base = bf(g, xi)?;
        ensure!(r.value == base, "{xi} analysis value {} but brute force {base}", r.value);
        for s in r.edge_statuses.iter().chain(&r.vertex_statuses).chain(&r.nonedge_statuses) {
            let d = bf(&edit(g, s.element)?, xi)? as i64 - base as i64;
            ensure!(d == s.delta, "{xi} delta of {} is {} but brute force gives {d}", s.element, s.delta);
        }
    }
    Ok(r)
}

fn verdict(g: &Graph, xi: GraphNumber, classes: Classes) -> Result<crate::stability::Verdicts, String> {
    let opts = AnalysisOptions {
        classes,
        early_exit: true,
        ..AnalysisOptions::default()
    };
    Ok(analyze_with(g, xi, &opts).map_err(err)?.verdicts)
}

fn stable(g: &Graph, xi: GraphNumber) -> Result<bool, String> {
    Ok(verdict(g, xi, Classes::EDGES)?.stable == Some(true))
}

fn vertex_stable(g: &Graph, xi: GraphNumber) -> Result<bool, String> {
    Ok(verdict(g, xi, Classes::VERTICES)?.vertex_stable == Some(true))
}

fn unfrozen(g: &Graph, xi: GraphNumber) -> Result<bool, String> {
    Ok(verdict(g, xi, Classes::NONEDGES)?.unfrozen == Some(true))
}

fn two_way(g: &Graph, xi: GraphNumber) -> Result<bool, String> {
    let classes = Classes {
        edges: true,
        vertices: false,
        nonedges: true,
    };
    Ok(verdict(g, xi, classes)?.two_way_stable == Some(true))
}

fn formula_truth(f: &CnfFormula) -> Result<FormulaTruth, String> {
    brute_force_formula(f).map_err(err)
}

/// Stability by the DPLL solver, for formulas past the enumeration limit.
fn dpll_stable(f: &CnfFormula) -> Result<bool, String> {
    Ok(formula_stability(f).map_err(err)?.stable)
}

// ------------------------------------------------------------- generators

fn rng(c: &GeneratorConfig) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(c.seed)
}

fn graphs(gs: Vec<Graph>) -> Vec<Instance> {
    gs.into_iter().map(|graph| Instance::Graph { graph }).collect()
}

pub(super) fn exhaustive(c: &GeneratorConfig) -> Instances {
    Ok(graphs(enumerate_graphs_up_to(c.max_n)?))
}

pub(super) fn exhaustive_and_random(c: &GeneratorConfig) -> Instances {
    let mut out = enumerate_graphs_up_to(c.max_n)?;
    let mut r = rng(c);
    for _ in 0..c.samples {
        let n = r.gen_range(0..=c.max_n + 2);
        let p = r.gen_range(0.2..0.8);
        out.push(random_graph_with(n, p, &mut r));
    }
    Ok(graphs(out))
}

/// A random graph with 2..=max_n vertices and at least one edge.
fn graph_with_edge(r: &mut ChaCha8Rng, max_n: usize) -> Graph {
    loop {
        let n = r.gen_range(2..=max_n.max(2));
        let g = random_graph_with(n, 0.5, r);
        if g.m() > 0 {
            return g;
        }
    }
}

pub(super) fn random_edge_sets(c: &GeneratorConfig) -> Instances {
    let mut r = rng(c);
    Ok((0..c.samples)
        .map(|_| {
            let graph = graph_with_edge(&mut r, c.max_n);
            let all = graph.edges();
            let mut edges: Vec<(usize, usize)> = all.iter().copied().filter(|_| r.gen_bool(0.5)).collect();
            if edges.is_empty() {
                edges.push(*all.choose(&mut r).expect("nonempty"));
            }
            Instance::Edges { graph, edges }
        })
        .collect())
}

pub(super) fn random_single_edges(c: &GeneratorConfig) -> Instances {
    let mut r = rng(c);
    Ok((0..c.samples)
        .map(|_| {
            let graph = graph_with_edge(&mut r, c.max_n);
            let e = *graph.edges().choose(&mut r).expect("nonempty");
            Instance::Edges { graph, edges: vec![e] }
        })
        .collect())
}

pub(super) fn class_pairs(c: &GeneratorConfig) -> Instances {
    let classes = nonisomorphic_graphs(c.max_n)?;
    Ok(classes
        .iter()
        .flat_map(|g| classes.iter().map(move |h| Instance::Pair { g: g.clone(), h: h.clone() }))
        .collect())
}

fn pool() -> Vec<Graph> {
    vec![
        Graph::complete(1),
        Graph::complete(2),
        Graph::path(3),
        Graph::cycle(4),
        Graph::cycle(5),
        Graph::complete(3).disjoint_union(&Graph::complete(3)),
    ]
}

pub(super) fn pool_tuples(_: &GeneratorConfig) -> Instances {
    let p = pool();
    let mut out = Vec::new();
    for i in 0..p.len() {
        for j in i..p.len() {
            out.push(vec![p[i].clone(), p[j].clone()]);
        }
    }
    for i in 0..p.len() {
        for j in i..p.len() {
            for k in j..p.len() {
                out.push(vec![p[i].clone(), p[j].clone(), p[k].clone()]);
            }
        }
    }
    Ok(out.into_iter().map(|graphs| Instance::Tuple { graphs }).collect())
}

fn random_exact3_formula(r: &mut ChaCha8Rng, max_n: usize) -> CnfFormula {
    let n = r.gen_range(3..=max_n.max(3)) as u32;
    let m = r.gen_range(1..=5);
    let mut f = random_kcnf(n, m, 3, r).expect("n >= 3");
    if r.gen_bool(0.3) {
        let mut vars: Vec<u32> = (1..=n).collect();
        vars.shuffle(r);
        for c in CnfFormula::eight_block(vars[0], vars[1], vars[2], n).clauses() {
            f.push_clause(c.clone()).expect("valid clause");
        }
    }
    f
}

pub(super) fn random_exact3(c: &GeneratorConfig) -> Instances {
    let mut r = rng(c);
    Ok((0..c.samples)
        .map(|_| Instance::Formula {
            formula: random_exact3_formula(&mut r, c.max_n),
        })
        .collect())
}

pub(super) fn random_exact3_pairs(c: &GeneratorConfig) -> Instances {
    let mut r = rng(c);
    Ok((0..c.samples)
        .map(|_| Instance::FormulaPair {
            first: random_exact3_formula(&mut r, c.max_n),
            second: random_exact3_formula(&mut r, c.max_n),
        })
        .collect())
}

/// Upper bound on the variables of a converted formula, so it stays enumerable.
const CONVERTED_VAR_LIMIT: u32 = 20;

pub(super) fn random_any_cnf(c: &GeneratorConfig) -> Instances {
    let mut r = rng(c);
    let mut out = Vec::with_capacity(c.samples);
    while out.len() < c.samples {
        let n = r.gen_range(1..=c.max_n.max(1)) as u32;
        let m = r.gen_range(1..=6);
        // Width 0 only rarely: an empty clause makes the formula trivially unsatisfiable.
        let widths: Vec<usize> = (0..m).map(|_| if r.gen_bool(0.05) { 0 } else { r.gen_range(1..=5) }).collect();
        let formula = random_mixed_cnf(n, &widths, &mut r);
        if to_exact_3cnf(&formula).formula.num_vars() <= CONVERTED_VAR_LIMIT {
            out.push(Instance::Formula { formula });
        }
    }
    Ok(out)
}

pub(super) fn cai_meyer_corpus(c: &GeneratorConfig) -> Instances {
    let mut r = rng(c);
    let n = c.max_n.max(3) as u32;
    let mut out = vec![CnfFormula::eight_block(1, 2, 3, n)];
    for _ in 0..c.samples {
        let m = r.gen_range(1..=4);
        out.push(random_kcnf(n, m, 3, &mut r).expect("n >= 3"));
    }
    Ok(out.into_iter().map(|formula| Instance::Formula { formula }).collect())
}

pub(super) fn colorability_lists(_: &GeneratorConfig) -> Instances {
    let sat = CnfFormula::new(3, vec![vec![1, 2, 3]]).expect("valid");
    let unsat = CnfFormula::eight_block(1, 2, 3, 3);
    // Satisfiable formulas first, as the premise Φ1 ⇐ Φ2 ⇐ ⋯ requires.
    let list = |k: usize, s: usize| -> Vec<CnfFormula> { (0..k).map(|i| if i < s { sat.clone() } else { unsat.clone() }).collect() };
    let mut out = Vec::new();
    for k in 1..=2 {
        for a in 0..=k {
            for b in 0..=k {
                out.push(Instance::FormulaLists {
                    phis: list(k, a),
                    psis: list(k, b),
                });
            }
        }
    }
    Ok(out)
}

// ------------------------------------------------------------------ checks

fn graph(i: &Instance) -> Result<&Graph, String> {
    match i {
        Instance::Graph { graph } => Ok(graph),
        _ => Err(wrong_kind(i)),
    }
}

type EdgeInstance<'a> = (&'a Graph, &'a [(usize, usize)]);

fn edges(i: &Instance) -> Result<EdgeInstance<'_>, String> {
    match i {
        Instance::Edges { graph, edges } => Ok((graph, edges)),
        _ => Err(wrong_kind(i)),
    }
}

fn pair(i: &Instance) -> Result<(&Graph, &Graph), String> {
    match i {
        Instance::Pair { g, h } => Ok((g, h)),
        _ => Err(wrong_kind(i)),
    }
}

fn tuple(i: &Instance) -> Result<&[Graph], String> {
    match i {
        Instance::Tuple { graphs } => Ok(graphs),
        _ => Err(wrong_kind(i)),
    }
}

fn formula(i: &Instance) -> Result<&CnfFormula, String> {
    match i {
        Instance::Formula { formula } => Ok(formula),
        _ => Err(wrong_kind(i)),
    }
}

fn critical(s: Option<&crate::stability::ElementStatus>) -> bool {
    s.is_some_and(|s| s.status == Status::Critical)
}

pub(super) fn obs1(i: &Instance) -> Outcome {
    let g = graph(i)?;
    let r = report(g, Chi, Classes { nonedges: false, ..Classes::ALL })?;
    for s in r.edge_statuses.iter().chain(&r.vertex_statuses) {
        ensure!(s.delta == 0 || s.delta == -1, "deleting {} changes χ by {}", s.element, s.delta);
    }
    Ok(())
}

pub(super) fn obs2(i: &Instance) -> Outcome {
    let g = graph(i)?;
    let r = report(g, Chi, Classes { nonedges: false, ..Classes::ALL })?;
    for s in r.edge_statuses.iter().filter(|s| s.status == Status::Critical) {
        for v in s.element.ids() {
            ensure!(
                critical(r.status_of(ElementRef::Vertex(v))),
                "{} is critical but its endpoint {v} is not",
                s.element
            );
        }
    }
    Ok(())
}

pub(super) fn obs3(i: &Instance) -> Outcome {
    let g = graph(i)?;
    let r = report(g, Chi, Classes { nonedges: false, ..Classes::ALL })?;
    for s in r.vertex_statuses.iter().filter(|s| s.status == Status::Stable) {
        let ElementRef::Vertex(v) = s.element else { unreachable!() };
        for &w in g.neighbors(v) {
            ensure!(
                !critical(r.status_of(ElementRef::edge(v, w))),
                "vertex {v} is stable but its edge {{{v},{w}}} is critical"
            );
        }
    }
    Ok(())
}

pub(super) fn obs4(i: &Instance) -> Outcome {
    let g = graph(i)?;
    let colorings = optimal_colorings(g).map_err(err)?;
    for v in 0..g.n() {
        let is_critical = bf_delta(g, Chi, ElementRef::Vertex(v))? != 0;
        let singleton = colorings
            .iter()
            .any(|c| (0..g.n()).all(|w| w == v || c[w] != c[v]));
        ensure!(
            is_critical == singleton,
            "vertex {v}: critical = {is_critical}, has an optimal coloring with a singleton class = {singleton}"
        );
    }
    Ok(())
}

/// Per-element (status unchanged?) for a class of `r`.
fn unchanged(list: &[crate::stability::ElementStatus]) -> BTreeMap<(usize, usize), bool> {
    list.iter()
        .map(|s| {
            let key = match s.element {
                ElementRef::Vertex(v) => (v, v),
                ElementRef::Edge(u, v) | ElementRef::Nonedge(u, v) => (u, v),
            };
            (key, s.status.is_unchanged())
        })
        .collect()
}

struct Triple {
    beta: StabilityReport,
    alpha: StabilityReport,
    /// ω on the complement.
    omega_c: StabilityReport,
}

fn triple(g: &Graph, classes: Classes, complement_classes: Classes) -> Result<Triple, String> {
    Ok(Triple {
        beta: report(g, Beta, classes)?,
        alpha: report(g, Alpha, classes)?,
        omega_c: report(&g.complement(), Omega, complement_classes)?,
    })
}

fn same(name: &str, a: &BTreeMap<(usize, usize), bool>, b: &BTreeMap<(usize, usize), bool>) -> Outcome {
    ensure!(a == b, "{name}: element statuses differ: {a:?} vs {b:?}");
    Ok(())
}

pub(super) fn prop1_1(i: &Instance) -> Outcome {
    let g = graph(i)?;
    let t = triple(g, Classes::EDGES, Classes::NONEDGES)?;
    let b = unchanged(&t.beta.edge_statuses);
    same("β vs α edges", &b, &unchanged(&t.alpha.edge_statuses))?;
    same("β edges vs ω complement nonedges", &b, &unchanged(&t.omega_c.nonedge_statuses))?;
    ensure!(
        t.beta.verdicts.stable == t.alpha.verdicts.stable && t.beta.verdicts.stable == t.omega_c.verdicts.unfrozen,
        "graph verdicts differ"
    );
    Ok(())
}

pub(super) fn prop1_2(i: &Instance) -> Outcome {
    let g = graph(i)?;
    let t = triple(g, Classes::NONEDGES, Classes::EDGES)?;
    let b = unchanged(&t.beta.nonedge_statuses);
    same("β vs α nonedges", &b, &unchanged(&t.alpha.nonedge_statuses))?;
    same("β nonedges vs ω complement edges", &b, &unchanged(&t.omega_c.edge_statuses))?;
    ensure!(
        t.beta.verdicts.unfrozen == t.alpha.verdicts.unfrozen && t.beta.verdicts.unfrozen == t.omega_c.verdicts.stable,
        "graph verdicts differ"
    );
    Ok(())
}

pub(super) fn prop1_3(i: &Instance) -> Outcome {
    let g = graph(i)?;
    let both = Classes {
        vertices: false,
        ..Classes::ALL
    };
    let t = triple(g, both, both)?;
    let (b, a, o) = (t.beta.verdicts, t.alpha.verdicts, t.omega_c.verdicts);
    ensure!(
        b.two_way_stable == a.two_way_stable && b.two_way_stable == o.two_way_stable,
        "two-way verdicts: β {:?}, α {:?}, ω of complement {:?}",
        b.two_way_stable,
        a.two_way_stable,
        o.two_way_stable
    );
    Ok(())
}

pub(super) fn prop1_4(i: &Instance) -> Outcome {
    let g = graph(i)?;
    let vs = report(g, Beta, Classes::VERTICES)?.verdicts.vertex_stable == Some(true);
    ensure!(vs == g.is_edgeless(), "β-vertex-stable = {vs} but edgeless = {}", g.is_edgeless());
    Ok(())
}

pub(super) fn prop1_5(i: &Instance) -> Outcome {
    let g = graph(i)?;
    let a = report(g, Alpha, Classes::VERTICES)?;
    let o = report(&g.complement(), Omega, Classes::VERTICES)?;
    same("α vertices vs ω complement vertices", &unchanged(&a.vertex_statuses), &unchanged(&o.vertex_statuses))?;
    ensure!(a.verdicts.vertex_stable == o.verdicts.vertex_stable, "graph verdicts differ");
    Ok(())
}

/// Does every attachment of a new vertex leave ξ unchanged?
fn vertex_unfrozen_by_enumeration(g: &Graph, xi: GraphNumber) -> Result<bool, String> {
    let all = enumerate_vertex_addition(g, xi, g.n()).map_err(err)?;
    let base = bf(g, xi)? as i64;
    for (nb, d) in &all {
        let with = bf(&g.add_vertex(nb).map_err(err)?, xi)? as i64;
        ensure!(with - base == *d, "{xi}: attachment {nb:?} has delta {d}, brute force {}", with - base);
    }
    Ok(all.iter().all(|&(_, d)| d == 0))
}

pub(super) fn prop1_6(i: &Instance) -> Outcome {
    let g = graph(i)?;
    let vu = vertex_unfrozen_by_enumeration(g, Beta)?;
    let vs = report(g, Beta, Classes::VERTICES)?.verdicts.vertex_stable == Some(true);
    ensure!(vu == g.is_null(), "β-vertex-unfrozen = {vu} on a graph with {} vertices", g.n());
    ensure!((vu && vs) == g.is_null(), "β-vertex-two-way-stable = {} on a graph with {} vertices", vu && vs, g.n());
    Ok(())
}

pub(super) fn prop1_7(i: &Instance) -> Outcome {
    let g = graph(i)?;
    for xi in [Alpha, Omega, Chi] {
        ensure!(!vertex_unfrozen_by_enumeration(g, xi)?, "{xi}-vertex-unfrozen holds");
    }
    Ok(())
}

pub(super) fn prop2_1(i: &Instance) -> Outcome {
    prop2(i, true)
}

pub(super) fn prop2_2(i: &Instance) -> Outcome {
    prop2(i, false)
}

/// Vertex v is β-stable iff α-critical iff ω-critical in the complement, and the same
/// with stable and critical swapped.
fn prop2(i: &Instance, beta_stable_side: bool) -> Outcome {
    let g = graph(i)?;
    let b = report(g, Beta, Classes::VERTICES)?;
    let a = report(g, Alpha, Classes::VERTICES)?;
    let o = report(&g.complement(), Omega, Classes::VERTICES)?;
    for v in 0..g.n() {
        let get = |r: &StabilityReport| r.status_of(ElementRef::Vertex(v)).map(|s| s.status == Status::Stable);
        let (bs, as_, os) = (get(&b), get(&a), get(&o));
        let (lhs, mid, rhs) = if beta_stable_side {
            (bs, as_.map(|x| !x), os.map(|x| !x))
        } else {
            (bs.map(|x| !x), as_, os)
        };
        ensure!(lhs == mid && mid == rhs, "vertex {v}: β {lhs:?}, α {mid:?}, ω of complement {rhs:?}");
    }
    Ok(())
}

pub(super) fn plan_queries(i: &Instance) -> Outcome {
    let g = graph(i)?;
    let plan = query_plan(g, QueryMode::Both);
    let n = g.n();
    ensure!(plan.queries.len() == (1 + g.m() + n) * (n + 1), "plan has {} queries", plan.queries.len());
    let got = plan.execute(Budget::default()).map_err(err)?;
    let r = report(g, Chi, Classes { nonedges: false, ..Classes::ALL })?;
    ensure!(
        got.stable == r.verdicts.stable && got.vertex_stable == r.verdicts.vertex_stable,
        "plan gives {got:?}, analysis gives stable {:?}, vertex-stable {:?}",
        r.verdicts.stable,
        r.verdicts.vertex_stable
    );
    Ok(())
}

pub(super) fn lem3(i: &Instance) -> Outcome {
    let g = graph(i)?;
    let out = vstab_to_stab(g).graph;
    ensure!(solve(&out, Chi)? == 2 * solve(g, Chi)?, "χ(G+G) ≠ 2χ(G)");
    let (a, b) = (vertex_stable(g, Chi)?, stable(&out, Chi)?);
    ensure!(a == b, "G vertex-stable = {a}, G+G stable = {b}");
    Ok(())
}

fn and_law(i: &Instance, build: impl Fn(&[Graph]) -> Result<Graph, String>, property: fn(&Graph) -> Result<bool, String>) -> Outcome {
    let gs = tuple(i)?;
    let all = gs.iter().map(property).collect::<Result<Vec<bool>, String>>()?;
    let out = build(gs)?;
    let got = property(&out)?;
    ensure!(got == all.iter().all(|&x| x), "inputs {all:?}, output {got}");
    Ok(())
}

pub(super) fn thm3_vertex_stability(i: &Instance) -> Outcome {
    and_law(
        i,
        |gs| Ok(join_and(gs, AndFlavor::VertexStability).map_err(err)?.graph),
        |g| vertex_stable(g, Chi),
    )
}

pub(super) fn thm3_unfrozenness(i: &Instance) -> Outcome {
    and_law(
        i,
        |gs| Ok(join_and(gs, AndFlavor::Unfrozenness).map_err(err)?.graph),
        |g| unfrozen(g, Chi),
    )
}

pub(super) fn cor2(i: &Instance) -> Outcome {
    and_law(i, |gs| Ok(stabilized_join_and(gs).map_err(err)?.graph), |g| stable(g, Chi))
}

pub(super) fn lem4(i: &Instance) -> Outcome {
    let f = formula(i)?;
    let out = to_exact_3cnf(f).formula;
    ensure!(out.is_exact_k(3), "output is not exact-3CNF");
    let (a, b) = (formula_truth(f)?, formula_truth(&out)?);
    ensure!(a.satisfiable == b.satisfiable, "satisfiability {} became {}", a.satisfiable, b.satisfiable);
    ensure!(a.stable() == b.stable(), "stability {} became {}", a.stable(), b.stable());
    Ok(())
}

pub(super) fn thm4_unsat_padding(i: &Instance) -> Outcome {
    let f = formula(i)?;
    let out = unsat_padding(f).map_err(err)?.formula;
    let (a, b) = (formula_truth(f)?, formula_truth(&out)?);
    ensure!(!b.satisfiable, "padded formula is satisfiable");
    ensure!(b.stable() == !a.satisfiable, "Φ satisfiable = {}, padded stable = {}", a.satisfiable, b.stable());
    Ok(())
}

pub(super) fn thm4_sat_to_stable(i: &Instance) -> Outcome {
    let f = formula(i)?;
    let sat = formula_truth(f)?.satisfiable;
    let mid = sat_to_stable_cnf_unpadded(f).map_err(err)?.formula;
    let t = formula_truth(&mid)?;
    ensure!(t.satisfiable == sat, "Φ satisfiable = {sat}, Ψ satisfiable = {}", t.satisfiable);
    ensure!(t.stable() == sat, "Φ satisfiable = {sat}, Ψ stable = {}", t.stable());
    let out = sat_to_stable_cnf(f).map_err(err)?.formula;
    ensure!(out.is_exact_k(3), "padded output is not exact-3CNF");
    let s = dpll_stable(&out)?;
    ensure!(s == sat, "Φ satisfiable = {sat}, padded Ψ stable = {s}");
    Ok(())
}

pub(super) fn thm4_or2(i: &Instance) -> Outcome {
    let Instance::FormulaPair { first, second } = i else {
        return Err(wrong_kind(i));
    };
    let want = formula_truth(first)?.stable() || formula_truth(second)?.stable();
    let product = or2_product(first, second).formula;
    let p = formula_truth(&product)?;
    ensure!(p.stable() == want, "either input stable = {want}, product stable = {}", p.stable());
    let both_sat = is_satisfiable(first).map_err(err)? || is_satisfiable(second).map_err(err)?;
    ensure!(p.satisfiable == both_sat, "product satisfiability is not the disjunction");
    let out = or2_combine(first, second).formula;
    ensure!(out.is_exact_k(3), "combined output is not exact-3CNF");
    let s = dpll_stable(&out)?;
    ensure!(s == want, "either input stable = {want}, exact-3 output stable = {s}");
    Ok(())
}

pub(super) fn lem5(i: &Instance) -> Outcome {
    let f = formula(i)?;
    let cm = cai_meyer_graph(f).map_err(err)?;
    let chi = solve(&cm.graph, Chi)?;
    let mut drops = false;
    for &t in &cm.t_vertices {
        drops |= solve(&cm.graph.delete_vertex(t).map_err(err)?, Chi)? < chi;
    }
    let st = formula_truth(f)?.stable();
    ensure!(!st == drops, "Φ stable = {st}, some t_i1 critical = {drops}");
    Ok(())
}

pub(super) fn cai_meyer_coloring(i: &Instance) -> Outcome {
    let f = formula(i)?;
    let truth = formula_truth(f)?;
    let cm = cai_meyer_graph(f).map_err(err)?;
    let chi = solve(&cm.graph, Chi)?;
    ensure!(chi == 3 || chi == 4, "χ(G_Φ) = {chi}");
    ensure!((chi == 3) == truth.satisfiable, "Φ satisfiable = {}, χ(G_Φ) = {chi}", truth.satisfiable);
    for (c, &t) in cm.t_vertices.iter().enumerate() {
        let x = solve(&cm.graph.delete_vertex(t).map_err(err)?, Chi)?;
        let s = truth.without_clause[c];
        ensure!((x == 3) == s, "Φ − C_{c} satisfiable = {s}, χ(G_Φ − t) = {x}");
    }
    Ok(())
}

pub(super) fn lem6(i: &Instance) -> Outcome {
    let g = graph(i)?;
    let chi = bf(g, Chi)?;
    for v in 0..g.n() {
        let r = g.replicate_vertex(v).map_err(err)?;
        let values = [
            bf(&r, Chi)?,
            bf(&r.delete_vertex(v).map_err(err)?, Chi)?,
            bf(&r.delete_vertex(g.n()).map_err(err)?, Chi)?,
        ];
        ensure!(values.iter().all(|&x| x == chi), "replicating {v}: χ(G) = {chi}, (Ĝ, Ĝ − v, Ĝ − v') = {values:?}");
    }
    Ok(())
}

pub(super) fn thm5(i: &Instance) -> Outcome {
    let f = formula(i)?;
    let st = formula_truth(f)?.stable();
    let out = stable3cnf_to_vertex_stability(f).map_err(err)?.graph;
    let vs = vertex_stable(&out, Chi)?;
    ensure!(st == vs, "Φ stable = {st}, r(G_Φ) vertex-stable = {vs}");
    Ok(())
}

pub(super) fn thm6(i: &Instance) -> Outcome {
    let g = graph(i)?;
    let out = union_double(g).graph;
    ensure!(solve(&out, Chi)? == solve(g, Chi)?, "χ(G ∪ G) ≠ χ(G)");
    ensure!(stable(&out, Chi)?, "G ∪ G is not stable");
    ensure!(vertex_stable(&out, Chi)?, "G ∪ G is not vertex-stable");
    Ok(())
}

/// Output edge -> input edge, for edges tagged `Original`.
fn original_edges(r: &crate::gadgets::ConstructionResult) -> Vec<(ElementRef, ElementRef)> {
    r.element_provenance
        .iter()
        .filter(|(e, t)| matches!(e, ElementRef::Edge(..)) && t.origin == Origin::Original)
        .map(|(&e, t)| (e, t.source.expect("original elements have a source")))
        .collect()
}

/// Input vertex -> output vertex.
fn original_vertices(r: &crate::gadgets::ConstructionResult) -> BTreeMap<usize, usize> {
    r.element_provenance
        .iter()
        .filter_map(|(e, t)| match (e, t.origin, t.source) {
            (&ElementRef::Vertex(v), Origin::Original, Some(ElementRef::Vertex(w))) => Some((w, v)),
            _ => None,
        })
        .collect()
}

fn edge_unchanged(r: &StabilityReport, e: ElementRef) -> Result<bool, String> {
    r.status_of(e)
        .map(|s| s.status.is_unchanged())
        .ok_or_else(|| format!("{e} missing from the report"))
}

pub(super) fn lem7_p1(i: &Instance) -> Outcome {
    let (g, s) = edges(i)?;
    let r = chi_stabilize_edges(g, s).map_err(err)?;
    let (a, b) = (solve(g, Chi)?, solve(&r.graph, Chi)?);
    ensure!(b == a + 2, "χ went from {a} to {b}");
    ensure!(r.value_shift == Some(2), "claimed shift {:?}", r.value_shift);
    Ok(())
}

pub(super) fn lem7_p2(i: &Instance) -> Outcome {
    let (g, s) = edges(i)?;
    let r = chi_stabilize_edges(g, s).map_err(err)?;
    let rep = report(&r.graph, Chi, Classes::EDGES)?;
    let originals: Vec<ElementRef> = original_edges(&r).into_iter().map(|(e, _)| e).collect();
    for st in rep.edge_statuses.iter().filter(|st| !originals.contains(&st.element)) {
        ensure!(st.status == Status::Stable, "new {} is critical", st.element);
    }
    Ok(())
}

pub(super) fn lem7_p3(i: &Instance) -> Outcome {
    let (g, s) = edges(i)?;
    let r = chi_stabilize_edges(g, s).map_err(err)?;
    let before = report(g, Chi, Classes::EDGES)?;
    let after = report(&r.graph, Chi, Classes::EDGES)?;
    for (out, src) in original_edges(&r) {
        let (a, b) = (edge_unchanged(&before, src)?, edge_unchanged(&after, out)?);
        ensure!(a == b, "{src} stable = {a} in G but {b} in Ĝ");
    }
    Ok(())
}

pub(super) fn thm7(i: &Instance) -> Outcome {
    let g = graph(i)?;
    let mut vs = true;
    for v in 0..g.n() {
        vs &= bf_delta(g, Beta, ElementRef::Vertex(v))? == 0;
    }
    ensure!(vs == g.is_edgeless(), "β-vertex-stable = {vs}, edgeless = {}", g.is_edgeless());
    Ok(())
}

pub(super) fn lem9_shift(i: &Instance) -> Outcome {
    let (g, e) = edges(i)?;
    let r = beta_stabilize_edge(g, e[0]).map_err(err)?;
    let (a, b) = (bf(g, Beta)?, bf(&r.graph, Beta)?);
    ensure!(b == a + 2, "β went from {a} to {b}");
    Ok(())
}

pub(super) fn lem9_gadget_edges(i: &Instance) -> Outcome {
    let (g, e) = edges(i)?;
    let r = beta_stabilize_edge(g, e[0]).map_err(err)?;
    for (out, t) in &r.element_provenance {
        if matches!(out, ElementRef::Edge(..)) && t.origin == Origin::Gadget {
            ensure!(bf_delta(&r.graph, Beta, *out)? == 0, "gadget {out} is critical");
        }
    }
    Ok(())
}

pub(super) fn lem9_other_edges(i: &Instance) -> Outcome {
    let (g, e) = edges(i)?;
    let r = beta_stabilize_edge(g, e[0]).map_err(err)?;
    for (out, src) in original_edges(&r) {
        let (a, b) = (bf_delta(g, Beta, src)? == 0, bf_delta(&r.graph, Beta, out)? == 0);
        ensure!(a == b, "{src} stable = {a} in G but {b} in G'");
    }
    Ok(())
}

pub(super) fn thm9_end2end(i: &Instance) -> Outcome {
    let (g, h) = pair(i)?;
    let out = compare_vc_to_beta_stability(g, h).graph;
    let (bg, bh) = (bf(g, Beta)?, bf(h, Beta)?);
    let s = stable(&out, Beta)?;
    ensure!(s == (bg > bh), "β(G) = {bg}, β(H) = {bh}, output ({} vertices) β-stable = {s}", out.n());
    Ok(())
}

pub(super) fn thm10(i: &Instance) -> Outcome {
    let g = graph(i)?;
    for xi in [Alpha, Beta, Chi, Omega] {
        let e = vertex_unfrozen_by_enumeration(g, xi)?;
        ensure!(e == (xi == Beta && g.is_null()), "{xi}-vertex-unfrozen = {e} on {} vertices", g.n());
    }
    Ok(())
}

pub(super) fn thm11_end2end(i: &Instance) -> Outcome {
    let (g, h) = pair(i)?;
    let out = compare_vc_to_beta_unfrozenness(g, h).graph;
    let (bg, bh) = (bf(g, Beta)?, bf(h, Beta)?);
    let u = report(&out, Beta, Classes::NONEDGES)?.verdicts.unfrozen == Some(true);
    ensure!(u == (bg <= bh), "β(G) = {bg}, β(H) = {bh}, output β-unfrozen = {u}");
    Ok(())
}

pub(super) fn thm12_end2end(i: &Instance) -> Outcome {
    let (g, h) = pair(i)?;
    let out = conditional_unfrozenness_reduction(g, h, &Unfreezer::exact_clique()).map_err(err)?.graph;
    let (cg, ch) = (solve(g, Chi)?, solve(h, Chi)?);
    let u = unfrozen(&out, Chi)?;
    ensure!(u == (cg <= ch), "χ(G) = {cg}, χ(H) = {ch}, U unfrozen = {u}");
    Ok(())
}

pub(super) fn thm13_end2end(i: &Instance) -> Outcome {
    let Instance::FormulaLists { phis, psis } = i else {
        return Err(wrong_kind(i));
    };
    let count = |fs: &[CnfFormula]| -> Result<usize, String> {
        let mut n = 0;
        for f in fs {
            n += formula_truth(f)?.satisfiable as usize;
        }
        Ok(n)
    };
    let (a, b) = (count(phis)?, count(psis)?);
    let (g, h) = compare_colorability_instance(phis, psis).map_err(err)?;
    let (cg, ch) = (solve(&g, Chi)?, solve(&h, Chi)?);
    ensure!((cg <= ch) == (a <= b), "#sat Φ = {a}, #sat Ψ = {b}, χ(G) = {cg}, χ(H) = {ch}");
    Ok(())
}

pub(super) fn thm14_end2end(i: &Instance) -> Outcome {
    let g = graph(i)?;
    let u = unfrozen(g, Chi)?;
    let out = unfrozen_to_two_way(g).graph;
    let t = two_way(&out, Chi)?;
    ensure!(u == t, "G unfrozen = {u}, output two-way stable = {t}");
    Ok(())
}

fn two_way_gadget(i: &Instance) -> Result<(&Graph, (usize, usize), crate::gadgets::ConstructionResult), String> {
    let (g, e) = edges(i)?;
    Ok((g, e[0], two_way_gadget_edge(g, e[0]).map_err(err)?))
}

pub(super) fn lem13_p1(i: &Instance) -> Outcome {
    let (g, _, r) = two_way_gadget(i)?;
    let (a, b) = (bf(g, Beta)?, bf(&r.graph, Beta)?);
    ensure!(b == a + 6, "β went from {a} to {b}");
    Ok(())
}

pub(super) fn lem13_p2(i: &Instance) -> Outcome {
    let (g, e, r) = two_way_gadget(i)?;
    let e = ElementRef::edge(e.0, e.1);
    for (out, src) in original_edges(&r).into_iter().filter(|&(_, src)| src != e) {
        let (a, b) = (bf_delta(g, Beta, src)? == 0, bf_delta(&r.graph, Beta, out)? == 0);
        ensure!(a == b, "{src} stable = {a} in G but {b} in G'");
    }
    Ok(())
}

pub(super) fn lem13_p3(i: &Instance) -> Outcome {
    let (_, e, r) = two_way_gadget(i)?;
    let e = ElementRef::edge(e.0, e.1);
    let kept: Vec<ElementRef> = original_edges(&r).into_iter().filter(|&(_, src)| src != e).map(|(o, _)| o).collect();
    for (out, _) in r.element_provenance.iter().filter(|(o, _)| matches!(o, ElementRef::Edge(..))) {
        if !kept.contains(out) {
            ensure!(bf_delta(&r.graph, Beta, *out)? == 0, "{out} is critical in G'");
        }
    }
    Ok(())
}

pub(super) fn lem13_p4(i: &Instance) -> Outcome {
    let (g, _, r) = two_way_gadget(i)?;
    let map = original_vertices(&r);
    for (u, v) in g.nonedges() {
        let out = ElementRef::nonedge(map[&u], map[&v]);
        let a = bf_delta(g, Beta, ElementRef::nonedge(u, v))? == 0;
        let b = bf_delta(&r.graph, Beta, out)? == 0;
        ensure!(a == b, "nonedge {{{u},{v}}} unfrozen = {a} in G but {b} in G'");
    }
    Ok(())
}

pub(super) fn lem13_p5(i: &Instance) -> Outcome {
    let (g, _, r) = two_way_gadget(i)?;
    let map = original_vertices(&r);
    let old: Vec<ElementRef> = g
        .nonedges()
        .into_iter()
        .map(|(u, v)| ElementRef::nonedge(map[&u], map[&v]))
        .collect();
    for (u, v) in r.graph.nonedges() {
        let ne = ElementRef::nonedge(u, v);
        if !old.contains(&ne) {
            ensure!(bf_delta(&r.graph, Beta, ne)? == 0, "new {ne} is frozen in G'");
        }
    }
    Ok(())
}

pub(super) fn thm15_end2end(i: &Instance) -> Outcome {
    let g = graph(i)?;
    let u = unfrozen(g, Beta)?;
    let out = beta_unfrozen_to_beta_twoway(g).graph;
    let t = two_way(&out, Beta)?;
    ensure!(u == t, "G β-unfrozen = {u}, output β-two-way-stable = {t}");
    Ok(())
}

/// Closed forms against attachment enumeration for every predicate and graph number.
pub(super) fn closed_forms(i: &Instance) -> Outcome {
    let g = graph(i)?;
    for xi in [Alpha, Beta, Chi, Omega] {
        let vu = vertex_unfrozen_by_enumeration(g, xi)?;
        let cf = closed_form_verdict(g, &format!("{}-vertex-unfrozen", xi.name())).map_err(err)?;
        ensure!(cf == vu, "{xi}-vertex-unfrozen: closed form {cf}, enumeration {vu}");
        let vs = (0..g.n()).try_fold(true, |acc, v| Ok::<_, String>(acc && bf_delta(g, xi, ElementRef::Vertex(v))? == 0))?;
        let cf = closed_form_verdict(g, &format!("{}-vertex-two-way-stable", xi.name())).map_err(err)?;
        ensure!(cf == (vs && vu), "{xi}-vertex-two-way-stable: closed form {cf}, enumeration {}", vs && vu);
        if xi == Beta {
            let cf = closed_form_verdict(g, "beta-vertex-stable").map_err(err)?;
            ensure!(cf == vs, "β-vertex-stable: closed form {cf}, brute force {vs}");
        }
    }
    Ok(())
}
