use stabgraph::cnf::{count_models, random_3cnf};
use stabgraph::gadgets::beta_stabilize_edges;
use stabgraph::reductions::*;
use stabgraph::solvers::{chromatic_number, vertex_cover_number};
use stabgraph::stability::{is_stable, is_two_way_stable, is_unfrozen, is_vertex_stable};
use stabgraph::verify::brute_force_number;
use stabgraph::{CnfFormula, Graph, GraphNumber, Origin};

const BETA: GraphNumber = GraphNumber::Beta;
const CHI: GraphNumber = GraphNumber::Chi;

fn chi(g: &Graph) -> usize {
    chromatic_number(g).unwrap().value
}

fn beta(g: &Graph) -> usize {
    vertex_cover_number(g).unwrap().value
}

fn k33() -> Graph {
    Graph::complete(3).disjoint_union(&Graph::complete(3))
}

fn one_clause() -> CnfFormula {
    CnfFormula::new(3, vec![vec![1, 2, 3]]).unwrap()
}

fn block() -> CnfFormula {
    CnfFormula::eight_block(1, 2, 3, 3)
}

/// Stable in the formula sense, by enumerating assignments.
fn bf_formula_stable(f: &CnfFormula) -> bool {
    count_models(f) > 0 || (0..f.num_clauses()).all(|i| count_models(&f.without_clause(i)) == 0)
}

#[test]
fn cai_meyer_examples() {
    assert_eq!(chi(&cai_meyer_graph(&one_clause()).unwrap().graph), 3);
    let cm = cai_meyer_graph(&block()).unwrap();
    assert_eq!(cm.graph.n(), 80);
    assert_eq!(chi(&cm.graph), 4);
    for &t in &cm.t_vertices {
        assert_eq!(chi(&cm.graph.delete_vertex(t).unwrap()), 3);
    }
}

#[test]
fn cai_meyer_clause_deletion() {
    // G_Φ − t_{i1} is 3-colorable iff Φ − C_i is satisfiable.
    for seed in 0..12 {
        let f = random_3cnf(3, 5, seed).unwrap();
        let cm = cai_meyer_graph(&f).unwrap();
        assert_eq!(chi(&cm.graph) == 3, count_models(&f) > 0, "seed {seed}");
        for (i, &t) in cm.t_vertices.iter().enumerate() {
            let sat = count_models(&f.without_clause(i)) > 0;
            assert_eq!(chi(&cm.graph.delete_vertex(t).unwrap()) == 3, sat, "seed {seed} clause {i}");
        }
    }
}

#[test]
fn replication_examples() {
    let r = stable3cnf_to_vertex_stability(&one_clause()).unwrap();
    assert_eq!(r.graph.n(), 2 * 17 - 1);
    assert!(is_vertex_stable(&r.graph, CHI).unwrap());
    let r = stable3cnf_to_vertex_stability(&block()).unwrap();
    assert!(!bf_formula_stable(&block()));
    assert!(!is_vertex_stable(&r.graph, CHI).unwrap());
}

#[test]
fn self_join_examples() {
    let p3 = Graph::path(3);
    assert!(!is_vertex_stable(&p3, CHI).unwrap());
    assert!(!is_stable(&vstab_to_stab(&p3).graph, CHI).unwrap());
    assert!(is_stable(&vstab_to_stab(&k33()).graph, CHI).unwrap());
    assert!(vstab_to_stab(&Graph::null()).graph.is_null());
}

#[test]
fn self_union_examples() {
    let c5 = union_double(&Graph::cycle(5)).graph;
    assert_eq!(brute_force_number(&c5, CHI).unwrap(), 3);
    assert!(is_stable(&c5, CHI).unwrap() && is_two_way_stable(&c5, CHI).unwrap());
    let p3 = union_double(&Graph::path(3)).graph;
    assert!(is_stable(&p3, CHI).unwrap() && !is_two_way_stable(&p3, CHI).unwrap());
    let k0 = union_double(&Graph::null()).graph;
    assert!(k0.is_null() && is_two_way_stable(&k0, CHI).unwrap());

    // K1 is unfrozen but K1 ∪ K1 is not, hence the canonical instance.
    let k1 = Graph::complete(1);
    assert!(is_unfrozen(&k1, CHI).unwrap());
    assert!(!is_two_way_stable(&union_double(&k1).graph, CHI).unwrap());
    assert!(is_two_way_stable(&unfrozen_to_two_way(&k1).graph, CHI).unwrap());
}

#[test]
fn beta_stability_comparison_examples() {
    let (k2, i2) = (Graph::complete(2), Graph::empty(2));
    let s = compare_vc_to_beta_stability(&k2, &i2).graph;
    assert!(is_stable(&s, BETA).unwrap());
    let s = compare_vc_to_beta_stability(&i2, &k2).graph;
    assert!(!is_stable(&s, BETA).unwrap());

    let g1 = beta_stabilize_edges(&k2, &k2.edges()).unwrap().graph;
    assert_eq!(g1.n(), 2 + 4);
    let k3 = Graph::complete(3);
    let sides = beta_comparison_sides(&k2, &k3);
    assert_eq!(sides.stable.graph.n(), 3 + 4 * 3);
    assert_eq!(beta(&sides.stable.graph), beta(&k3) + 2 * 3);
    assert_eq!(beta(&sides.critical.graph), beta(&k2) + 2 * 3);
}

#[test]
fn beta_unfrozenness_comparison_examples() {
    let j = compare_vc_to_beta_unfrozenness(&Graph::complete(2), &Graph::empty(1));
    assert_eq!(j.graph.n(), 12);
    assert_eq!(brute_force_number(&j.graph, BETA).unwrap(), 9);
    assert!(!is_unfrozen(&j.graph, BETA).unwrap());
    let j = compare_vc_to_beta_unfrozenness(&Graph::empty(2), &Graph::complete(2));
    assert!(is_unfrozen(&j.graph, BETA).unwrap());

    // H′ for H = I_1 and g + h = 3 is K4 ∪ I_g.
    let h1 = Graph::empty(1).join(&Graph::complete(3)).disjoint_union(&Graph::empty(2));
    assert_eq!(brute_force_number(&h1, BETA).unwrap(), 3);

    // g ≤ 1 takes the canonical yes-instance.
    let j = compare_vc_to_beta_unfrozenness(&Graph::complete(1), &Graph::null());
    assert!(is_unfrozen(&j.graph, BETA).unwrap());
}

#[test]
fn beta_two_way_examples() {
    let i3 = Graph::empty(3);
    let out = beta_unfrozen_to_beta_twoway(&i3);
    assert!(out.graph.same_structure(&i3));
    // Adding any edge to I_3 raises β, so neither I_3 nor the output is two-way.
    assert!(!is_unfrozen(&i3, BETA).unwrap());
    assert!(!is_two_way_stable(&out.graph, BETA).unwrap());
    let out = beta_unfrozen_to_beta_twoway(&Graph::empty(2));
    assert!(!is_two_way_stable(&out.graph, BETA).unwrap());
    let out = beta_unfrozen_to_beta_twoway(&Graph::path(3));
    assert!(!is_two_way_stable(&out.graph, BETA).unwrap());
    let out = beta_unfrozen_to_beta_twoway(&Graph::complete(3));
    assert!(is_two_way_stable(&out.graph, BETA).unwrap());
    assert_eq!(out.elements_with(Origin::Original).len(), 3 + 3);
}

#[test]
fn gjs_examples() {
    assert_eq!(chi(&gjs_3col(&one_clause()).unwrap().graph), 3);
    assert_eq!(chi(&gjs_3col(&block()).unwrap().graph), 4);
    for seed in 0..10 {
        let f = random_3cnf(3, 4, seed).unwrap();
        let g = gjs_3col(&f).unwrap().graph;
        assert_eq!(chi(&g), if count_models(&f) > 0 { 3 } else { 4 }, "seed {seed}");
    }
}

#[test]
fn colorability_comparison_examples() {
    let (sat, unsat) = (one_clause(), block());
    let (g, h) = compare_colorability_instance(std::slice::from_ref(&sat), std::slice::from_ref(&unsat)).unwrap();
    // One satisfiable Φ against no satisfiable Ψ: the comparison must fail.
    assert!(chi(&g) > chi(&h));
    let (g, h) = compare_colorability_instance(std::slice::from_ref(&unsat), std::slice::from_ref(&unsat)).unwrap();
    assert_eq!(chi(&g), chi(&h));
    let phis = [sat.clone(), unsat.clone()];
    let psis = [sat.clone(), sat.clone()];
    let (g, h) = compare_colorability_instance(&phis, &psis).unwrap();
    assert_eq!(chi(&g), 6);
    assert_eq!(chi(&h), 7);
    assert!(chi(&g) <= chi(&h));
}

#[test]
fn conditional_unfrozenness_examples() {
    let u = Unfreezer::exact_clique();
    let r = conditional_unfrozenness_reduction(&Graph::complete(3), &Graph::cycle(5), &u).unwrap();
    assert!(is_unfrozen(&r.graph, CHI).unwrap());
    let r = conditional_unfrozenness_reduction(&Graph::complete(4), &Graph::path(3), &u).unwrap();
    assert!(!is_unfrozen(&r.graph, CHI).unwrap());

    // G′ = G + I_2 always has the frozen nonedge inside I_2.
    let g1 = Graph::complete(3).join(&Graph::empty(2));
    assert!(!is_unfrozen(&g1, CHI).unwrap());
}
