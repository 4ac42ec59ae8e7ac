use proptest::prelude::*;
use proptest::sample::subsequence;

use stabgraph::cnf::{or2_combine, random_mixed_cnf, sat_to_stable_cnf, to_exact_3cnf, unsat_padding};
use stabgraph::gadgets::{beta_stabilize_edge, chi_stabilize_edges, two_way_gadget_edge, ConstructionResult};
use stabgraph::reductions::{compare_vc_to_beta_stability, compare_vc_to_beta_unfrozenness, union_double, vstab_to_stab};
use stabgraph::solvers::{graph_number, witness_is_valid};
use stabgraph::verify::{brute_force_number, recheck, Instance};
use stabgraph::{analyze, parse_dimacs, write_dimacs, CnfFormula, ElementRef, Graph, GraphNumber, StabilityReport};

use GraphNumber::{Alpha, Beta, Chi, Omega};

fn arb_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::from_edges(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

/// A graph with at least one edge, plus a nonempty subset of its edges.
fn arb_edge_set(max_n: usize) -> impl Strategy<Value = (Graph, Vec<(usize, usize)>)> {
    arb_graph(2, max_n)
        .prop_filter("needs an edge", |g| g.m() > 0)
        .prop_flat_map(|g| {
            let edges = g.edges();
            let m = edges.len();
            (Just(g), subsequence(edges, 1..=m))
        })
}

fn arb_edge(max_n: usize) -> impl Strategy<Value = (Graph, (usize, usize))> {
    arb_graph(2, max_n)
        .prop_filter("needs an edge", |g| g.m() > 0)
        .prop_flat_map(|g| {
            let edges = g.edges();
            (Just(g), proptest::sample::select(edges))
        })
}

/// Up to 6 clauses of widths 1..=5 over at most 4 variables.
fn arb_cnf() -> impl Strategy<Value = CnfFormula> {
    (1u32..=4, proptest::collection::vec(1usize..=5, 1..=6), any::<u64>()).prop_map(|(n, widths, seed)| {
        use rand::SeedableRng;
        random_mixed_cnf(n, &widths, &mut rand_chacha::ChaCha8Rng::seed_from_u64(seed))
    })
}

fn arb_exact3() -> impl Strategy<Value = CnfFormula> {
    (3u32..=4, 1usize..=5, any::<u64>(), any::<bool>()).prop_map(|(n, m, seed, block)| {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut f = stabgraph::cnf::random_kcnf(n, m, 3, &mut rng).unwrap();
        if block {
            for c in CnfFormula::eight_block(1, 2, 3, n).clauses() {
                f.push_clause(c.clone()).unwrap();
            }
        }
        f
    })
}

fn chi(g: &Graph) -> usize {
    graph_number(g, Chi).unwrap().value
}

fn law_holds(id: &str, instance: Instance) -> Result<(), TestCaseError> {
    recheck(id, &instance)
        .unwrap()
        .map_err(|m| TestCaseError::fail(format!("{id}: {m}")))
}

fn provenance_complete(r: &ConstructionResult) -> bool {
    let g = &r.graph;
    let vertices = (0..g.n()).all(|v| r.element_provenance.contains_key(&ElementRef::Vertex(v)));
    let edges = g.edges().into_iter().all(|(u, v)| r.element_provenance.contains_key(&ElementRef::edge(u, v)));
    vertices && edges && r.element_provenance.len() == g.n() + g.m()
}

fn clauses_valid(f: &CnfFormula) -> bool {
    CnfFormula::new(f.num_vars(), f.clauses().to_vec()).is_ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn union_and_join_values(g in arb_graph(0, 4), h in arb_graph(0, 4)) {
        prop_assert_eq!(chi(&g.disjoint_union(&h)), chi(&g).max(chi(&h)));
        prop_assert_eq!(chi(&g.join(&h)), chi(&g) + chi(&h));
    }

    #[test]
    fn replication_keeps_chi(g in arb_graph(0, 5)) {
        law_holds("lem6", Instance::Graph { graph: g })?;
    }

    #[test]
    fn complement_is_an_involution(g in arb_graph(0, 7)) {
        prop_assert_eq!(g.complement().complement(), g.clone());
        prop_assert_eq!(g.complement().m() + g.m(), g.n() * g.n().saturating_sub(1) / 2);
    }

    #[test]
    fn dimacs_round_trip(g in arb_graph(0, 8)) {
        prop_assert_eq!(parse_dimacs(&write_dimacs(&g)).unwrap(), g.clone());
        let json = serde_json::to_string(&g).unwrap();
        prop_assert_eq!(serde_json::from_str::<Graph>(&json).unwrap(), g);
    }

    #[test]
    fn cover_plus_independent_is_order(g in arb_graph(0, 6)) {
        let a = graph_number(&g, Alpha).unwrap().value;
        let b = graph_number(&g, Beta).unwrap().value;
        prop_assert_eq!(a + b, g.n());
    }

    #[test]
    fn solvers_match_oracle_with_valid_witnesses(g in arb_graph(0, 7)) {
        for xi in [Alpha, Beta, Chi, Omega] {
            let r = graph_number(&g, xi).unwrap();
            prop_assert_eq!(r.value, brute_force_number(&g, xi).unwrap());
            prop_assert!(witness_is_valid(&g, xi, &r));
        }
    }

    #[test]
    fn chi_deletions_drop_by_at_most_one(g in arb_graph(0, 6)) {
        law_holds("obs1", Instance::Graph { graph: g })?;
    }

    #[test]
    fn critical_edges_and_stable_vertices(g in arb_graph(0, 6)) {
        law_holds("obs2", Instance::Graph { graph: g.clone() })?;
        law_holds("obs3", Instance::Graph { graph: g })?;
    }

    #[test]
    fn critical_vertices_have_singleton_colors(g in arb_graph(0, 5)) {
        law_holds("obs4", Instance::Graph { graph: g })?;
    }

    #[test]
    fn complement_identities(g in arb_graph(0, 5)) {
        for id in ["prop1.1", "prop1.2", "prop1.3", "prop1.4", "prop1.5", "prop2.1", "prop2.2"] {
            law_holds(id, Instance::Graph { graph: g.clone() })?;
        }
    }

    #[test]
    fn query_plan_matches_analysis(g in arb_graph(0, 5)) {
        law_holds("plan.queries", Instance::Graph { graph: g })?;
    }

    #[test]
    fn report_json_round_trips_and_is_deterministic(g in arb_graph(0, 5), k in proptest::option::of(0usize..5)) {
        for xi in [Alpha, Beta, Chi, Omega] {
            let r = analyze(&g, xi, k).unwrap();
            let json = r.to_json();
            let back: StabilityReport = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(&back, &r);
            prop_assert_eq!(analyze(&g, xi, k).unwrap().to_json(), json);
        }
    }

    #[test]
    fn exact3_conversion_preserves_stability(f in arb_cnf()) {
        prop_assume!(to_exact_3cnf(&f).formula.num_vars() <= 20);
        law_holds("lem4", Instance::Formula { formula: f })?;
    }

    #[test]
    fn constructions_keep_literals_distinct(f in arb_cnf(), e in arb_exact3(), e2 in arb_exact3()) {
        prop_assert!(clauses_valid(&to_exact_3cnf(&f).formula));
        prop_assert!(clauses_valid(&unsat_padding(&e).unwrap().formula));
        prop_assert!(clauses_valid(&sat_to_stable_cnf(&e).unwrap().formula));
        prop_assert!(clauses_valid(&or2_combine(&e, &e2).formula));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn formula_constructions(e in arb_exact3(), e2 in arb_exact3()) {
        law_holds("thm4.unsat-padding", Instance::Formula { formula: e.clone() })?;
        law_holds("thm4.sat-to-stable", Instance::Formula { formula: e.clone() })?;
        law_holds("thm4.or2", Instance::FormulaPair { first: e, second: e2 })?;
    }

    #[test]
    fn chi_gadget_properties((g, s) in arb_edge_set(5)) {
        let r = chi_stabilize_edges(&g, &s).unwrap();
        prop_assert!(provenance_complete(&r));
        let instance = Instance::Edges { graph: g, edges: s };
        for id in ["lem7.p1", "lem7.p2", "lem7.p3"] {
            law_holds(id, instance.clone())?;
        }
    }

    #[test]
    fn chi_gadget_on_named_graphs(which in 0usize..4, seed in any::<u64>()) {
        let g = [Graph::path(3), Graph::complete(3), Graph::cycle(4), Graph::cycle(5)][which].clone();
        let edges = g.edges();
        let s: Vec<(usize, usize)> = edges.iter().enumerate().filter(|(i, _)| seed >> i & 1 == 1).map(|(_, &e)| e).collect();
        let s = if s.is_empty() { vec![edges[0]] } else { s };
        let instance = Instance::Edges { graph: g, edges: s };
        for id in ["lem7.p1", "lem7.p2", "lem7.p3"] {
            law_holds(id, instance.clone())?;
        }
    }

    #[test]
    fn beta_gadget_properties((g, e) in arb_edge(6)) {
        let r = beta_stabilize_edge(&g, e).unwrap();
        prop_assert!(provenance_complete(&r));
        prop_assert_eq!(r.value_shift, Some(2));
        let instance = Instance::Edges { graph: g, edges: vec![e] };
        for id in ["lem9.shift", "lem9.gadget-edges", "lem9.other-edges"] {
            law_holds(id, instance.clone())?;
        }
    }

    #[test]
    fn two_way_gadget_properties((g, e) in arb_edge(5)) {
        let r = two_way_gadget_edge(&g, e).unwrap();
        prop_assert!(provenance_complete(&r));
        prop_assert_eq!(r.value_shift, Some(6));
        let instance = Instance::Edges { graph: g, edges: vec![e] };
        for id in ["lem13.p1", "lem13.p2", "lem13.p3", "lem13.p4", "lem13.p5"] {
            law_holds(id, instance.clone())?;
        }
    }

    #[test]
    fn pipeline_provenance_is_complete(g in arb_graph(0, 3), h in arb_graph(0, 3)) {
        prop_assert!(provenance_complete(&vstab_to_stab(&g)));
        prop_assert!(provenance_complete(&union_double(&g)));
        prop_assert!(provenance_complete(&compare_vc_to_beta_unfrozenness(&g, &h)));
        prop_assert!(provenance_complete(&compare_vc_to_beta_stability(&g, &h)));
    }

    #[test]
    fn beta_comparison_pipelines(g in arb_graph(0, 3), h in arb_graph(0, 3)) {
        law_holds("thm9.end2end", Instance::Pair { g: g.clone(), h: h.clone() })?;
        law_holds("thm11.end2end", Instance::Pair { g, h })?;
    }

    #[test]
    fn two_way_pipelines(g in arb_graph(0, 4)) {
        law_holds("thm14.end2end", Instance::Graph { graph: g.clone() })?;
        law_holds("thm15.end2end", Instance::Graph { graph: g })?;
    }
}
