use stabgraph::gadgets::{
    beta_stabilize_edge, beta_stabilize_edges, chi_stabilize_edges, join_and, stabilized_join_and, two_way_gadget_edge,
    AndFlavor,
};
use stabgraph::stability::{is_stable, is_unfrozen, is_vertex_stable};
use stabgraph::verify::brute_force_number;
use stabgraph::{analyze, ElementRef, Graph, GraphNumber, Origin};

const BETA: GraphNumber = GraphNumber::Beta;
const CHI: GraphNumber = GraphNumber::Chi;

fn bf(g: &Graph, xi: GraphNumber) -> usize {
    brute_force_number(g, xi).unwrap()
}

fn bf_edge_stable(g: &Graph, e: (usize, usize), xi: GraphNumber) -> bool {
    bf(&g.delete_edge(e.0, e.1).unwrap(), xi) == bf(g, xi)
}

fn bf_nonedge_unfrozen(g: &Graph, e: (usize, usize), xi: GraphNumber) -> bool {
    bf(&g.add_edge(e.0, e.1).unwrap(), xi) == bf(g, xi)
}

fn k33() -> Graph {
    Graph::complete(3).disjoint_union(&Graph::complete(3))
}

#[test]
fn chi_stabilization_of_p3() {
    let p3 = Graph::path(3);
    let r = chi_stabilize_edges(&p3, &[(0, 1)]).unwrap();
    assert_eq!(r.graph.n(), 3 + 4 + (3 + 1) * 2);
    assert_eq!(bf(&r.graph, CHI), 4);
    assert_eq!(bf(&r.graph, CHI) as i64 - bf(&p3, CHI) as i64, r.value_shift.unwrap());
    assert!(bf_edge_stable(&p3, (1, 2), CHI));
    assert!(bf_edge_stable(&r.graph, (1, 2), CHI));
}

#[test]
fn chi_stabilization_of_triangle() {
    let k3 = Graph::complete(3);
    let r = chi_stabilize_edges(&k3, &k3.edges()).unwrap();
    assert!(r.elements_with(Origin::Original).iter().all(|e| e.kind() == stabgraph::ElementKind::Vertex));
    let report = analyze(&r.graph, CHI, None).unwrap();
    assert_eq!(report.value, 5);
    assert_eq!(report.verdicts.stable, Some(true));
}

#[test]
fn beta_gadget_examples() {
    let r = beta_stabilize_edge(&Graph::complete(2), (0, 1)).unwrap();
    assert_eq!(r.graph.n(), 6);
    assert_eq!(bf(&r.graph, BETA), 3);
    assert_eq!(r.graph.m(), 8);
    assert!(r.graph.edges().into_iter().all(|e| bf_edge_stable(&r.graph, e, BETA)));

    let k3 = Graph::complete(3);
    let r = beta_stabilize_edge(&k3, (0, 1)).unwrap();
    assert_eq!(r.graph.n(), 7);
    for e in [(0, 2), (1, 2)] {
        assert!(!bf_edge_stable(&k3, e, BETA));
        assert!(!bf_edge_stable(&r.graph, e, BETA));
    }

    let r = beta_stabilize_edges(&k3, &k3.edges()).unwrap();
    assert_eq!(bf(&r.graph, BETA), 8);
    assert!(r.graph.edges().into_iter().all(|e| bf_edge_stable(&r.graph, e, BETA)));
}

#[test]
fn two_way_gadget_examples() {
    let k2 = Graph::complete(2);
    let r = two_way_gadget_edge(&k2, (0, 1)).unwrap();
    assert_eq!(r.graph.n(), 10);
    assert_eq!(bf(&r.graph, BETA), 7);
    assert!(r.graph.edges().into_iter().all(|e| bf_edge_stable(&r.graph, e, BETA)));
    assert!(r.graph.nonedges().into_iter().all(|e| bf_nonedge_unfrozen(&r.graph, e, BETA)));

    let p3 = Graph::path(3);
    let r = two_way_gadget_edge(&p3, (0, 1)).unwrap();
    assert_eq!(bf_edge_stable(&r.graph, (1, 2), BETA), bf_edge_stable(&p3, (1, 2), BETA));
    assert_eq!(r.provenance_of(ElementRef::edge(1, 2)).unwrap().origin, Origin::Original);
}

#[test]
fn join_examples() {
    let c5 = Graph::cycle(5);
    let r = join_and(&[c5.clone(), c5.clone()], AndFlavor::Unfrozenness).unwrap();
    assert!(is_unfrozen(&c5, CHI).unwrap());
    assert!(is_unfrozen(&r.graph, CHI).unwrap());
    assert_eq!(analyze(&r.graph, CHI, None).unwrap().value, 6);

    for other in [Graph::complete(1), c5.clone(), k33()] {
        let r = join_and(&[Graph::path(3), other], AndFlavor::VertexStability).unwrap();
        assert!(!is_vertex_stable(&r.graph, CHI).unwrap());
    }

    // A single input comes back unchanged, with the same verdicts.
    let k1 = Graph::complete(1);
    for flavor in [AndFlavor::VertexStability, AndFlavor::Unfrozenness] {
        let r = join_and(std::slice::from_ref(&k1), flavor).unwrap();
        assert!(r.graph.same_structure(&k1));
    }
    assert!(!is_vertex_stable(&k1, CHI).unwrap());
    assert!(is_unfrozen(&k1, CHI).unwrap());
}

#[test]
fn stabilized_join_examples() {
    let plain = join_and(&[k33(), k33()], AndFlavor::VertexStability).unwrap();
    let r = stabilized_join_and(&[k33(), k33()]).unwrap();
    assert!(is_stable(&r.graph, CHI).unwrap());
    let shift = analyze(&r.graph, CHI, None).unwrap().value as i64 - analyze(&plain.graph, CHI, None).unwrap().value as i64;
    assert_eq!(Some(shift), r.value_shift);

    let r = stabilized_join_and(&[Graph::cycle(5), k33()]).unwrap();
    assert!(!is_stable(&r.graph, CHI).unwrap());
}
