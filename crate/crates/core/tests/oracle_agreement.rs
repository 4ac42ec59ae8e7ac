use stabgraph::solvers::{graph_number, witness_is_valid, GraphNumber};
use stabgraph::verify::{brute_force_number, enumerate_graphs_up_to, random_graph};

#[test]
fn solvers_match_brute_force_on_all_small_graphs() {
    for g in enumerate_graphs_up_to(5).unwrap() {
        for xi in GraphNumber::ALL {
            let r = graph_number(&g, xi).unwrap();
            assert!(witness_is_valid(&g, xi, &r), "{xi} witness on {g:?}");
            assert_eq!(r.value, brute_force_number(&g, xi).unwrap(), "{xi} on {g:?}");
        }
    }
}

#[test]
fn solvers_match_brute_force_on_random_graphs() {
    for seed in 0..400u64 {
        let n = 6 + (seed % 3) as usize;
        let p = [0.2, 0.5, 0.8][(seed / 3 % 3) as usize];
        let g = random_graph(n, p, seed);
        for xi in GraphNumber::ALL {
            let r = graph_number(&g, xi).unwrap();
            assert!(witness_is_valid(&g, xi, &r));
            assert_eq!(r.value, brute_force_number(&g, xi).unwrap(), "{xi} on {g:?}");
        }
    }
}
