use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use stabgraph::reductions::compare_vc_to_beta_stability;
use stabgraph::solvers::graph_number;
use stabgraph::verify::generate::random_graph;
use stabgraph::{analyze, GraphNumber};

fn solvers(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    for n in [12, 18, 24] {
        let g = random_graph(n, 0.5, 7);
        for xi in [GraphNumber::Chi, GraphNumber::Beta, GraphNumber::Omega] {
            group.bench_with_input(BenchmarkId::new(xi.to_string(), n), &g, |b, g| {
                b.iter(|| graph_number(black_box(g), xi).unwrap().value)
            });
        }
    }
    group.finish();
}

fn analysis(c: &mut Criterion) {
    let mut group = c.benchmark_group("analyze");
    group.sample_size(20);
    for n in [8, 11] {
        let g = random_graph(n, 0.5, 11);
        for xi in [GraphNumber::Chi, GraphNumber::Beta] {
            group.bench_with_input(BenchmarkId::new(xi.to_string(), n), &g, |b, g| {
                b.iter(|| analyze(black_box(g), xi, None).unwrap().verdicts)
            });
        }
    }
    group.finish();
}

fn beta_comparison(c: &mut Criterion) {
    let g = random_graph(4, 0.5, 3);
    let h = random_graph(4, 0.5, 5);
    let mut group = c.benchmark_group("beta-comparison");
    group.sample_size(10);
    group.bench_function("build", |b| b.iter(|| compare_vc_to_beta_stability(black_box(&g), black_box(&h)).graph.n()));
    let s = compare_vc_to_beta_stability(&g, &h).graph;
    group.bench_function("solve-beta", |b| b.iter(|| graph_number(black_box(&s), GraphNumber::Beta).unwrap().value));
    group.finish();
}

criterion_group!(benches, solvers, analysis, beta_comparison);
criterion_main!(benches);
