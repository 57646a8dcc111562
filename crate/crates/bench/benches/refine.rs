use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use setwl_bench::random_graph;
use setwl_core::{build_supergraph, cfi_pair, distinguish, run_joint, Prepared, Schedule};

const SHAPES: [(usize, usize, usize); 5] =
    [(30, 2, 1), (30, 2, 2), (20, 3, 1), (20, 3, 2), (16, 4, 2)];

fn supergraph(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_supergraph");
    for (n, k, comps) in SHAPES {
        let g = random_graph(n, 0.2, 1);
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("n{n}_k{k}_c{comps}")),
            &g,
            |b, g| b.iter(|| build_supergraph(black_box(g), k, comps).unwrap()),
        );
    }
    group.finish();
}

fn refinement(c: &mut Criterion) {
    let mut group = c.benchmark_group("refine_to_stable");
    group.sample_size(20);
    for (n, k, comps) in SHAPES {
        let g = random_graph(n, 0.2, 1);
        let prepared = Prepared::new(&g, k, comps).unwrap();
        for schedule in [Schedule::Parallel, Schedule::Sequential] {
            let id = BenchmarkId::new(schedule.to_string(), format!("n{n}_k{k}_c{comps}"));
            group.bench_with_input(id, &prepared, |b, p| {
                b.iter(|| run_joint(&[black_box(p)], schedule, None).unwrap())
            });
        }
    }
    group.finish();
}

fn cfi(c: &mut Criterion) {
    let (a, b) = cfi_pair(4).unwrap();
    let mut group = c.benchmark_group("cfi");
    group.sample_size(10);
    group.bench_function("distinguish_k4_c3", |bench| {
        bench.iter(|| distinguish(&a.graph, &b.graph, 4, 3, Schedule::Sequential).unwrap())
    });
    group.finish();
}

criterion_group!(benches, supergraph, refinement, cfi);
criterion_main!(benches);
