use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nullcert::encoders::{encode_independent_set, encode_k_colorable_subgraph};
use nullcert::graphs::Graph;
use nullcert::linsolve::solve_particular;
use nullcert::nulla::{build_linear_system, nulla_solve};
use nullcert_bench::{dimension_csv, matching_system};

fn matching_degree_zero(c: &mut Criterion) {
    let sizes = [4, 6, 8, 10, 12, 16];
    let csv = dimension_csv(sizes);
    let out = std::env::var("NULLCERT_BENCH_CSV").unwrap_or_else(|_| {
        concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/../../target/matching_dimensions.csv"
        )
        .into()
    });
    if let Err(e) = std::fs::write(&out, &csv) {
        eprintln!("could not write {out}: {e}");
    }
    print!("{csv}");

    let mut group = c.benchmark_group("matching_v1_degree0");
    for n in sizes {
        let s = matching_system(n);
        group.bench_with_input(BenchmarkId::from_parameter(s.graph.n()), &s, |b, s| {
            b.iter(|| nulla_solve(black_box(s), 0).unwrap())
        });
    }
    group.finish();
}

fn certificate_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("certificate_search");
    group.sample_size(10);
    let odd = encode_independent_set(&Graph::cycle(5), 3);
    group.bench_function("independent_set_c5", |b| {
        b.iter(|| nulla_solve(black_box(&odd), 3).unwrap())
    });
    let k4 = encode_k_colorable_subgraph(&Graph::complete(4), 2, 5).unwrap();
    group.bench_function("two_colorable_k4", |b| {
        b.iter(|| nulla_solve(black_box(&k4), 5).unwrap())
    });
    group.finish();
}

fn elimination(c: &mut Criterion) {
    let mut group = c.benchmark_group("elimination");
    group.sample_size(10);
    for d in [2, 3, 4] {
        let ls = build_linear_system(&encode_independent_set(&Graph::cycle(7), 4), d);
        group.bench_with_input(
            BenchmarkId::new("independent_set_c7", d),
            &ls.matrix,
            |b, m| b.iter(|| solve_particular(black_box(m))),
        );
    }
    group.finish();
}

criterion_group!(
    benches,
    matching_degree_zero,
    certificate_search,
    elimination
);
criterion_main!(benches);
