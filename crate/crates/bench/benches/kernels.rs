use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nqueens_core::{
    count_solutions, find_criterion_permutation, min_width, solve, validate, Arrangement,
    TorusPruning, WidthScanner,
};
use std::hint::black_box;

fn construct(c: &mut Criterion) {
    let mut g = c.benchmark_group("solve");
    for n in [1_000usize, 100_000, 1_000_000] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| solve(black_box(n)).unwrap())
        });
    }
    g.finish();

    let a = solve(1_000_000).unwrap();
    c.bench_function("validate/1000000", |b| {
        b.iter(|| validate(a.n(), black_box(a.perm())).unwrap())
    });
}

fn enumerate(c: &mut Criterion) {
    let mut g = c.benchmark_group("count_solutions");
    g.sample_size(10);
    for n in [8usize, 10, 12] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| count_solutions(black_box(n), 1).unwrap())
        });
    }
    g.finish();
}

fn width(c: &mut Criterion) {
    let sols: Vec<Arrangement> = nqueens_core::all_solutions(10).unwrap();
    c.bench_function("min_width/all_n10", |b| {
        b.iter(|| sols.iter().map(|s| min_width(s).0).sum::<usize>())
    });
    let mut scanner = WidthScanner::new(10);
    c.bench_function("width_scanner/all_n10", |b| {
        b.iter(|| sols.iter().map(|s| scanner.width(s.perm())).sum::<usize>())
    });
}

fn torus(c: &mut Criterion) {
    let mut g = c.benchmark_group("torus_search");
    g.sample_size(10);
    for (n, pruning) in [
        (16, TorusPruning::Plain),
        (16, TorusPruning::ResidueSums),
        (31, TorusPruning::ResidueSums),
    ] {
        g.bench_function(format!("{pruning:?}/{n}"), |b| {
            b.iter(|| find_criterion_permutation(black_box(n), pruning).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, construct, enumerate, width, torus);
criterion_main!(benches);
