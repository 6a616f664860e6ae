use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use hepta_core::asymptotic::{asymptotic_spectrum, NearOptions};
use hepta_core::oracle::{bisect_spectrum, chebyshev_det};
use hepta_core::solver::{full_spectrum, SolverOptions};

fn fixed_point(c: &mut Criterion) {
    let mut group = c.benchmark_group("full_spectrum");
    for n in [1_000usize, 10_000] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| full_spectrum(black_box(n), &SolverOptions::default()).unwrap())
        });
    }
    group.finish();
}

fn asymptotic(c: &mut Criterion) {
    c.bench_function("asymptotic_spectrum/10000", |b| {
        b.iter(|| asymptotic_spectrum(black_box(10_000), &NearOptions::default()).unwrap())
    });
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("bisect_spectrum");
    group.sample_size(10);
    group.bench_function("128", |b| b.iter(|| bisect_spectrum(black_box(128), 0.0).unwrap()));
    group.finish();
}

fn determinant(c: &mut Criterion) {
    c.bench_function("chebyshev_det/1000", |b| b.iter(|| chebyshev_det(black_box(1000), black_box(0.7)).unwrap()));
}

criterion_group!(benches, fixed_point, asymptotic, oracle, determinant);
criterion_main!(benches);
