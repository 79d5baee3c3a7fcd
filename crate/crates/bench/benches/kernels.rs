use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use critline_core::{log_gamma, theta, z_rs, zeta_em};
use num_complex::Complex64;

fn special_functions(c: &mut Criterion) {
    c.bench_function("log_gamma(1/4 + 500i)", |b| {
        b.iter(|| log_gamma(black_box(Complex64::new(0.25, 500.0))))
    });
    c.bench_function("theta(1e4)", |b| b.iter(|| theta(black_box(1e4))));
}

fn zeta_paths(c: &mut Criterion) {
    let mut group = c.benchmark_group("critical_line");
    for t in [1e3, 1e4, 1e5] {
        group.bench_with_input(BenchmarkId::new("z_rs", t), &t, |b, &t| {
            b.iter(|| z_rs(black_box(t)))
        });
    }
    for t in [1e2, 1e3, 1e4] {
        group.bench_with_input(BenchmarkId::new("zeta_em", t), &t, |b, &t| {
            b.iter(|| zeta_em(black_box(Complex64::new(0.5, t)), 1e-10))
        });
    }
    group.finish();
}

criterion_group!(benches, special_functions, zeta_paths);
criterion_main!(benches);
