use criterion::{black_box, criterion_group, criterion_main, Criterion};
use critline_core::{count_zeros, enumerate_crossings, gram_sums, LineAngle, MomentEngine};

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweeps");
    group.sample_size(10);
    let quarter = LineAngle::new(std::f64::consts::FRAC_PI_4).unwrap();
    group.bench_function("enumerate_crossings T=1e4", |b| {
        b.iter(|| enumerate_crossings(black_box(quarter), 1e4))
    });
    group.bench_function("count_zeros T=1e4", |b| {
        b.iter(|| count_zeros(black_box(1e4)))
    });
    group.bench_function("gram_sums N=1e4", |b| {
        b.iter(|| gram_sums(black_box(10_000)))
    });
    group.bench_function("moment report T=1e4", |b| {
        b.iter(|| {
            MomentEngine::new(1e4)
                .unwrap()
                .report(black_box(LineAngle::REAL))
        })
    });
    group.finish();
}

criterion_group!(benches, sweeps);
criterion_main!(benches);
