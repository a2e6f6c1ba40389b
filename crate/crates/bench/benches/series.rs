use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use spread_core::series::{solve_lambda_series, solve_lambda_series_lagrange};
use spread_core::SeriesFamily;

fn derivations(c: &mut Criterion) {
    let mut group = c.benchmark_group("series");
    for order in [4, 6, 8] {
        let a = SeriesFamily::PlanarSecond.a_list(order).unwrap();
        group.bench_with_input(BenchmarkId::new("order_matching", order), &a, |b, a| {
            b.iter(|| solve_lambda_series(black_box(a), order).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("lagrange", order), &a, |b, a| {
            b.iter(|| solve_lambda_series_lagrange(black_box(a), order).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, derivations);
criterion_main!(benches);
