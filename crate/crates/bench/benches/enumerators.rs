use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use parklc_core::{connected_edge_enumerator, inversion_enumerator, pf_sum_enumerator};

fn parking(c: &mut Criterion) {
    let mut group = c.benchmark_group("pf_sum_enumerator");
    group.sample_size(10);
    for n in [5, 6, 7] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| pf_sum_enumerator(n).unwrap())
        });
    }
    group.finish();
}

fn trees(c: &mut Criterion) {
    let mut group = c.benchmark_group("inversion_enumerator");
    group.sample_size(10);
    for n in [6, 7, 8] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| inversion_enumerator(n).unwrap())
        });
    }
    group.finish();
}

fn connected(c: &mut Criterion) {
    let mut group = c.benchmark_group("connected_edge_enumerator");
    group.sample_size(10);
    for n in [5, 6] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| connected_edge_enumerator(n).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, parking, trees, connected);
criterion_main!(benches);
