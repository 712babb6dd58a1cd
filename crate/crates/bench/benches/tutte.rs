use criterion::{criterion_group, criterion_main, Criterion};
use parklc_bench::dense_graphs;
use parklc_core::{tutte_delcon, MultiGraph, RankOracleMatroid};

fn delcon(c: &mut Criterion) {
    let mut group = c.benchmark_group("tutte_delcon");
    group.sample_size(10);
    for (name, g) in dense_graphs() {
        group.bench_function(name, |b| b.iter(|| tutte_delcon(&g)));
    }
    group.finish();
}

fn rank_sum(c: &mut Criterion) {
    let mut group = c.benchmark_group("tutte_by_rank_sum");
    group.sample_size(10);
    for n in [5, 6] {
        let m = RankOracleMatroid::graphic(MultiGraph::complete_graph(n).unwrap());
        group.bench_function(format!("K{n}"), |b| b.iter(|| m.tutte_by_rank_sum().unwrap()));
    }
    group.finish();
}

fn canonical(c: &mut Criterion) {
    let k8 = MultiGraph::complete_graph(8).unwrap();
    c.bench_function("canonical_key/K8", |b| b.iter(|| k8.canonical_key().unwrap()));
}

criterion_group!(benches, delcon, rank_sum, canonical);
criterion_main!(benches);
