use bigraded_pd::oracle::brute_diagram;
use bigraded_pd::{sweep, Field, SweepOptions};
use bigraded_pd_bench::{multi_critical_instance, nested_instance, one_critical_instance, M, SIDES};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn sweep_scaling(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep_one_critical");
    for n in SIDES {
        let b = one_critical_instance(M, n, 1);
        group.bench_with_input(BenchmarkId::from_parameter(n), &b, |bench, b| {
            bench.iter(|| sweep(b, &SweepOptions::default()).unwrap())
        });
    }
    group.finish();
}

fn sweep_nested(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep_nested");
    for n in SIDES {
        let b = nested_instance(M, n, 2);
        group.bench_with_input(BenchmarkId::from_parameter(n), &b, |bench, b| {
            bench.iter(|| sweep(b, &SweepOptions::default()).unwrap())
        });
    }
    group.finish();
}

fn sweep_multi_critical(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep_multi_critical");
    for coarse in [8, 16, 32] {
        let b = multi_critical_instance(M, coarse, 3);
        group.bench_with_input(BenchmarkId::new("coarse", coarse), &b, |bench, b| {
            bench.iter(|| sweep(b, &SweepOptions::default()).unwrap())
        });
    }
    group.finish();
}

fn oracle_scaling(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle_one_critical");
    group.sample_size(10);
    for n in [12, 16, 24] {
        let b = one_critical_instance(12, n, 4);
        group.bench_with_input(BenchmarkId::from_parameter(n), &b, |bench, b| {
            bench.iter(|| brute_diagram(b, Field::GF2))
        });
    }
    group.finish();
}

criterion_group!(benches, sweep_scaling, sweep_nested, sweep_multi_critical, oracle_scaling);
criterion_main!(benches);
