use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use opmeans_core::verify::{random_spd, random_weights};
use opmeans_core::{
    eigh, geo_mean2, karcher_mean, lawson_lim_geometric, power_mean, ScalarBounds, SpdMatrix, ToleranceConfig,
    WeightVector,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn operands(dim: usize, n: usize) -> (Vec<SpdMatrix>, WeightVector) {
    let mut rng = ChaCha8Rng::seed_from_u64(dim as u64 * 31 + n as u64);
    let bounds = ScalarBounds::new(0.5, 4.0).unwrap();
    let ops = (0..n).map(|_| random_spd(dim, bounds, &mut rng).unwrap()).collect();
    (ops, random_weights(n, &mut rng).unwrap())
}

fn bench_eigh(c: &mut Criterion) {
    let mut group = c.benchmark_group("eigh");
    for dim in [2, 6, 16] {
        let (ops, _) = operands(dim, 2);
        group.bench_with_input(BenchmarkId::from_parameter(dim), &ops[0], |b, a| b.iter(|| eigh(black_box(a)).unwrap()));
    }
    group.finish();
}

fn bench_geo_mean2(c: &mut Criterion) {
    let mut group = c.benchmark_group("geo_mean2");
    for dim in [2, 6, 16] {
        let (ops, _) = operands(dim, 2);
        group.bench_with_input(BenchmarkId::from_parameter(dim), &ops, |b, ops| {
            b.iter(|| geo_mean2(black_box(&ops[0]), black_box(&ops[1]), 0.3).unwrap())
        });
    }
    group.finish();
}

fn bench_power_mean(c: &mut Criterion) {
    let tol = ToleranceConfig::default();
    let mut group = c.benchmark_group("power_mean");
    for t in [0.5, 0.05, -0.5] {
        let (ops, w) = operands(6, 4);
        group.bench_with_input(BenchmarkId::new("d6_n4", t), &t, |b, &t| {
            b.iter(|| power_mean(&w, black_box(&ops), t, &tol).unwrap())
        });
    }
    group.finish();
}

fn bench_karcher(c: &mut Criterion) {
    let tol = ToleranceConfig::default();
    let mut group = c.benchmark_group("karcher_mean");
    for (dim, n) in [(2, 2), (6, 4), (16, 6)] {
        let (ops, w) = operands(dim, n);
        group.bench_with_input(BenchmarkId::new(format!("d{dim}"), n), &ops, |b, ops| {
            b.iter(|| karcher_mean(&w, black_box(ops), &tol).unwrap())
        });
    }
    group.finish();
}

fn bench_lawson_lim(c: &mut Criterion) {
    let tol = ToleranceConfig::default();
    let mut group = c.benchmark_group("lawson_lim_geometric");
    group.sample_size(10);
    for (dim, n) in [(3, 3), (6, 3), (3, 4)] {
        let (ops, _) = operands(dim, n);
        group.bench_with_input(BenchmarkId::new(format!("d{dim}"), n), &ops, |b, ops| {
            b.iter(|| lawson_lim_geometric(black_box(ops), 0.5, &tol).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_eigh, bench_geo_mean2, bench_power_mean, bench_karcher, bench_lawson_lim);
criterion_main!(benches);
