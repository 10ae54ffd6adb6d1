use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use graham_core::graham::{compute_g, Analysis};
use graham_core::parallel::{map_range, map_range_sequential};
use graham_core::SpfSieve;

const LIMITS: [u64; 2] = [500, 2000];

fn g_scan(c: &mut Criterion) {
    let sieve = SpfSieve::for_range(*LIMITS.iter().max().unwrap()).unwrap();
    let mut group = c.benchmark_group("g_scan");
    group.sample_size(10);
    for limit in LIMITS {
        group.bench_with_input(BenchmarkId::new("sequential", limit), &limit, |b, &limit| {
            b.iter(|| map_range_sequential(1..=limit, |n| compute_g(black_box(n), &sieve).unwrap().g))
        });
        group.bench_with_input(BenchmarkId::new("map_range", limit), &limit, |b, &limit| {
            b.iter(|| map_range(1..=limit, |n| compute_g(black_box(n), &sieve).unwrap().g))
        });
    }
    group.finish();
}

fn t_scan(c: &mut Criterion) {
    let sieve = SpfSieve::for_range(*LIMITS.iter().max().unwrap()).unwrap();
    let mut group = c.benchmark_group("t_scan");
    group.sample_size(10);
    for limit in LIMITS {
        group.bench_with_input(BenchmarkId::new("sequential", limit), &limit, |b, &limit| {
            b.iter(|| map_range_sequential(1..=limit, |n| Analysis::compute(black_box(n), &sieve).unwrap().t))
        });
        group.bench_with_input(BenchmarkId::new("map_range", limit), &limit, |b, &limit| {
            b.iter(|| map_range(1..=limit, |n| Analysis::compute(black_box(n), &sieve).unwrap().t))
        });
    }
    group.finish();
}

criterion_group!(benches, g_scan, t_scan);
criterion_main!(benches);
