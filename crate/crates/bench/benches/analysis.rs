use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lcnf_core::{
    classify_all, minimal_hitting_sets, random_lcnf, samples, Analyzer, BruteForceConfig,
    OracleConfig, Profile, SetFamily,
};

fn profile(labels: u32) -> Profile {
    Profile {
        num_vars: 8,
        num_clauses: 20,
        num_labels: labels,
        ..Profile::default()
    }
}

fn bench_classify(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify_all");
    group.bench_function("running_example", |b| {
        let phi = samples::running_example();
        b.iter(|| classify_all(black_box(&phi), &BruteForceConfig::default()).unwrap())
    });
    for labels in [4, 6] {
        let phi = random_lcnf(7, &profile(labels)).formula;
        group.bench_with_input(BenchmarkId::new("random", labels), &phi, |b, phi| {
            b.iter(|| classify_all(black_box(phi), &BruteForceConfig::default()).unwrap())
        });
    }
    group.finish();
}

fn bench_deletion(c: &mut Criterion) {
    let phi = random_lcnf(11, &profile(6)).formula;
    c.bench_function("compute_lmes/random6", |b| {
        b.iter(|| {
            Analyzer::new(black_box(&phi), &OracleConfig::default())
                .compute_lmes(&[])
                .unwrap()
        })
    });
    let u = samples::unsat_pairs();
    c.bench_function("compute_lmus/unsat_pairs", |b| {
        b.iter(|| {
            Analyzer::new(black_box(&u), &OracleConfig::default())
                .compute_lmus(&[])
                .unwrap()
        })
    });
}

fn bench_hitting_sets(c: &mut Criterion) {
    // pairwise disjoint pairs: 2^k transversals
    let mut group = c.benchmark_group("minimal_hitting_sets");
    for k in [4u32, 8] {
        let family = SetFamily::from_members((0..k).map(|i| [2 * i + 1, 2 * i + 2].into()));
        group.bench_with_input(BenchmarkId::new("disjoint_pairs", k), &family, |b, f| {
            b.iter(|| minimal_hitting_sets(black_box(f), 1_000_000).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_classify, bench_deletion, bench_hitting_sets);
criterion_main!(benches);
