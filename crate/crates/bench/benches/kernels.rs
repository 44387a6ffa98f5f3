use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use nilab::index::{run_orbit, sweep};
use nilab::invariants::gradient;
use nilab::liealg::Family;
use nilab::triplets::principal_partition;
use nilab_bench::{algebra, dense, generic_element, skew};

fn exact(c: &mut Criterion) {
    let mut g = c.benchmark_group("exact");
    for n in [8, 16, 24] {
        let m = dense(n);
        g.bench_with_input(BenchmarkId::new("rref", n), &m, |b, m| b.iter(|| black_box(m.rref())));
        g.bench_with_input(BenchmarkId::new("det", n), &m, |b, m| {
            b.iter(|| black_box(m.det().unwrap()))
        });
        let s = skew(n);
        g.bench_with_input(BenchmarkId::new("pfaffian", n), &s, |b, s| {
            b.iter(|| black_box(s.pfaffian().unwrap()))
        });
    }
    g.finish();
}

fn gradients(c: &mut Criterion) {
    let mut g = c.benchmark_group("gradient");
    for (family, rank) in [(Family::A, 4), (Family::B, 3), (Family::D, 4)] {
        let alg = algebra(family, rank);
        let x = generic_element(&alg);
        g.bench_function(alg.id().to_string(), |b| {
            b.iter(|| {
                for j in 1..=alg.rank() {
                    black_box(gradient(&alg, j, &x).unwrap());
                }
            })
        });
    }
    g.finish();
}

fn pipeline(c: &mut Criterion) {
    let mut g = c.benchmark_group("pipeline");
    g.sample_size(10);
    for (family, rank) in [(Family::A, 4), (Family::C, 3)] {
        let alg = algebra(family, rank);
        let p = principal_partition(family, rank);
        g.bench_function(format!("principal {}", alg.id()), |b| {
            b.iter(|| black_box(run_orbit(&alg, &p, 0)))
        });
    }
    g.bench_function("sweep A n<=5", |b| {
        b.iter(|| black_box(sweep(Family::A, 5, 0).unwrap()))
    });
    g.finish();
}

criterion_group!(benches, exact, gradients, pipeline);
criterion_main!(benches);
