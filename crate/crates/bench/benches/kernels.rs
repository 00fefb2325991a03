use std::hint::black_box;

use biform_bench::{bilinear, curvature, dense_square, symmetric};
use biform_core::curvature::alt;
use biform_core::endo::{exp_ext, invariants};
use biform_core::{hodge_star, interior, DoubleForm};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn exterior(c: &mut Criterion) {
    let mut group = c.benchmark_group("exterior_power");
    for n in [4, 5, 6] {
        let h = symmetric(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &h, |b, h| {
            b.iter(|| black_box(h.pow(n / 2 + 1)))
        });
    }
    group.finish();
}

fn composition(c: &mut Criterion) {
    let mut group = c.benchmark_group("compose");
    for n in [4, 5, 6] {
        let w = dense_square(n, 2);
        group.bench_with_input(BenchmarkId::from_parameter(n), &w, |b, w| {
            b.iter(|| black_box(w.compose(w).unwrap()))
        });
    }
    group.finish();
}

fn interior_and_star(c: &mut Criterion) {
    let n = 6;
    let unit = DoubleForm::unit(n, 3);
    let w = dense_square(n, 2);
    c.bench_function("interior_6", |b| b.iter(|| black_box(interior(&w, &unit).unwrap())));
    c.bench_function("hodge_star_6", |b| b.iter(|| black_box(hodge_star(&w))));
}

fn invariants_bench(c: &mut Criterion) {
    let mut group = c.benchmark_group("invariants");
    for n in [4, 5, 6] {
        let h = bilinear(n);
        group.bench_with_input(BenchmarkId::new("exp_ext", n), &h, |b, h| {
            b.iter(|| black_box(exp_ext(h).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("s_p", n), &h, |b, h| {
            b.iter(|| black_box(invariants(h).unwrap()))
        });
    }
    group.finish();
}

fn alternation(c: &mut Criterion) {
    let mut group = c.benchmark_group("alt_r_compose_r");
    group.sample_size(20);
    for n in [4, 5, 6] {
        let r = curvature(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &r, |b, r| {
            b.iter(|| black_box(alt(&r.compose(r).unwrap()).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, exterior, composition, interior_and_star, invariants_bench, alternation);
criterion_main!(benches);
