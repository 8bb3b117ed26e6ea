use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use octacover_core::geometry::{orbit_ball, OrbitGroup};
use octacover_core::group::{standard_generator, GeneratorName};
use octacover_core::words::{enumerate_racg_ball, normal_form};
use octacover_core::{CoxeterWord, Point3};

fn bench_products(c: &mut Criterion) {
    let w: CoxeterWord = "r1.r2p.r3.r4p.r2.r1p.r4.r3p.r1.r2".parse().unwrap();
    c.bench_function("evaluate word of length 10", |b| {
        b.iter(|| black_box(&w).evaluate())
    });
    let g = standard_generator(GeneratorName::R1).mul(&standard_generator(GeneratorName::R2p));
    c.bench_function("twisted product", |b| {
        b.iter(|| black_box(&g).mul(black_box(&g)))
    });
    let long: CoxeterWord = "r1.r2p.r1.r3.r2p.r3.r4p.r4.r4p.r1p.r2.r1p".parse().unwrap();
    c.bench_function("normal form", |b| b.iter(|| normal_form(black_box(&long))));
}

fn bench_balls(c: &mut Criterion) {
    let mut group = c.benchmark_group("balls");
    group.sample_size(10);
    group.bench_function("racg ball radius 6", |b| {
        b.iter(|| enumerate_racg_ball(6).unwrap().len())
    });
    let x0 = Point3::new(0.3, 0.4, 0.9).unwrap();
    group.bench_function("apollonian orbit ball length 10", |b| {
        b.iter(|| orbit_ball(OrbitGroup::Apollonian, x0, 10).unwrap().len())
    });
    group.finish();
}

criterion_group!(benches, bench_products, bench_balls);
criterion_main!(benches);
