use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use skewring::sample;
use skewring::structure::{nucleus_membership, right_reduce, NucleusQuery, Side};
use skewring::verify::configs;
use skewring::{Shape, SkewPoly};

fn products(c: &mut Criterion) {
    for (label, cfg) in [
        ("q_twist", configs::q_twist_int(2, Shape::Laurent)),
        ("octonion", configs::octonion_conjugation()),
        ("weyl", configs::weyl()),
    ] {
        let ring = cfg.load().unwrap().config;
        let mut rng = sample::rng(1);
        let p = sample::poly(&ring, &mut rng, -6..=6);
        let q = sample::poly(&ring, &mut rng, -6..=6);
        c.bench_function(&format!("mul/{label}"), |b| {
            b.iter(|| black_box(&p).mul(black_box(&q)).unwrap())
        });
    }
}

fn series_inverse(c: &mut Criterion) {
    let cfg = skewring::CliConfig {
        precision: Some(16),
        ..configs::q_twist_int(2, Shape::PowerSeries)
    };
    let ring = cfg.load().unwrap().config;
    let mut rng = sample::rng(2);
    let a = sample::unit_series(&ring, &mut rng, 0, 16);
    c.bench_function("series/invert16", |b| b.iter(|| black_box(&a).invert().unwrap()));
}

fn reduction(c: &mut Criterion) {
    let ring = configs::q_twist_int(2, Shape::Ore).load().unwrap().config;
    let mut rng = sample::rng(3);
    let gens = vec![sample::poly_of_degree(&ring, &mut rng, 0, 2)];
    let f = sample::poly(&ring, &mut rng, 0..=10);
    c.bench_function("reduce/right_deg10", |b| {
        b.iter(|| right_reduce(black_box(&f), &gens).unwrap())
    });
}

fn nucleus(c: &mut Criterion) {
    let ring = configs::octonion_conjugation().load().unwrap().config;
    let q = NucleusQuery {
        element: SkewPoly::x_pow(&ring, 1),
        side: Side::Middle,
        degree_bound: 2,
    };
    let mut group = c.benchmark_group("nucleus");
    group.sample_size(10);
    group.bench_function("octonion_middle_bound2", |b| b.iter(|| nucleus_membership(&q).unwrap()));
    group.finish();
}

criterion_group!(benches, products, series_inverse, reduction, nucleus);
criterion_main!(benches);
