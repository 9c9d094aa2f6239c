use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ncc_core::moyal::{coherent_state, number_state, real_coordinates, star_product_matrix, translate};
use ncc_core::spacetime::{maximize_weighted_proper_time, SearchConfig};
use ncc_core::verifier::{find_violation, is_causal_element, WitnessSearch};
use ncc_core::{Complex64, EventPoint, MoyalParams, ScalarField};

fn star_product(c: &mut Criterion) {
    let mut group = c.benchmark_group("star_product");
    for n in [16, 32, 64] {
        let p = MoyalParams::new(1.0, n).unwrap();
        let (t, x) = real_coordinates(p);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| star_product_matrix(black_box(&t), black_box(&x)).unwrap())
        });
    }
    group.finish();
}

fn certify(c: &mut Criterion) {
    let mut group = c.benchmark_group("is_causal_element");
    for n in [16, 32, 64] {
        let p = MoyalParams::new(1.0, n).unwrap();
        let (t, x) = real_coordinates(p);
        let a = t.add(&x.scale(0.5)).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| is_causal_element(black_box(&a), 1e-9).unwrap())
        });
    }
    group.finish();
}

fn translate_ground(c: &mut Criterion) {
    let mut group = c.benchmark_group("translate");
    for n in [32, 64] {
        let p = MoyalParams::new(1.0, n).unwrap();
        let ground = number_state(0, p).unwrap();
        let kappa = Complex64::new(0.8, -0.6);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| translate(black_box(&ground), kappa).unwrap())
        });
    }
    group.finish();
}

fn optimizer(c: &mut Criterion) {
    let p = EventPoint::new(0.0, 0.0).unwrap();
    let q = EventPoint::new(2.0, 0.5).unwrap();
    let field = ScalarField::Gaussian { baseline: 0.5, amplitude: 1.0, t0: 1.0, x0: 0.6, width: 0.4 };
    let config = SearchConfig { budget: 500, ..SearchConfig::default() };
    c.bench_function("maximize_weighted_proper_time/500", |b| {
        b.iter(|| maximize_weighted_proper_time(p, q, black_box(&field), &config).unwrap())
    });
}

fn witness(c: &mut Criterion) {
    let p = MoyalParams::new(1.0, 32).unwrap();
    let s1 = coherent_state(Complex64::new(0.0, 0.0), p).unwrap();
    let s2 = coherent_state(Complex64::new(0.0, 0.5), p).unwrap();
    let search = WitnessSearch { budget: 200, ..WitnessSearch::default() };
    let mut group = c.benchmark_group("find_violation");
    group.sample_size(10);
    group.bench_function("spatial/32", |b| b.iter(|| find_violation(&s1, &s2, &search).unwrap()));
    group.finish();
}

criterion_group!(benches, star_product, certify, translate_ground, optimizer, witness);
criterion_main!(benches);
