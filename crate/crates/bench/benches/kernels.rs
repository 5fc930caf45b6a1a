use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fockspace::clifford::{det_identity, param_count};
use fockspace::hydrogen::{extract_coefficient, psi_momentum, psi_position, CauchyConfig, GenFuncSide};
use fockspace::quadmaps::ks_map;
use fockspace::quadrature::RadialHankel;
use fockspace::specfun::{gegenbauer, laguerre, QuantumNumbers};
use num_complex::Complex64;

fn polynomials(c: &mut Criterion) {
    let mut g = c.benchmark_group("polynomials");
    for k in [4u32, 16, 64] {
        g.bench_with_input(BenchmarkId::new("laguerre", k), &k, |b, &k| b.iter(|| laguerre(k, 2.5, black_box(3.7))));
        g.bench_with_input(BenchmarkId::new("gegenbauer", k), &k, |b, &k| b.iter(|| gegenbauer(k, 1.5, black_box(0.3))));
    }
    g.finish();
}

fn wavefunctions(c: &mut Criterion) {
    let qn = QuantumNumbers::new(5, 3, -2).unwrap();
    c.bench_function("psi_position n=5", |b| b.iter(|| psi_position(qn, black_box([0.7, -1.2, 2.4]))));
    c.bench_function("psi_momentum n=5", |b| b.iter(|| psi_momentum(qn, black_box([0.1, 0.05, -0.2]))));
}

fn hankel(c: &mut Criterion) {
    let h = RadialHankel::new(320).unwrap();
    let mut g = c.benchmark_group("radial_hankel");
    // below and above the switch to the rotated contour
    for p in [0.3, 5.0] {
        g.bench_with_input(BenchmarkId::new("n=3 l=1", p), &p, |b, &p| b.iter(|| h.transform(3, 1, black_box(p))));
    }
    g.finish();
    c.bench_function("radial_hankel setup 320", |b| b.iter(|| RadialHankel::new(black_box(320))));
}

fn clifford(c: &mut Criterion) {
    let mut g = c.benchmark_group("det_identity");
    for n in [1u32, 2, 3, 4] {
        let x: Vec<f64> = (0..param_count(n)).map(|k| 0.1 * (k as f64 + 1.0).sin()).collect();
        let alpha = Complex64::new(0.2, -0.1);
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| b.iter(|| det_identity(n, black_box(&x), alpha)));
    }
    g.finish();
}

fn maps(c: &mut Criterion) {
    c.bench_function("ks_map", |b| b.iter(|| ks_map(black_box([0.3, -0.4, 1.1, 0.2]))));
}

fn extraction(c: &mut Criterion) {
    let mut g = c.benchmark_group("cauchy_extraction");
    g.sample_size(10);
    let cfg = CauchyConfig::default();
    g.bench_function("position (2,1,0)", |b| {
        b.iter(|| extract_coefficient(GenFuncSide::Position, (2, 1, 0), 2, black_box([0.4, 0.2, 0.9]), &cfg))
    });
    g.finish();
}

criterion_group!(benches, polynomials, wavefunctions, hankel, clifford, maps, extraction);
criterion_main!(benches);
