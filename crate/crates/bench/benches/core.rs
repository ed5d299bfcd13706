use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nalgebra::{DMatrix, DVector};
use qel_core::fock::{gaussian_to_fock, suggested_cutoff};
use qel_core::{maximize, normalize, GaussianChannel, GaussianState, OneModeParams};

fn optimizer(c: &mut Criterion) {
    let mut group = c.benchmark_group("maximize");
    let channels = [
        ("lossy", GaussianChannel::lossy(0.5, 1.0).unwrap()),
        ("attenuated_squeezer", GaussianChannel::attenuated_squeezer(0.5, 2.0).unwrap()),
        ("amplified_squeezer", GaussianChannel::amplified_squeezer(5.0, 4.0).unwrap()),
    ];
    for (name, ch) in &channels {
        for e in [0.1, 100.0] {
            group.bench_with_input(BenchmarkId::new(*name, e), &e, |b, &e| {
                b.iter(|| maximize(black_box(ch), e, 1.0).unwrap())
            });
        }
    }
    group.finish();

    let ch = GaussianChannel::attenuated_squeezer(0.9, 2.0).unwrap();
    c.bench_function("normalize", |b| b.iter(|| normalize(black_box(&ch)).unwrap()));
}

fn williamson(c: &mut Criterion) {
    let mut group = c.benchmark_group("symplectic_eigenvalues");
    for n in [1usize, 4, 16] {
        let chain = (0..n).fold(GaussianChannel::squeezer(1.5).unwrap(), |acc, _| {
            acc.direct_sum(&GaussianChannel::squeezer(1.5).unwrap())
        });
        let modes = chain.input_modes();
        let thermal = GaussianState::new(DVector::zeros(2 * modes), DMatrix::identity(2 * modes, 2 * modes) * 3.0)
            .unwrap();
        let s = chain.apply(&thermal).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(modes), &s, |b, s| {
            b.iter(|| black_box(s).symplectic_eigenvalues())
        });
    }
    group.finish();
}

fn fock(c: &mut Criterion) {
    let mut group = c.benchmark_group("gaussian_to_fock");
    group.sample_size(10);
    for z in [1.5, 3.0] {
        let p = OneModeParams { z, theta: 0.7, nu: 1.2, mean_norm: 1.0, mean_dir: [1.0, 0.0] };
        let cutoff = suggested_cutoff(&p);
        group.bench_with_input(BenchmarkId::new("cutoff", cutoff), &p, |b, p| {
            b.iter(|| gaussian_to_fock(black_box(p), cutoff).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, optimizer, williamson, fock);
criterion_main!(benches);
