use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use opnorm_core::ck::check_ck_axioms;
use opnorm_core::embed::{discretize_dual_ball, theorem_a6_norm, DiscretizationStrategy};
use opnorm_core::gelfand::random_commuting_generators;
use opnorm_core::hilbert::{check_lh_axioms, mult_norm_l2};
use opnorm_core::numkernel::{hermitian_eig, simultaneous_diagonalize, spectral_norm};
use opnorm_core::random::{gaussian_matrix, rng_from_seed};
use opnorm_core::{AxiomConfig, NormedSpaceModel, ScalarField};

fn eig(c: &mut Criterion) {
    let mut group = c.benchmark_group("hermitian_eig");
    for n in [4, 8, 16, 32] {
        let a = gaussian_matrix(&mut rng_from_seed(n as u64), n, n);
        let h = &a.adjoint() * &a;
        group.bench_with_input(BenchmarkId::from_parameter(n), &h, |b, h| b.iter(|| hermitian_eig(black_box(h))));
    }
    group.finish();
}

fn svd(c: &mut Criterion) {
    let mut group = c.benchmark_group("spectral_norm");
    for n in [4, 8, 16, 32] {
        let a = gaussian_matrix(&mut rng_from_seed(100 + n as u64), n, n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| b.iter(|| spectral_norm(black_box(a))));
    }
    group.finish();
}

fn simdiag(c: &mut Criterion) {
    let gens = random_commuting_generators(&mut rng_from_seed(7), 8, 3, 3);
    c.bench_function("simultaneous_diagonalize/8x3", |b| {
        b.iter(|| simultaneous_diagonalize(black_box(&gens), 1e-10, 1))
    });
}

fn axioms(c: &mut Criterion) {
    let cfg = AxiomConfig::new(100, 1, 1e-9);
    let lh = mult_norm_l2(8).unwrap();
    c.bench_function("check_lh_axioms/mult_l2_8", |b| b.iter(|| check_lh_axioms(black_box(&lh), &cfg)));

    let space = NormedSpaceModel::l2(2, ScalarField::Real).unwrap();
    let disc = discretize_dual_ball(&space, &DiscretizationStrategy::Sampled { count: 64, seed: 1 }).unwrap();
    let ck = theorem_a6_norm(&disc);
    c.bench_function("check_ck_axioms/dual_ball_64", |b| b.iter(|| check_ck_axioms(black_box(&ck), &cfg, 100)));
}

criterion_group!(benches, eig, svd, simdiag, axioms);
criterion_main!(benches);
