mod support;

use opnorm_core::ck::{cone_preserving, op_norm_sup};
use opnorm_core::numkernel::is_psd;
use opnorm_core::random::{conjugated_diagonal, derive_seed, rng_from_seed};
use opnorm_core::{Operator, C64};
use rand::Rng;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Kind {
    Definite,
    Semidefinite,
    Indefinite,
}

fn hermitian_case(rng: &mut impl Rng, kind: Kind) -> Operator {
    let n = rng.random_range(1..=8);
    let mut eigs: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..3.0)).collect();
    match kind {
        Kind::Definite => {}
        Kind::Semidefinite => {
            let zeros = rng.random_range(1..=n);
            eigs[..zeros].iter_mut().for_each(|e| *e = 0.0);
        }
        Kind::Indefinite => {
            eigs[0] = rng.random_range(-3.0..-0.1);
            for e in eigs.iter_mut().skip(1) {
                *e = rng.random_range(-3.0..3.0);
            }
        }
    }
    let eigs: Vec<C64> = eigs.into_iter().map(|e| C64::new(e, 0.0)).collect();
    let m = conjugated_diagonal(rng, &eigs);
    // Symmetrize away rounding in the imaginary diagonal.
    let h = m.adjoint();
    Operator::from_fn(n, n, |i, j| (m.get(i, j) + h.get(i, j)) * 0.5)
}

#[test]
fn is_psd_matches_pivoted_cholesky() {
    let mut rng = rng_from_seed(derive_seed(11, 0));
    let kinds = [Kind::Definite, Kind::Semidefinite, Kind::Indefinite];
    let mut disagreements = Vec::new();
    for i in 0..1000 {
        let kind = kinds[i % 3];
        let m = hermitian_case(&mut rng, kind);
        let tol = 1e-9 * m.max_abs().max(1.0) * m.rows() as f64;
        let oracle = support::cholesky_psd(&m, tol);
        let ours = is_psd(&m, 1e-9).unwrap().is_psd;
        let expected = kind != Kind::Indefinite;
        if oracle != ours || ours != expected {
            disagreements.push((i, kind, ours, oracle));
        }
    }
    assert!(disagreements.is_empty(), "{disagreements:?}");
}

#[test]
fn cholesky_oracle_sanity() {
    let id = Operator::identity(3);
    assert!(support::cholesky_psd(&id, 1e-12));
    let mut m = Operator::zeros(2, 2);
    m.set(0, 1, C64::new(1.0, 0.0));
    m.set(1, 0, C64::new(1.0, 0.0));
    assert!(!support::cholesky_psd(&m, 1e-12));
}

#[test]
fn op_norm_sup_matches_sign_vectors() {
    let mut rng = rng_from_seed(derive_seed(12, 0));
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let k = rng.random_range(1..=12);
        let t = Operator::from_fn(k, k, |_, _| C64::new(rng.random_range(-2.0..2.0), 0.0));
        worst = worst.max((op_norm_sup(&t).unwrap() - support::sign_vector_sup_norm(&t)).abs());
    }
    assert!(worst <= 1e-12, "max difference {worst:e}");
}

fn cone_case(rng: &mut impl Rng) -> Operator {
    let k = rng.random_range(1..=12);
    let mut t = Operator::from_fn(k, k, |_, _| {
        if rng.random_bool(0.6) {
            C64::new(rng.random_range(0.0..1.0), 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    match rng.random_range(0..3) {
        0 => {}
        1 => {
            let (i, j) = (rng.random_range(0..k), rng.random_range(0..k));
            t.set(i, j, C64::new(-rng.random_range(1e-3..1.0), 0.0));
        }
        _ => {
            let (i, j) = (rng.random_range(0..k), rng.random_range(0..k));
            let re = t.get(i, j).re;
            t.set(i, j, C64::new(re, rng.random_range(1e-3..1.0)));
        }
    }
    t
}

#[test]
fn cone_preserving_matches_sampled_cone() {
    let mut rng = rng_from_seed(derive_seed(13, 0));
    let mut sampler = rng_from_seed(derive_seed(13, 1));
    let mut counts = [0usize; 2];
    for i in 0..200 {
        let t = cone_case(&mut rng);
        let ours = cone_preserving(&t, 1e-12).unwrap().preserving;
        let sampled = support::sampled_cone(&t, 10_000, 1e-12, &mut sampler);
        assert_eq!(ours, sampled, "operator {i}");
        counts[ours as usize] += 1;
    }
    assert!(counts[0] > 50 && counts[1] > 50, "{counts:?}");
}
