//! The common surface of operator-valued norms and the axiom checks that do
//! not depend on the codomain's order structure.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::matrix::{CVector, Operator, C64};
use crate::random::{derive_seed, rng_from_seed, unimodular};
use crate::report::{Status, StatusBuilder, Witness};
use crate::space::{NormedSpaceModel, ScalarField};

/// Where the values of an operator-valued norm live.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Codomain {
    /// Positive operators on `ℂ^d`, ordered by the Loewner order.
    Hilbert { dim: usize },
    /// Cone-preserving operators on `C(K)` for a `K` with `points` points.
    ContinuousFunctions { points: usize },
}

/// A map from a finite-dimensional normed space into operators.
pub trait OperatorValuedNorm: Send + Sync {
    fn domain(&self) -> &NormedSpaceModel;

    fn codomain(&self) -> Codomain;

    fn descriptor(&self) -> &str;

    /// `F(x)`. Fails only on a dimension mismatch.
    fn evaluate(&self, x: &[C64]) -> Result<Operator>;

    /// Norm of a value of `F`: spectral norm on `H`, sup-induced norm on `C(K)`.
    fn value_norm(&self, value: &Operator) -> f64;

    /// `‖F(x)‖`.
    fn norm_at(&self, x: &[C64]) -> Result<f64> {
        Ok(self.value_norm(&self.evaluate(x)?))
    }
}

/// Sampling parameters for axiom checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxiomConfig {
    pub samples: usize,
    pub pairs: usize,
    pub seed: u64,
    pub tol: f64,
}

impl AxiomConfig {
    pub fn new(samples: usize, seed: u64, tol: f64) -> Self {
        Self {
            samples,
            pairs: samples,
            seed,
            tol,
        }
    }
}

/// Stream ids for [`derive_seed`]; fixed so that reports are reproducible.
pub(crate) mod streams {
    pub const POINTS: u64 = 0;
    pub const PAIRS: u64 = 1;
    pub const SCALARS: u64 = 2;
    pub const TEST_FUNCTIONS: u64 = 3;
}

/// Sample points with norms spread over six decades.
pub(crate) fn sample_points(space: &NormedSpaceModel, count: usize, seed: u64) -> Vec<CVector> {
    let mut rng = rng_from_seed(seed);
    (0..count).map(|_| space.sample_point(&mut rng)).collect()
}

pub(crate) fn sample_pairs(space: &NormedSpaceModel, count: usize, seed: u64) -> Vec<(CVector, CVector)> {
    let mut rng = rng_from_seed(seed);
    (0..count)
        .map(|_| (space.sample_point(&mut rng), space.sample_point(&mut rng)))
        .collect()
}

/// Scalars used for homogeneity: always `0` and a unimodular value, plus
/// negative, imaginary (complex field only), large, and random values.
pub(crate) fn homogeneity_scalars(field: ScalarField, rng: &mut impl rand::Rng) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0), C64::new(-1.0, 0.0)];
    if field == ScalarField::Complex {
        out.push(C64::new(0.0, 1.0));
    }
    out.push(C64::new(2.5, 0.0));
    match field {
        ScalarField::Complex => {
            out.push(crate::random::complex_gaussian(rng) * 2.0);
            out.push(unimodular(rng));
        }
        ScalarField::Real => {
            out.push(C64::new(crate::random::gaussian(rng) * 2.0, 0.0));
            let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            out.push(C64::new(sign, 0.0));
        }
    }
    out
}

/// `max |F(λx) - |λ| F(x)| <= tol * max(1, ‖F(x)‖)` for sampled `x`, `λ`.
pub(crate) fn check_homogeneity<N: OperatorValuedNorm + ?Sized>(
    norm: &N,
    points: &[CVector],
    cfg: &AxiomConfig,
) -> Result<Status> {
    let mut rng = rng_from_seed(derive_seed(cfg.seed, streams::SCALARS));
    let mut status = StatusBuilder::default();
    for (i, x) in points.iter().enumerate() {
        let fx = norm.evaluate(x)?;
        let scale = norm.value_norm(&fx).max(1.0);
        for lam in homogeneity_scalars(norm.domain().field(), &mut rng) {
            let lx: CVector = x.iter().map(|z| z * lam).collect();
            let lhs = norm.evaluate(&lx)?;
            let residual = lhs.max_abs_diff_scaled(&fx, lam.norm());
            status.record(residual, cfg.tol * scale, || {
                Witness::new(i, "F(lambda x) differs from |lambda| F(x)")
                    .with_x(x)
                    .with_scalar(lam)
            });
        }
    }
    Ok(status.finish())
}

/// `F(0) = 0` within `tol`, and `‖F(x)‖ >= tol` for sampled nonzero `x` and
/// every basis vector.
pub(crate) fn check_definiteness<N: OperatorValuedNorm + ?Sized>(
    norm: &N,
    points: &[CVector],
    cfg: &AxiomConfig,
) -> Result<Status> {
    let space = norm.domain();
    let mut status = StatusBuilder::default();
    let zero = vec![C64::new(0.0, 0.0); space.dim()];
    let f0 = norm.evaluate(&zero)?;
    status.record(f0.max_abs(), cfg.tol, || {
        Witness::new(0, "F(0) is not the zero operator").with_x(&zero)
    });
    let basis: Vec<CVector> = (0..space.dim()).map(|i| space.basis_vector(i)).collect();
    for (i, x) in basis.iter().chain(points).enumerate() {
        let v = norm.norm_at(x)?;
        status.record((cfg.tol - v).max(0.0), 0.0, || {
            Witness::new(i, format!("F(x) vanishes (norm {v:.3e}) for nonzero x")).with_x(x)
        });
    }
    Ok(status.finish())
}

/// `max` over `n` sampled unit-norm `x` of `‖F(x)‖`.
///
/// The samples are a prefix of a fixed seeded stream, so the estimate is
/// nondecreasing in `n` for a given seed.
pub fn boundedness_estimate<N: OperatorValuedNorm + ?Sized>(norm: &N, sphere_samples: usize, seed: u64) -> Result<f64> {
    let space = norm.domain();
    if space.dim() == 0 {
        return Err(crate::Error::InvalidArgument("zero-dimensional domain".into()));
    }
    let mut rng = rng_from_seed(seed);
    let mut best: f64 = 0.0;
    for _ in 0..sphere_samples {
        let u = space.sample_unit(&mut rng);
        best = best.max(norm.norm_at(&u)?);
    }
    Ok(best)
}

/// The unit-sphere samples used by [`boundedness_estimate`] for `seed`.
pub fn sphere_samples(space: &NormedSpaceModel, count: usize, seed: u64) -> Vec<CVector> {
    let mut rng = rng_from_seed(seed);
    (0..count).map(|_| space.sample_unit(&mut rng)).collect()
}
