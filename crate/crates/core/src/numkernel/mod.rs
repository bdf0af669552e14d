//! Dense complex-matrix kernels.
//!
//! Eigenvalues of Hermitian matrices come from cyclic Jacobi, singular
//! values from one-sided Jacobi, and general (non-Hermitian) spectra from a
//! complex Schur decomposition. All tolerances are relative to
//! `max(1, scale)` where `scale` is the natural magnitude of the input.

mod jacobi;
mod simdiag;
mod svd;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{CVector, Operator, C64};
use crate::random::{rng_from_seed, unit_vector};

pub use jacobi::hermitian_eig;
pub use simdiag::{simultaneous_diagonalize, JointDiagonalization, MAX_RETRIES};
pub use svd::{singular_values, SingularValues};

/// Relative tolerance for the Hermitian check.
pub const HERM_TOL: f64 = 1e-10;
/// Relative tolerance for eigendecomposition residuals.
pub const EIG_TOL: f64 = 1e-10;
/// Default relative tolerance for PSD tests.
pub const PSD_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Unitary; column `j` belongs to `eigenvalues[j]`.
    pub basis: Operator,
}

impl EigenDecomposition {
    /// `max |M - U diag(λ) Uᴴ|` entrywise.
    pub fn reconstruction_residual(&self, m: &Operator) -> f64 {
        let lam = Operator::from_real_diag(&self.eigenvalues);
        let r = &(&self.basis * &lam) * &self.basis.adjoint();
        r.max_abs_diff(m)
    }

    pub fn unitarity_residual(&self) -> f64 {
        let g = &self.basis.adjoint() * &self.basis;
        g.max_abs_diff(&Operator::identity(g.rows()))
    }

    pub fn min_eigenvalue(&self) -> Option<f64> {
        self.eigenvalues.first().copied()
    }

    pub fn max_abs_eigenvalue(&self) -> f64 {
        self.eigenvalues.iter().map(|l| l.abs()).fold(0.0, f64::max)
    }
}

/// Outcome of a PSD test.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PsdCheck {
    pub is_psd: bool,
    pub min_eigenvalue: f64,
    /// Threshold the smallest eigenvalue was compared against.
    pub threshold: f64,
    /// Unit vector `h` with `(Mh, h) < 0`, present only on failure.
    #[serde(with = "crate::matrix::opt_complex_pairs")]
    pub witness: Option<CVector>,
}

/// PSD test: `λ_min(M) >= -tol * max(1, ‖M‖)`.
pub fn is_psd(m: &Operator, tol: f64) -> Result<PsdCheck> {
    if m.rows() == 1 && m.cols() == 1 {
        let z = m.get(0, 0);
        if z.im.abs() > HERM_TOL * z.norm().max(1.0) {
            return Err(Error::NotHermitian {
                residual: 2.0 * z.im.abs(),
                threshold: HERM_TOL * z.norm().max(1.0),
            });
        }
        let threshold = -tol * z.re.abs().max(1.0);
        let ok = z.re >= threshold;
        return Ok(PsdCheck {
            is_psd: ok,
            min_eigenvalue: z.re,
            threshold,
            witness: (!ok).then(|| vec![C64::new(1.0, 0.0)]),
        });
    }
    let eig = hermitian_eig(m)?;
    let Some(lmin) = eig.min_eigenvalue() else {
        return Ok(PsdCheck {
            is_psd: true,
            min_eigenvalue: 0.0,
            threshold: 0.0,
            witness: None,
        });
    };
    let threshold = -tol * eig.max_abs_eigenvalue().max(1.0);
    let ok = lmin >= threshold;
    let witness = if ok {
        None
    } else {
        let h = eig.basis.column(0);
        debug_assert!(m.quadratic_form(&h).re < 0.0);
        Some(h)
    };
    Ok(PsdCheck {
        is_psd: ok,
        min_eigenvalue: lmin,
        threshold,
        witness,
    })
}

/// Largest singular value. Diagonal inputs short-circuit to `max |d_i|`.
pub fn spectral_norm(m: &Operator) -> Result<f64> {
    if m.is_empty() {
        return Err(Error::EmptyMatrix);
    }
    if m.is_diagonal() {
        return Ok(m.diagonal().iter().map(|z| z.norm()).fold(0.0, f64::max));
    }
    Ok(singular_values(m)?.values[0])
}

/// Largest singular value together with a unit vector `v` attaining it.
pub fn spectral_norm_witness(m: &Operator) -> Result<(f64, CVector)> {
    let s = singular_values(m)?;
    Ok((s.values[0], s.right_vectors.column(0)))
}

/// Smallest singular value of a square matrix.
pub fn smallest_singular_value(m: &Operator) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(*singular_values(m)?.values.last().expect("non-empty"))
}

/// Eigenvalues of a general square matrix.
///
/// Normal input is diagonalized by Jacobi on `H + cK`, where `M = H + iK`
/// and `c` is a fixed irrational weight, with eigenvalues read off as
/// `uᴴMu`. Everything else goes through nalgebra's complex Schur form.
pub fn eigenvalues(m: &Operator) -> Result<CVector> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let (r, t) = is_normal_residual(m, NORMALITY_TOL);
    if r <= t {
        if let Some(eigs) = normal_eigenvalues(m)? {
            return Ok(eigs);
        }
    }
    let dm = nalgebra::DMatrix::<C64>::from_fn(n, n, |i, j| m.get(i, j));
    let schur = nalgebra::Schur::try_new(dm, f64::EPSILON, SCHUR_MAX_ITER * n).ok_or(Error::NoConvergence {
        sweeps: SCHUR_MAX_ITER * n,
        off_diagonal: f64::NAN,
    })?;
    let (_, t) = schur.unpack();
    Ok((0..n).map(|i| t[(i, i)]).collect())
}

const SCHUR_MAX_ITER: usize = 1000;

/// `None` when the Jacobi basis does not diagonalize `m` to working accuracy.
fn normal_eigenvalues(m: &Operator) -> Result<Option<CVector>> {
    const WEIGHT: f64 = std::f64::consts::SQRT_2 - 0.5;
    let adj = m.adjoint();
    let h = Operator::from_fn(m.rows(), m.cols(), |i, j| {
        let re = (m.get(i, j) + adj.get(i, j)) * 0.5;
        let im = (m.get(i, j) - adj.get(i, j)) * C64::new(0.0, -0.5);
        re + im * WEIGHT
    });
    let eig = hermitian_eig(&h)?;
    let u = &eig.basis;
    let d = &(&u.adjoint() * m) * u;
    let eigs: CVector = (0..d.rows()).map(|i| d.get(i, i)).collect();
    let off = (0..d.rows())
        .flat_map(|i| (0..d.cols()).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| d.get(i, j).norm())
        .fold(0.0, f64::max);
    Ok((off <= 1e3 * f64::EPSILON * m.frobenius_norm().max(1.0)).then_some(eigs))
}

/// `max |λ|` over the spectrum.
pub fn spectral_radius(m: &Operator) -> Result<f64> {
    Ok(eigenvalues(m)?.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// Spectral norm of `AB - BA`.
pub fn commutator_norm(a: &Operator, b: &Operator) -> f64 {
    let c = &(a * b) - &(b * a);
    if c.is_empty() {
        0.0
    } else {
        spectral_norm(&c).unwrap_or(f64::INFINITY)
    }
}

/// `(‖MᴴM - MMᴴ‖, tol * max(1, ‖M‖²))`.
pub(crate) fn is_normal_residual(m: &Operator, tol: f64) -> (f64, f64) {
    if m.is_empty() {
        return (0.0, tol);
    }
    let adj = m.adjoint();
    let residual = commutator_norm(&adj, m);
    let nrm = spectral_norm(m).unwrap_or(0.0);
    (residual, tol * (nrm * nrm).max(1.0))
}

/// `‖MᴴM - MMᴴ‖ <= tol * max(1, ‖M‖²)`.
pub fn is_normal(m: &Operator, tol: f64) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let (r, t) = is_normal_residual(m, tol);
    Ok(r <= t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum RadiusStrategy {
    /// `max |λ|`, valid only for normal input.
    ExactNormal,
    /// Maximum of `|(Mh, h)|` over `count` seeded unit vectors.
    Sampled { count: usize, seed: u64 },
}

/// Normality tolerance used by [`RadiusStrategy::ExactNormal`].
pub const NORMALITY_TOL: f64 = 1e-10;

/// `sup { |(Mh, h)| : ‖h‖ <= 1 }`, exactly for normal matrices or as a
/// sampled lower bound.
///
/// The sampled bound is a running maximum over a fixed seeded stream of unit
/// vectors, so it is nondecreasing in `count` for a fixed seed.
pub fn numerical_radius(m: &Operator, strategy: RadiusStrategy) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if m.rows() == 0 {
        return Ok(0.0);
    }
    match strategy {
        RadiusStrategy::ExactNormal => {
            let (residual, threshold) = is_normal_residual(m, NORMALITY_TOL);
            if residual > threshold {
                return Err(Error::NotNormal {
                    index: None,
                    residual,
                });
            }
            spectral_radius(m)
        }
        RadiusStrategy::Sampled { count, seed } => {
            let mut rng = rng_from_seed(seed);
            let mut best: f64 = 0.0;
            for _ in 0..count {
                let h = unit_vector(&mut rng, m.rows());
                best = best.max(m.quadratic_form(&h).norm());
            }
            Ok(best)
        }
    }
}

/// Sampled numerical-radius trace: the running maximum after each sample.
/// Mostly useful to exhibit monotonicity.
pub fn numerical_radius_trace(m: &Operator, count: usize, seed: u64) -> Vec<f64> {
    let mut rng = rng_from_seed(seed);
    let mut best: f64 = 0.0;
    (0..count)
        .map(|_| {
            let h = unit_vector(&mut rng, m.rows());
            best = best.max(m.quadratic_form(&h).norm());
            best
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{gaussian_matrix, random_normal};
    use crate::matrix::{vec_norm2, ZERO};

    fn nilpotent() -> Operator {
        Operator::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]])
    }

    #[test]
    fn psd_identity_and_explicit_negative() {
        assert!(is_psd(&Operator::identity(2), PSD_TOL).unwrap().is_psd);
        let m = Operator::from_real_diag(&[0.0, -1e-3]);
        let r = is_psd(&m, 1e-10).unwrap();
        assert!(!r.is_psd);
        let h = r.witness.unwrap();
        assert!((h[1].norm() - 1.0).abs() < 1e-15 && h[0] == ZERO);
        assert!(m.quadratic_form(&h).re < 0.0);
    }

    #[test]
    fn psd_one_by_one_is_sign_test() {
        assert!(is_psd(&Operator::from_real_diag(&[0.0]), 1e-10).unwrap().is_psd);
        assert!(!is_psd(&Operator::from_real_diag(&[-0.5]), 1e-10).unwrap().is_psd);
        assert!(is_psd(&Operator::zeros(0, 0), 1e-10).unwrap().is_psd);
    }

    #[test]
    fn psd_rejects_non_hermitian() {
        assert!(matches!(is_psd(&nilpotent(), 1e-10), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn spectral_norm_examples() {
        assert_eq!(spectral_norm(&Operator::from_real_diag(&[1.0, 2.0, 3.0])).unwrap(), 3.0);
        assert!((spectral_norm(&nilpotent()).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(spectral_norm(&Operator::zeros(3, 2)).unwrap(), 0.0);
        assert!(matches!(spectral_norm(&Operator::zeros(0, 0)), Err(Error::EmptyMatrix)));
    }

    /// Derivative-free search for `sup ‖Mv‖` over unit vectors: uniform
    /// samples, then shrinking random perturbations of the incumbent.
    fn sampled_sup(m: &Operator, budget: usize, seed: u64, cap: f64) -> f64 {
        let mut rng = rng_from_seed(seed);
        let n = m.cols();
        let eval = |v: &[C64]| vec_norm2(&m.mul_vec(v));
        let mut best_v = unit_vector(&mut rng, n);
        let mut best = eval(&best_v);
        for _ in 0..budget / 2 {
            let v = unit_vector(&mut rng, n);
            let val = eval(&v);
            assert!(val <= cap * (1.0 + 1e-12));
            if val > best {
                best = val;
                best_v = v;
            }
        }
        let mut radius = 0.3;
        for i in 0..budget / 2 {
            let step = unit_vector(&mut rng, n);
            let trial: CVector = best_v.iter().zip(&step).map(|(a, b)| a + b * radius).collect();
            let nrm = vec_norm2(&trial);
            let trial: CVector = trial.iter().map(|z| z / nrm).collect();
            let val = eval(&trial);
            assert!(val <= cap * (1.0 + 1e-12));
            if val > best {
                best = val;
                best_v = trial;
            }
            if i % 2000 == 1999 {
                radius *= 0.5;
            }
        }
        best
    }

    #[test]
    fn spectral_norm_beats_sampling_and_has_witness() {
        let mut rng = rng_from_seed(17);
        let m = gaussian_matrix(&mut rng, 4, 4);
        let (s, v) = spectral_norm_witness(&m).unwrap();
        let best = sampled_sup(&m, 100_000, 99, s);
        assert!(best <= s * (1.0 + 1e-12));
        assert!(s - best < 1e-3, "gap {}", s - best);
        assert!((vec_norm2(&m.mul_vec(&v)) - s).abs() < 1e-6);
    }

    #[test]
    fn eigenvalues_with_repeats() {
        let mut rng = crate::random::rng_from_seed(5);
        let d = [C64::new(1.0, 1.0), C64::new(1.0, 1.0), C64::new(-2.0, 0.5), C64::new(1.0, 1.0)];
        for _ in 0..50 {
            let m = crate::random::conjugated_diagonal(&mut rng, &d);
            let mut got = eigenvalues(&m).unwrap();
            got.sort_by(|a, b| a.re.total_cmp(&b.re));
            assert!((got[0] - d[2]).norm() < 1e-12);
            assert!(got[1..].iter().all(|z| (z - d[0]).norm() < 1e-12));
        }
        let j = eigenvalues(&nilpotent()).unwrap();
        assert!(j.iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn spectral_radius_examples() {
        let d = Operator::from_diag(&[C64::new(1.0, 0.0), C64::new(0.0, 2.0)]);
        assert!((spectral_radius(&d).unwrap() - 2.0).abs() < 1e-15);
        assert_eq!(spectral_radius(&nilpotent()).unwrap(), 0.0);
        assert!(spectral_radius(&Operator::zeros(2, 3)).is_err());
        let mut rng = rng_from_seed(4);
        for _ in 0..20 {
            let n = random_normal(&mut rng, 6);
            let r = spectral_radius(&n).unwrap();
            let s = spectral_norm(&n).unwrap();
            assert!((r - s).abs() <= 1e-8 * s.max(1.0));
        }
    }

    #[test]
    fn numerical_radius_examples() {
        let d = Operator::from_diag(&[C64::new(1.0, 0.0), C64::new(0.0, 1.0)]);
        assert!((numerical_radius(&d, RadiusStrategy::ExactNormal).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(numerical_radius(&Operator::zeros(3, 3), RadiusStrategy::ExactNormal).unwrap(), 0.0);
        assert!(matches!(
            numerical_radius(&nilpotent(), RadiusStrategy::ExactNormal),
            Err(Error::NotNormal { .. })
        ));
        let w = numerical_radius(&nilpotent(), RadiusStrategy::Sampled { count: 1_000_000, seed: 1 }).unwrap();
        assert!((0.499..=0.5).contains(&w), "w = {w}");
    }

    #[test]
    fn sampled_radius_is_monotone_in_count() {
        let mut rng = rng_from_seed(8);
        let m = gaussian_matrix(&mut rng, 3, 3);
        let trace = numerical_radius_trace(&m, 500, 12);
        assert!(trace.windows(2).all(|w| w[0] <= w[1]));
        for &count in &[1usize, 10, 100, 500] {
            let v = numerical_radius(&m, RadiusStrategy::Sampled { count, seed: 12 }).unwrap();
            assert_eq!(v, trace[count - 1]);
            assert!(v <= spectral_norm(&m).unwrap() + 1e-9);
        }
    }

    #[test]
    fn normality_examples() {
        let mut rng = rng_from_seed(6);
        let a = gaussian_matrix(&mut rng, 4, 4);
        let h = &a + &a.adjoint();
        assert!(is_normal(&h, 1e-10).unwrap());
        assert!(!is_normal(&nilpotent(), 1e-10).unwrap());
        let u = hermitian_eig(&h).unwrap().basis;
        assert!((&u.adjoint() * &u).max_abs_diff(&Operator::identity(4)) < 1e-12);
        assert!(is_normal(&u, 1e-10).unwrap());
        assert!(is_normal(&Operator::zeros(2, 3), 1e-10).is_err());
    }
}
