//! `L(H)`-valued norms with `H = ℂ^d`.
//!
//! Positivity means positive semidefinite, and the triangle inequality is
//! read in the Loewner order: `F(x) + F(y) - F(x + y)` must be PSD.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::{CVector, Operator, C64};
use crate::numkernel::{hermitian_eig, is_psd, singular_values, spectral_norm};
use crate::ovnorm::{
    check_definiteness, check_homogeneity, sample_pairs, sample_points, streams, AxiomConfig, Codomain,
    OperatorValuedNorm,
};
use crate::random::derive_seed;
use crate::report::{AxiomReport, StatusBuilder, Witness};
use crate::space::{NormedSpaceModel, ScalarField};

/// Relative injectivity threshold for [`compose_norm`].
pub const INJECTIVITY_TOL: f64 = 1e-10;

pub type LhEvaluator = Arc<dyn Fn(&[C64]) -> Operator + Send + Sync>;

#[derive(Clone)]
pub struct LHValuedNorm {
    domain: NormedSpaceModel,
    hilbert_dim: usize,
    /// Weight `w` of the inner product `(u, v) = w Σ u_i conj(v_i)`.
    inner_weight: f64,
    evaluator: LhEvaluator,
    descriptor: String,
}

impl fmt::Debug for LHValuedNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LHValuedNorm")
            .field("domain", &self.domain.label())
            .field("hilbert_dim", &self.hilbert_dim)
            .field("descriptor", &self.descriptor)
            .finish()
    }
}

impl LHValuedNorm {
    pub fn new(
        domain: NormedSpaceModel,
        hilbert_dim: usize,
        descriptor: impl Into<String>,
        evaluator: LhEvaluator,
    ) -> Result<Self> {
        if hilbert_dim == 0 {
            return Err(Error::InvalidArgument("Hilbert dimension must be positive".into()));
        }
        Ok(Self {
            domain,
            hilbert_dim,
            inner_weight: 1.0,
            evaluator,
            descriptor: descriptor.into(),
        })
    }

    pub fn hilbert_dim(&self) -> usize {
        self.hilbert_dim
    }

    pub fn inner_weight(&self) -> f64 {
        self.inner_weight
    }

    /// `(F(x)h, h)` in the weighted inner product.
    pub fn quadratic_form(&self, x: &[C64], h: &[C64]) -> Result<f64> {
        Ok(self.evaluate(x)?.quadratic_form(h).re * self.inner_weight)
    }
}

impl OperatorValuedNorm for LHValuedNorm {
    fn domain(&self) -> &NormedSpaceModel {
        &self.domain
    }

    fn codomain(&self) -> Codomain {
        Codomain::Hilbert {
            dim: self.hilbert_dim,
        }
    }

    fn descriptor(&self) -> &str {
        &self.descriptor
    }

    fn evaluate(&self, x: &[C64]) -> Result<Operator> {
        self.domain.check_dim(x)?;
        Ok((self.evaluator)(x))
    }

    fn value_norm(&self, value: &Operator) -> f64 {
        spectral_norm(value).unwrap_or(0.0)
    }
}

/// `F(x) = ‖x‖ I_d`.
pub fn trivial_norm(space: NormedSpaceModel, hilbert_dim: usize) -> Result<LHValuedNorm> {
    let s = space.clone();
    let descriptor = format!("trivial_norm({}, d={hilbert_dim})", space.label());
    LHValuedNorm::new(
        space,
        hilbert_dim,
        descriptor,
        Arc::new(move |x| Operator::identity(hilbert_dim).scale_real(s.norm(x))),
    )
}

/// Multiplication-operator norm on the `n`-point grid of the circle:
/// `F(g) = diag(|g_1|, ..., |g_n|)` acting on `ℂ^n` with inner product
/// weight `1/n`. The domain carries the sup norm.
pub fn mult_norm_l2(grid_size: usize) -> Result<LHValuedNorm> {
    if grid_size == 0 {
        return Err(Error::InvalidArgument("grid size must be positive".into()));
    }
    let domain = NormedSpaceModel::linf(grid_size, ScalarField::Complex)?
        .with_label(format!("bounded functions on {grid_size}-point circle grid"));
    let mut norm = LHValuedNorm::new(
        domain,
        grid_size,
        format!("mult_norm_l2(n={grid_size})"),
        Arc::new(|g| Operator::from_real_diag(&g.iter().map(|z| z.norm()).collect::<Vec<_>>())),
    )?;
    norm.inner_weight = 1.0 / grid_size as f64;
    Ok(norm)
}

/// `(F∘T)(h) = F(Th)`.
///
/// `T` must be square, match `F`'s domain dimension, and be injective with
/// `σ_min(T) > 1e-10 ‖T‖`.
pub fn compose_norm(f: &LHValuedNorm, t: &Operator) -> Result<LHValuedNorm> {
    if !t.is_square() {
        return Err(Error::NotSquare {
            rows: t.rows(),
            cols: t.cols(),
        });
    }
    if t.rows() != f.domain.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.domain.dim(),
            found: t.rows(),
        });
    }
    let sv = singular_values(t)?;
    let sigma_max = sv.values[0];
    let sigma_min = *sv.values.last().expect("non-empty");
    let threshold = INJECTIVITY_TOL * sigma_max;
    if sigma_min <= threshold || sigma_max == 0.0 {
        return Err(Error::Singular {
            sigma_min,
            threshold,
        });
    }
    let inner = f.evaluator.clone();
    let t = t.clone();
    Ok(LHValuedNorm {
        domain: f.domain.clone(),
        hilbert_dim: f.hilbert_dim,
        inner_weight: f.inner_weight,
        evaluator: Arc::new(move |h| inner(&t.mul_vec(h))),
        descriptor: format!("compose_norm({}, T[cond={:.3e}])", f.descriptor, sigma_max / sigma_min),
    })
}

/// `G(x) = F(x) - shift·I` for `x ≠ 0` and `G(0) = 0`; violates positivity
/// for small `x` and exists to exercise failure reporting.
pub fn adversarial_shift(f: &LHValuedNorm, shift: f64) -> LHValuedNorm {
    let inner = f.evaluator.clone();
    let d = f.hilbert_dim;
    LHValuedNorm {
        domain: f.domain.clone(),
        hilbert_dim: d,
        inner_weight: f.inner_weight,
        evaluator: Arc::new(move |x| {
            let fx = inner(x);
            if x.iter().all(|z| *z == C64::new(0.0, 0.0)) {
                fx
            } else {
                &fx - &Operator::identity(d).scale_real(shift)
            }
        }),
        descriptor: format!("adversarial_shift({}, {shift})", f.descriptor),
    }
}

/// Samples the four defining properties of an `L(H)`-valued norm.
///
/// Positivity: `F(x)` PSD. Triangle: `λ_min(F(x) + F(y) - F(x+y)) >=
/// -tol·max(1, ‖F(x)‖ + ‖F(y)‖)`. Homogeneity and definiteness are shared
/// with the `C(K)` checker.
pub fn check_lh_axioms(f: &LHValuedNorm, cfg: &AxiomConfig) -> Result<AxiomReport> {
    let points = sample_points(&f.domain, cfg.samples, derive_seed(cfg.seed, streams::POINTS));
    let pairs = sample_pairs(&f.domain, cfg.pairs, derive_seed(cfg.seed, streams::PAIRS));

    let mut positivity = StatusBuilder::default();
    for (i, x) in points.iter().enumerate() {
        let fx = f.evaluate(x)?;
        let check = is_psd(&fx, cfg.tol)?;
        positivity.record(-check.min_eigenvalue, -check.threshold, || {
            let h = check.witness.clone().unwrap_or_default();
            Witness::new(i, format!("F(x) has eigenvalue {:.3e} < 0", check.min_eigenvalue))
                .with_x(x)
                .with_vector(&h)
        });
    }

    let mut triangle = StatusBuilder::default();
    for (i, (x, y)) in pairs.iter().enumerate() {
        let fx = f.evaluate(x)?;
        let fy = f.evaluate(y)?;
        let sum: CVector = x.iter().zip(y).map(|(a, b)| a + b).collect();
        let fxy = f.evaluate(&sum)?;
        let gap = &(&fx + &fy) - &fxy;
        let eig = hermitian_eig(&gap)?;
        let lmin = eig.min_eigenvalue().unwrap_or(0.0);
        let scale = (f.value_norm(&fx) + f.value_norm(&fy)).max(1.0);
        triangle.record(-lmin, cfg.tol * scale, || {
            Witness::new(i, format!("F(x)+F(y)-F(x+y) has eigenvalue {lmin:.3e} < 0"))
                .with_x(x)
                .with_y(y)
                .with_vector(&eig.basis.column(0))
        });
    }

    let homogeneity = check_homogeneity(f, &points, cfg)?;
    let definiteness = check_definiteness(f, &points, cfg)?;
    Ok(AxiomReport {
        descriptor: f.descriptor.clone(),
        positivity: positivity.finish(),
        triangle: triangle.finish(),
        homogeneity,
        definiteness,
        samples: cfg.samples,
        pairs: cfg.pairs,
        seed: cfg.seed,
        tol: cfg.tol,
        notes: vec![format!(
            "sample-based: no violation found on {} points and {} pairs is not a proof",
            cfg.samples, cfg.pairs
        )],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ovnorm::boundedness_estimate;
    use crate::random::{gaussian_vector, random_with_condition, rng_from_seed};

    fn cfg(n: usize, seed: u64) -> AxiomConfig {
        AxiomConfig::new(n, seed, 1e-9)
    }

    #[test]
    fn trivial_norm_examples() {
        let f = trivial_norm(NormedSpaceModel::l2(3, ScalarField::Complex).unwrap(), 2).unwrap();
        let zero = vec![C64::new(0.0, 0.0); 3];
        assert_eq!(f.evaluate(&zero).unwrap(), Operator::zeros(2, 2));
        let x: CVector = [3.0, 4.0, 0.0].iter().map(|&v| C64::new(v, 0.0)).collect();
        assert_eq!(f.evaluate(&x).unwrap(), Operator::from_real_diag(&[5.0, 5.0]));
        let mut rng = rng_from_seed(3);
        for _ in 0..100 {
            let x = gaussian_vector(&mut rng, 3);
            let direct = f.domain().norm(&x);
            assert!((f.norm_at(&x).unwrap() - direct).abs() <= 1e-15 * direct);
        }
    }

    #[test]
    fn evaluate_rejects_wrong_dimension() {
        let f = mult_norm_l2(4).unwrap();
        assert!(matches!(
            f.evaluate(&[C64::new(1.0, 0.0)]),
            Err(Error::DimensionMismatch { expected: 4, found: 1 })
        ));
    }

    #[test]
    fn mult_norm_examples() {
        let f = mult_norm_l2(6).unwrap();
        let ones = vec![C64::new(1.0, 0.0); 6];
        assert_eq!(f.evaluate(&ones).unwrap(), Operator::identity(6));
        assert_eq!(f.norm_at(&ones).unwrap(), 1.0);
        assert_eq!(f.evaluate(&vec![C64::new(0.0, 0.0); 6]).unwrap(), Operator::zeros(6, 6));
        let mut rng = rng_from_seed(5);
        for _ in 0..100 {
            let g = gaussian_vector(&mut rng, 6);
            let sup = g.iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert_eq!(f.norm_at(&g).unwrap(), sup);
        }
        assert_eq!(f.inner_weight(), 1.0 / 6.0);
    }

    #[test]
    fn compose_with_identity_and_scaled_identity() {
        let f = mult_norm_l2(3).unwrap();
        let id = compose_norm(&f, &Operator::identity(3)).unwrap();
        let two = compose_norm(&f, &Operator::identity(3).scale_real(2.0)).unwrap();
        let mut rng = rng_from_seed(8);
        for _ in 0..20 {
            let x = gaussian_vector(&mut rng, 3);
            assert_eq!(id.evaluate(&x).unwrap(), f.evaluate(&x).unwrap());
            let lhs = two.evaluate(&x).unwrap();
            let rhs = f.evaluate(&x).unwrap().scale_real(2.0);
            assert!(lhs.max_abs_diff(&rhs) <= 1e-15 * rhs.max_abs());
        }
    }

    #[test]
    fn compose_rejects_bad_operators() {
        let f = mult_norm_l2(2).unwrap();
        assert!(matches!(compose_norm(&f, &Operator::zeros(2, 3)), Err(Error::NotSquare { .. })));
        assert!(matches!(compose_norm(&f, &Operator::identity(3)), Err(Error::DimensionMismatch { .. })));
        let singular = Operator::from_real_rows(&[&[1.0, 2.0], &[2.0, 4.0]]);
        assert!(matches!(compose_norm(&f, &singular), Err(Error::Singular { .. })));
        // Condition number 1e12 is still numerically injective at the 1e-10 threshold.
        let mut rng = rng_from_seed(2);
        let ill = random_with_condition(&mut rng, 2, 1e9);
        assert!(compose_norm(&f, &ill).is_ok());
    }

    #[test]
    fn axioms_pass_for_constructed_norms() {
        let t = trivial_norm(NormedSpaceModel::l1(3, ScalarField::Complex).unwrap(), 2).unwrap();
        let r = check_lh_axioms(&t, &cfg(200, 1)).unwrap();
        assert!(r.passed(), "{r:?}");
        let m = mult_norm_l2(8).unwrap();
        let r = check_lh_axioms(&m, &cfg(200, 2)).unwrap();
        assert!(r.passed(), "{r:?}");
        let mut rng = rng_from_seed(4);
        let c = compose_norm(&mult_norm_l2(4).unwrap(), &random_with_condition(&mut rng, 4, 50.0)).unwrap();
        let r = check_lh_axioms(&c, &cfg(500, 3)).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn adversarial_shift_fails_positivity_with_witness() {
        let m = mult_norm_l2(8).unwrap();
        let g = adversarial_shift(&m, 0.01);
        let r = check_lh_axioms(&g, &cfg(200, 2)).unwrap();
        assert!(!r.positivity.passed());
        let w = r.positivity.witness().unwrap();
        let x = w.x.clone().unwrap();
        let h = w.vector.clone().unwrap();
        // The witness reproduces the violation.
        assert!(g.evaluate(&x).unwrap().quadratic_form(&h).re < 0.0);
        assert!(g.quadratic_form(&x, &h).unwrap() < 0.0);
    }

    #[test]
    fn boundedness_examples() {
        let t = trivial_norm(NormedSpaceModel::l2(4, ScalarField::Complex).unwrap(), 3).unwrap();
        assert!((boundedness_estimate(&t, 200, 1).unwrap() - 1.0).abs() <= 1e-15);
        for n in [4, 8, 16] {
            let m = mult_norm_l2(n).unwrap();
            assert!((boundedness_estimate(&m, 200, 9).unwrap() - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn boundedness_denser_sampling_dominates() {
        let mut rng = rng_from_seed(12);
        let c = compose_norm(&mult_norm_l2(4).unwrap(), &random_with_condition(&mut rng, 4, 10.0)).unwrap();
        let coarse = boundedness_estimate(&c, 300, 77).unwrap();
        let dense = boundedness_estimate(&c, 3000, 77).unwrap();
        assert!(coarse <= dense + 1e-9);
        let prefix: Vec<f64> = [1, 10, 100, 300].iter().map(|&n| boundedness_estimate(&c, n, 77).unwrap()).collect();
        assert!(prefix.windows(2).all(|w| w[0] <= w[1]));
    }
}
