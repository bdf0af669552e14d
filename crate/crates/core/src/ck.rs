//! `L(C(K))`-valued norms for a finite point set `K`.
//!
//! Functions on `K` are complex `k`-vectors with the sup norm. An operator is
//! positive when it maps the nonnegative cone into itself, which for finite
//! `K` happens exactly when its matrix is entrywise real and nonnegative.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{modulus, CVector, Operator, C64};
use crate::ovnorm::{
    check_definiteness, check_homogeneity, sample_pairs, sample_points, streams, AxiomConfig, Codomain,
    OperatorValuedNorm,
};
use crate::random::{derive_seed, rng_from_seed};
use crate::report::{AxiomReport, StatusBuilder, Witness};
use crate::space::{NormedSpaceModel, ScalarField};

/// A finite compact space: `k` labelled points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteCK {
    labels: Vec<String>,
}

impl FiniteCK {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidArgument("K must have at least one point".into()));
        }
        Ok(Self { labels })
    }

    /// `k` equally spaced points of `[0, 1]`.
    pub fn unit_interval_grid(k: usize) -> Result<Self> {
        let labels = (0..k)
            .map(|i| {
                let t = if k > 1 { i as f64 / (k - 1) as f64 } else { 0.0 };
                format!("t={t}")
            })
            .collect();
        Self::new(labels)
    }

    pub fn point_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn sup_norm(f: &[C64]) -> f64 {
        f.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

pub type CkEvaluator = Arc<dyn Fn(&[C64]) -> Operator + Send + Sync>;

#[derive(Clone)]
pub struct CKValuedNorm {
    domain: NormedSpaceModel,
    ck: FiniteCK,
    evaluator: CkEvaluator,
    descriptor: String,
}

impl fmt::Debug for CKValuedNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CKValuedNorm")
            .field("domain", &self.domain.label())
            .field("points", &self.ck.point_count())
            .field("descriptor", &self.descriptor)
            .finish()
    }
}

impl CKValuedNorm {
    pub fn new(
        domain: NormedSpaceModel,
        ck: FiniteCK,
        descriptor: impl Into<String>,
        evaluator: CkEvaluator,
    ) -> Self {
        Self {
            domain,
            ck,
            evaluator,
            descriptor: descriptor.into(),
        }
    }

    pub fn ck(&self) -> &FiniteCK {
        &self.ck
    }

    /// Same norm with a different evaluator; used to build adversarial variants.
    pub fn map_evaluator(&self, descriptor: impl Into<String>, f: impl Fn(&[C64], Operator) -> Operator + Send + Sync + 'static) -> Self {
        let inner = self.evaluator.clone();
        Self {
            domain: self.domain.clone(),
            ck: self.ck.clone(),
            evaluator: Arc::new(move |x| f(x, inner(x))),
            descriptor: descriptor.into(),
        }
    }
}

impl OperatorValuedNorm for CKValuedNorm {
    fn domain(&self) -> &NormedSpaceModel {
        &self.domain
    }

    fn codomain(&self) -> Codomain {
        Codomain::ContinuousFunctions {
            points: self.ck.point_count(),
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
        op_norm_sup(value).unwrap_or(0.0)
    }
}

/// Outcome of [`cone_preserving`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConeCheck {
    pub preserving: bool,
    /// Most negative real part, or largest imaginary magnitude, relative to
    /// the allowed threshold: positive means violated.
    pub worst_violation: f64,
    pub threshold: f64,
    /// Basis function `e_j` whose image leaves the cone.
    pub witness_column: Option<usize>,
}

/// Whether `T` maps nonnegative functions on `K` to nonnegative functions:
/// every entry has real part `>= -tol·s` and imaginary part within `±tol·s`,
/// where `s = max(1, max |T_ij|)`.
pub fn cone_preserving(t: &Operator, tol: f64) -> Result<ConeCheck> {
    if !t.is_square() {
        return Err(Error::NotSquare {
            rows: t.rows(),
            cols: t.cols(),
        });
    }
    let threshold = tol * t.max_abs().max(1.0);
    let cols = t.cols();
    let violation = |z: &C64| (-z.re).max(z.im.abs());
    let worst = t.data().iter().map(violation).fold(f64::NEG_INFINITY, f64::max);
    let witness = if worst > threshold {
        t.data()
            .iter()
            .enumerate()
            .filter(|(_, z)| violation(z) > threshold)
            .map(|(idx, _)| idx % cols)
            .min()
    } else {
        None
    };
    Ok(ConeCheck {
        preserving: witness.is_none(),
        worst_violation: worst,
        threshold,
        witness_column: witness,
    })
}

/// Operator norm induced by the sup norm: the largest absolute row sum.
pub fn op_norm_sup(t: &Operator) -> Result<f64> {
    if !t.is_square() {
        return Err(Error::NotSquare {
            rows: t.rows(),
            cols: t.cols(),
        });
    }
    if t.cols() == 0 {
        return Ok(0.0);
    }
    Ok(t.data()
        .chunks(t.cols())
        .map(|row| row.iter().map(|z| modulus(*z)).sum::<f64>())
        .fold(0.0, f64::max))
}

/// `F(g) = diag(|g_1|, ..., |g_k|)` on `C(K)` for the `k`-point grid of
/// `[0, 1]`, with the domain of bounded grid functions under the sup norm.
pub fn mult_norm_ck(grid_size: usize) -> Result<CKValuedNorm> {
    let ck = FiniteCK::unit_interval_grid(grid_size)?;
    let domain = NormedSpaceModel::linf(grid_size, ScalarField::Complex)?
        .with_label(format!("bounded functions on {grid_size}-point grid of [0,1]"));
    Ok(CKValuedNorm::new(
        domain,
        ck,
        format!("mult_norm_ck(k={grid_size})"),
        Arc::new(|g| Operator::from_real_diag(&g.iter().map(|z| z.norm()).collect::<Vec<_>>())),
    ))
}

/// Nonnegative test function: a scaled basis function a quarter of the
/// time, otherwise a random sparse nonnegative vector.
pub fn sample_nonnegative(rng: &mut impl Rng, k: usize) -> CVector {
    if rng.random_bool(0.25) {
        let mut f = vec![C64::new(0.0, 0.0); k];
        f[rng.random_range(0..k)] = C64::new(rng.random_range(0.1..1.0), 0.0);
        return f;
    }
    let density: f64 = rng.random_range(0.2..1.0);
    (0..k)
        .map(|_| {
            if rng.random_bool(density) {
                C64::new(rng.random_range(0.0..1.0), 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
        .collect()
}

/// Samples the four defining properties of an `L(C(K))`-valued norm.
///
/// Positivity is cone preservation of `F(x)`. The triangle property uses
/// cone preservation of `F(x) + F(y) - F(x+y)` when that holds and falls
/// back to `f_samples` nonnegative test functions otherwise.
pub fn check_ck_axioms(f: &CKValuedNorm, cfg: &AxiomConfig, f_samples: usize) -> Result<AxiomReport> {
    let points = sample_points(&f.domain, cfg.samples, derive_seed(cfg.seed, streams::POINTS));
    let pairs = sample_pairs(&f.domain, cfg.pairs, derive_seed(cfg.seed, streams::PAIRS));
    let k = f.ck.point_count();

    let mut positivity = StatusBuilder::default();
    for (i, x) in points.iter().enumerate() {
        let fx = f.evaluate(x)?;
        let c = cone_preserving(&fx, cfg.tol)?;
        positivity.record(c.worst_violation, c.threshold, || {
            let mut w = Witness::new(i, "F(x) maps a nonnegative function outside the cone").with_x(x);
            if let Some(j) = c.witness_column {
                let mut e = vec![C64::new(0.0, 0.0); k];
                e[j] = C64::new(1.0, 0.0);
                w = w.with_vector(&e);
            }
            w
        });
    }

    let mut rng = rng_from_seed(derive_seed(cfg.seed, streams::TEST_FUNCTIONS));
    let mut triangle = StatusBuilder::default();
    let mut by_cone = 0usize;
    let mut by_samples = 0usize;
    for (i, (x, y)) in pairs.iter().enumerate() {
        let fx = f.evaluate(x)?;
        let fy = f.evaluate(y)?;
        let sum: CVector = x.iter().zip(y).map(|(a, b)| a + b).collect();
        let fs = f.evaluate(&sum)?;
        let scale = (f.value_norm(&fx) + f.value_norm(&fy)).max(1.0);
        let bound = cfg.tol * scale;
        let cone_worst = fx
            .data()
            .iter()
            .zip(fy.data())
            .zip(fs.data())
            .map(|((a, b), c)| {
                let z = a + b - c;
                (-z.re).max(z.im.abs())
            })
            .fold(f64::NEG_INFINITY, f64::max);
        if cone_worst <= bound {
            by_cone += 1;
            triangle.record(cone_worst.max(0.0), bound, Witness::default);
            continue;
        }
        let gap = &(&fx + &fy) - &fs;
        by_samples += 1;
        let mut worst = f64::NEG_INFINITY;
        let mut bad: Option<CVector> = None;
        for _ in 0..f_samples {
            let test = sample_nonnegative(&mut rng, k);
            let out = gap.mul_vec(&test);
            let ft = FiniteCK::sup_norm(&test).max(1e-300);
            let v = out
                .iter()
                .map(|z| (-z.re).max(z.im.abs()) / ft)
                .fold(f64::NEG_INFINITY, f64::max);
            if v > worst {
                worst = v;
                if v > bound {
                    bad = Some(test);
                }
            }
        }
        triangle.record(worst.max(0.0), bound, || {
            let mut w = Witness::new(i, "(F(x)+F(y)-F(x+y)) f leaves the cone for a nonnegative f")
                .with_x(x)
                .with_y(y);
            if let Some(t) = &bad {
                w = w.with_vector(t);
            }
            w
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
        notes: vec![
            format!("triangle certified by cone preservation on {by_cone} pairs, by {f_samples} sampled test functions on {by_samples} pairs"),
            format!(
                "sample-based: no violation found on {} points and {} pairs is not a proof",
                cfg.samples, cfg.pairs
            ),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::gaussian_vector;

    #[test]
    fn cone_examples() {
        assert!(cone_preserving(&Operator::identity(3), 1e-12).unwrap().preserving);
        let t = Operator::from_real_rows(&[&[1.0, -0.5], &[0.0, 1.0]]);
        let c = cone_preserving(&t, 1e-12).unwrap();
        assert!(!c.preserving);
        assert_eq!(c.witness_column, Some(1));
        let mut z = Operator::identity(2);
        z.set(0, 1, C64::new(0.0, 0.3));
        assert!(!cone_preserving(&z, 1e-12).unwrap().preserving);
        assert!(cone_preserving(&Operator::zeros(2, 3), 1e-12).is_err());
    }

    #[test]
    fn op_norm_sup_examples() {
        assert_eq!(op_norm_sup(&Operator::from_real_diag(&[1.0, -4.0, 2.0])).unwrap(), 4.0);
        let ones = Operator::from_fn(3, 3, |_, _| C64::new(1.0, 0.0));
        assert_eq!(op_norm_sup(&ones).unwrap(), 3.0);
        assert!(op_norm_sup(&Operator::zeros(1, 2)).is_err());
    }

    #[test]
    fn mult_norm_ck_examples() {
        let f = mult_norm_ck(5).unwrap();
        let ones = vec![C64::new(1.0, 0.0); 5];
        assert_eq!(f.evaluate(&ones).unwrap(), Operator::identity(5));
        assert_eq!(f.norm_at(&ones).unwrap(), 1.0);
        assert_eq!(f.evaluate(&vec![C64::new(0.0, 0.0); 5]).unwrap(), Operator::zeros(5, 5));
        let mut rng = rng_from_seed(3);
        for _ in 0..100 {
            let g = gaussian_vector(&mut rng, 5);
            assert_eq!(f.norm_at(&g).unwrap(), FiniteCK::sup_norm(&g));
        }
        assert_eq!(f.ck().labels()[4], "t=1");
    }

    #[test]
    fn mult_norm_ck_passes_axioms_with_cone_route() {
        let f = mult_norm_ck(8).unwrap();
        let r = check_ck_axioms(&f, &AxiomConfig::new(200, 5, 1e-9), 50).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.notes[0].contains("on 200 pairs, by 50"));
    }

    #[test]
    fn negative_diagonal_entry_fails_positivity() {
        let f = mult_norm_ck(4).unwrap();
        let bad = f.map_evaluator("negated slot", |x, mut v| {
            if x.iter().any(|z| z.norm() > 0.0) {
                let d = v.get(2, 2);
                v.set(2, 2, -d);
            }
            v
        });
        let r = check_ck_axioms(&bad, &AxiomConfig::new(50, 5, 1e-9), 20).unwrap();
        assert!(!r.positivity.passed());
        let w = r.positivity.witness().unwrap();
        let e = w.vector.clone().unwrap();
        let out = bad.evaluate(w.x.as_ref().unwrap()).unwrap().mul_vec(&e);
        assert!(out.iter().any(|z| z.re < 0.0));
    }

    #[test]
    fn sampled_triangle_route_catches_violations() {
        // Evaluator whose triangle gap has a negative off-diagonal entry.
        let f = mult_norm_ck(3).unwrap();
        let skew = f.map_evaluator("skewed", |x, mut v| {
            // A quadratic entry makes the gap negative for roughly aligned x, y.
            let s: f64 = x.iter().map(|z| z.norm()).sum();
            v.set(0, 1, C64::new(s * s, 0.0));
            v
        });
        let r = check_ck_axioms(&skew, &AxiomConfig::new(50, 1, 1e-9), 200).unwrap();
        assert!(!r.triangle.passed());
        assert!(r.triangle.witness().unwrap().vector.is_some());
    }
}
