//! Finite discretizations of the dual unit ball and the embedding
//! `β : X → C(K)`, `(βb)_i = φ_i(b)`.
//!
//! With `K` finite the embedding is isometric only when `K` contains enough
//! extreme points of the dual ball. Otherwise the loss is measured and, where
//! a covering argument is available, bounded.

use std::f64::consts::PI;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::ck::{CKValuedNorm, FiniteCK};
use crate::error::{Error, Result};
use crate::matrix::{complex_pair_lists, complex_pairs, CVector, Operator, C64};
use crate::random::{complex_gaussian, gaussian, rng_from_seed};
use crate::space::{pair, NormOracle, NormedSpaceModel, ScalarField};

/// Largest `n` for which all `2ⁿ` sign covectors are enumerated.
pub const MAX_SIGN_DIM: usize = 16;
/// Functionals whose certified dual norm exceeds `1 + CERTIFY_TOL` are rejected.
pub const CERTIFY_TOL: f64 = 1e-9;
/// Sampled maximization points used to certify user functionals.
pub const CERTIFY_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "strategy")]
pub enum DiscretizationStrategy {
    Exact,
    Sampled {
        count: usize,
        seed: u64,
    },
    UserSupplied {
        #[serde(with = "complex_pair_lists")]
        functionals: Vec<CVector>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum DiscretizationKind {
    ExactExtremePoints,
    Sampled { count: usize, seed: u64 },
    UserSupplied,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "guarantee")]
pub enum Guarantee {
    Exact,
    /// `‖b‖ - sup_i |φ_i(b)| <= epsilon ‖b‖`.
    DefectBound { epsilon: f64 },
    None,
}

impl Guarantee {
    pub fn epsilon(&self) -> Option<f64> {
        match self {
            Guarantee::Exact => Some(0.0),
            Guarantee::DefectBound { epsilon } => Some(*epsilon),
            Guarantee::None => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct DualBallDiscretization {
    pub space: NormedSpaceModel,
    pub functionals: Vec<CVector>,
    pub kind: DiscretizationKind,
    pub guarantee: Guarantee,
    /// Largest dual norm among the functionals, closed form or sampled.
    pub max_dual_norm: f64,
}

/// Serializable view of a discretization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscretizationExport {
    pub space: String,
    pub dim: usize,
    pub kind: DiscretizationKind,
    pub guarantee: Guarantee,
    #[serde(with = "complex_pair_lists")]
    pub functionals: Vec<CVector>,
}

impl DualBallDiscretization {
    pub fn len(&self) -> usize {
        self.functionals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functionals.is_empty()
    }

    pub fn export(&self) -> DiscretizationExport {
        DiscretizationExport {
            space: self.space.label().to_string(),
            dim: self.space.dim(),
            kind: self.kind.clone(),
            guarantee: self.guarantee,
            functionals: self.functionals.clone(),
        }
    }
}

fn real(v: &[f64]) -> CVector {
    v.iter().map(|&x| C64::new(x, 0.0)).collect()
}

fn negate(v: &[C64]) -> CVector {
    v.iter().map(|z| -z).collect()
}

/// Sign covectors in binary order, first coordinate most significant, `+` before `-`.
fn sign_covectors(n: usize) -> Vec<CVector> {
    (0..1usize << n)
        .map(|mask| {
            (0..n)
                .map(|i| {
                    let neg = (mask >> (n - 1 - i)) & 1 == 1;
                    C64::new(if neg { -1.0 } else { 1.0 }, 0.0)
                })
                .collect()
        })
        .collect()
}

fn exact_functionals(space: &NormedSpaceModel) -> Result<Vec<CVector>> {
    let n = space.dim();
    match space.oracle() {
        NormOracle::P(p) if *p == 1.0 => {
            if space.field() == ScalarField::Complex {
                return Err(Error::ExactUnavailable(
                    "the complex l1 dual ball has a continuum of extreme points".into(),
                ));
            }
            if n > MAX_SIGN_DIM {
                return Err(Error::ExactUnavailable(format!(
                    "sign enumeration limited to n <= {MAX_SIGN_DIM}, got {n}"
                )));
            }
            Ok(sign_covectors(n))
        }
        NormOracle::P(p) if p.is_infinite() => Ok((0..n)
            .flat_map(|i| {
                let e = space.basis_vector(i);
                let m = negate(&e);
                [e, m]
            })
            .collect()),
        NormOracle::P(p) => Err(Error::ExactUnavailable(format!(
            "no finite extreme-point set for the dual of l_{p}"
        ))),
        NormOracle::Polytope(fs) => Ok(fs
            .iter()
            .flat_map(|f| {
                let v = real(f);
                let m = negate(&v);
                [v, m]
            })
            .collect()),
        NormOracle::FunctionalSup(fs) => Ok(fs.clone()),
        NormOracle::Custom(_) => Err(Error::ExactUnavailable(format!(
            "no extreme-point enumeration for {}",
            space.label()
        ))),
    }
}

fn field_direction(field: ScalarField, n: usize, rng: &mut impl Rng) -> CVector {
    (0..n)
        .map(|_| match field {
            ScalarField::Real => C64::new(gaussian(rng), 0.0),
            ScalarField::Complex => complex_gaussian(rng),
        })
        .collect()
}

fn sampled_functionals(space: &NormedSpaceModel, count: usize, seed: u64) -> Result<(Vec<CVector>, Guarantee)> {
    if count == 0 {
        return Err(Error::InvalidArgument("sample count must be positive".into()));
    }
    let n = space.dim();
    let mut rng = rng_from_seed(seed);
    match space.oracle() {
        NormOracle::P(p) if *p == 2.0 && n == 2 && space.field() == ScalarField::Real => {
            let step = 2.0 * PI / count as f64;
            let offset = rng.random_range(0.0..step);
            let fs = (0..count)
                .map(|j| {
                    let t = offset + step * j as f64;
                    real(&[t.cos(), t.sin()])
                })
                .collect();
            let epsilon = 1.0 - (PI / count as f64).cos();
            Ok((fs, Guarantee::DefectBound { epsilon }))
        }
        NormOracle::P(_) => {
            let fs = (0..count)
                .map(|_| loop {
                    let v = field_direction(space.field(), n, &mut rng);
                    let d = space.dual_norm_exact(&v).expect("closed form exists for P oracles");
                    if d > 1e-300 {
                        break v.into_iter().map(|z| z / d).collect();
                    }
                })
                .collect();
            Ok((fs, Guarantee::None))
        }
        NormOracle::Polytope(_) | NormOracle::FunctionalSup(_) => {
            // Random convex combinations of ±extreme points stay in the dual ball.
            let ext = exact_functionals(space)?;
            let fs = (0..count)
                .map(|_| {
                    let w: Vec<f64> = (0..ext.len()).map(|_| -rng.random::<f64>().max(1e-300).ln()).collect();
                    let total: f64 = w.iter().sum();
                    let mut v = vec![C64::new(0.0, 0.0); n];
                    for (wi, e) in w.iter().zip(&ext) {
                        let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
                        for (a, b) in v.iter_mut().zip(e) {
                            *a += b * (sign * wi / total);
                        }
                    }
                    v
                })
                .collect();
            Ok((fs, Guarantee::None))
        }
        NormOracle::Custom(_) => Err(Error::ExactUnavailable(format!(
            "sampled dual covectors need a closed-form or polytope dual; {} has neither",
            space.label()
        ))),
    }
}

/// `sup_{‖x‖ = 1} |φ(x)|`: closed form for `ℓ^p`, otherwise sampled over
/// [`CERTIFY_SAMPLES`] unit points plus the normalized basis vectors.
pub fn dual_norm(space: &NormedSpaceModel, phi: &[C64], seed: u64) -> f64 {
    if let Some(d) = space.dual_norm_exact(phi) {
        return d;
    }
    let mut best: f64 = 0.0;
    for i in 0..space.dim() {
        let e = space.basis_vector(i);
        best = best.max(pair(phi, &e).norm() / space.norm(&e));
    }
    let mut rng = rng_from_seed(seed);
    for _ in 0..CERTIFY_SAMPLES {
        let u = space.sample_unit(&mut rng);
        best = best.max(pair(phi, &u).norm());
    }
    best
}

pub fn discretize_dual_ball(space: &NormedSpaceModel, strategy: &DiscretizationStrategy) -> Result<DualBallDiscretization> {
    if space.dim() == 0 {
        return Err(Error::InvalidArgument("space dimension must be positive".into()));
    }
    let (functionals, kind, guarantee) = match strategy {
        DiscretizationStrategy::Exact => (
            exact_functionals(space)?,
            DiscretizationKind::ExactExtremePoints,
            Guarantee::Exact,
        ),
        DiscretizationStrategy::Sampled { count, seed } => {
            let (fs, g) = sampled_functionals(space, *count, *seed)?;
            (fs, DiscretizationKind::Sampled { count: *count, seed: *seed }, g)
        }
        DiscretizationStrategy::UserSupplied { functionals } => {
            if functionals.is_empty() {
                return Err(Error::InvalidArgument("no functionals supplied".into()));
            }
            (functionals.clone(), DiscretizationKind::UserSupplied, Guarantee::None)
        }
    };
    let mut max_dual_norm: f64 = 0.0;
    for (index, phi) in functionals.iter().enumerate() {
        space.check_dim(phi)?;
        let d = match kind {
            DiscretizationKind::UserSupplied => {
                let d = dual_norm(space, phi, index as u64);
                if d > 1.0 + CERTIFY_TOL {
                    return Err(Error::FunctionalOutsideDualBall { index, dual_norm: d });
                }
                d
            }
            _ => space.dual_norm_exact(phi).unwrap_or(1.0),
        };
        max_dual_norm = max_dual_norm.max(d);
    }
    Ok(DualBallDiscretization {
        space: space.clone(),
        functionals,
        kind,
        guarantee,
        max_dual_norm,
    })
}

/// `(βb)_i = φ_i(b)`.
pub fn beta_embed(disc: &DualBallDiscretization, b: &[C64]) -> Result<CVector> {
    disc.space.check_dim(b)?;
    Ok(disc.functionals.iter().map(|phi| pair(phi, b)).collect())
}

/// `F(b) = M_{|βb|}` on `C(K)` with `K` the discretized dual ball.
pub fn theorem_a6_norm(disc: &DualBallDiscretization) -> CKValuedNorm {
    let labels = (0..disc.len()).map(|i| format!("phi_{i}")).collect();
    let ck = FiniteCK::new(labels).expect("discretizations are nonempty");
    let functionals = Arc::new(disc.functionals.clone());
    CKValuedNorm::new(
        disc.space.clone(),
        ck,
        format!("dual_ball_embedding({})", disc.space.label()),
        Arc::new(move |b: &[C64]| {
            let mods: Vec<f64> = functionals.iter().map(|phi| pair(phi, b).norm()).collect();
            Operator::from_real_diag(&mods)
        }),
    )
}

/// Measured isometry loss on unit-norm samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub space: String,
    pub functionals: usize,
    pub samples: usize,
    pub seed: u64,
    /// `max (‖b‖ - sup_i |φ_i(b)|)` over unit `b`.
    pub max_defect: f64,
    /// `min` of the same quantity; never below `-1e-12`.
    pub min_defect: f64,
    pub guarantee: Guarantee,
    /// True when every defect is `>= -1e-12` and, if a bound exists, `<=` it.
    pub within_guarantee: bool,
    pub note: String,
}

pub fn isometry_defect(disc: &DualBallDiscretization, samples: usize, seed: u64) -> Result<EmbeddingReport> {
    if samples == 0 {
        return Err(Error::InvalidArgument("sample count must be positive".into()));
    }
    let mut rng = rng_from_seed(seed);
    let mut max_defect = f64::NEG_INFINITY;
    let mut min_defect = f64::INFINITY;
    for _ in 0..samples {
        let b = disc.space.sample_unit(&mut rng);
        let attained = beta_embed(disc, &b)?.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let defect = disc.space.norm(&b) - attained;
        max_defect = max_defect.max(defect);
        min_defect = min_defect.min(defect);
    }
    let bound_ok = match disc.guarantee {
        Guarantee::Exact => max_defect <= 1e-12,
        Guarantee::DefectBound { epsilon } => max_defect <= epsilon + 1e-12,
        Guarantee::None => true,
    };
    let note = match disc.guarantee {
        Guarantee::Exact => "K contains the dual extreme points; the embedding is isometric".to_string(),
        Guarantee::DefectBound { epsilon } => {
            format!("finite K loses isometry; planar covering bounds the loss by {epsilon:.3e} per unit b")
        }
        Guarantee::None => "finite K loses isometry; measured defect only, no bound claimed".to_string(),
    };
    Ok(EmbeddingReport {
        space: disc.space.label().to_string(),
        functionals: disc.len(),
        samples,
        seed,
        max_defect,
        min_defect,
        guarantee: disc.guarantee,
        within_guarantee: min_defect >= -1e-12 && bound_ok,
        note,
    })
}

/// `βb` for each given point, in the standard complex-vector format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddedPoint {
    #[serde(with = "complex_pairs")]
    pub b: CVector,
    #[serde(with = "complex_pairs")]
    pub values: CVector,
}

pub fn export_embedding(disc: &DualBallDiscretization, points: &[CVector]) -> Result<Vec<EmbeddedPoint>> {
    points
        .iter()
        .map(|b| {
            Ok(EmbeddedPoint {
                b: b.clone(),
                values: beta_embed(disc, b)?,
            })
        })
        .collect()
}
