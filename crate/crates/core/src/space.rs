//! Finite-dimensional normed spaces.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{CVector, Operator, C64};
use crate::numkernel::hermitian_eig;
use crate::random::{gaussian_vector, real_gaussian_vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalarField {
    Real,
    Complex,
}

pub type NormFn = Arc<dyn Fn(&[C64]) -> f64 + Send + Sync>;

/// How the norm of a vector is computed.
///
/// Functionals act by the bilinear pairing `φ(x) = Σ φ_i x_i`.
#[derive(Clone)]
pub enum NormOracle {
    /// `ℓ^p` with `p ∈ [1, ∞]`.
    P(f64),
    /// `max_j |ψ_j(x)|` over real dual extreme functionals `ψ_j`.
    Polytope(Vec<Vec<f64>>),
    /// `max_j |φ_j(x)|` over complex functionals.
    FunctionalSup(Vec<CVector>),
    /// Arbitrary norm supplied as a closure.
    Custom(NormFn),
}

impl fmt::Debug for NormOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormOracle::P(p) => write!(f, "P({p})"),
            NormOracle::Polytope(v) => write!(f, "Polytope({} functionals)", v.len()),
            NormOracle::FunctionalSup(v) => write!(f, "FunctionalSup({} functionals)", v.len()),
            NormOracle::Custom(_) => write!(f, "Custom"),
        }
    }
}

/// `ℂ^n` or `ℝ^n` with a norm oracle.
#[derive(Debug, Clone)]
pub struct NormedSpaceModel {
    dim: usize,
    field: ScalarField,
    oracle: NormOracle,
    label: String,
}

impl NormedSpaceModel {
    pub fn lp(dim: usize, p: f64, field: ScalarField) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("space dimension must be positive".into()));
        }
        if !(p >= 1.0) {
            return Err(Error::InvalidArgument(format!("p must lie in [1, inf], got {p}")));
        }
        let label = if p.is_infinite() {
            format!("l_inf^{dim}")
        } else {
            format!("l_{p}^{dim}")
        };
        Ok(Self {
            dim,
            field,
            oracle: NormOracle::P(p),
            label,
        })
    }

    pub fn l1(dim: usize, field: ScalarField) -> Result<Self> {
        Self::lp(dim, 1.0, field)
    }

    pub fn l2(dim: usize, field: ScalarField) -> Result<Self> {
        Self::lp(dim, 2.0, field)
    }

    pub fn linf(dim: usize, field: ScalarField) -> Result<Self> {
        Self::lp(dim, f64::INFINITY, field)
    }

    /// Real polytope norm `max_j |ψ_j · x|`. The functionals must span the
    /// dual space, otherwise the result would only be a seminorm.
    pub fn polytope(dim: usize, functionals: Vec<Vec<f64>>) -> Result<Self> {
        if functionals.iter().any(|f| f.len() != dim) {
            return Err(Error::InvalidArgument("functional length differs from dimension".into()));
        }
        let complex: Vec<CVector> = functionals
            .iter()
            .map(|f| f.iter().map(|&v| C64::new(v, 0.0)).collect())
            .collect();
        check_spanning(dim, &complex)?;
        Ok(Self {
            dim,
            field: ScalarField::Real,
            oracle: NormOracle::Polytope(functionals),
            label: format!("polytope^{dim}"),
        })
    }

    pub fn functional_sup(dim: usize, functionals: Vec<CVector>, field: ScalarField) -> Result<Self> {
        if functionals.iter().any(|f| f.len() != dim) {
            return Err(Error::InvalidArgument("functional length differs from dimension".into()));
        }
        check_spanning(dim, &functionals)?;
        Ok(Self {
            dim,
            field,
            oracle: NormOracle::FunctionalSup(functionals),
            label: format!("functional_sup^{dim}"),
        })
    }

    pub fn custom(dim: usize, field: ScalarField, label: impl Into<String>, norm: NormFn) -> Self {
        Self {
            dim,
            field,
            oracle: NormOracle::Custom(norm),
            label: label.into(),
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> ScalarField {
        self.field
    }

    pub fn oracle(&self) -> &NormOracle {
        &self.oracle
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `p` when the oracle is an `ℓ^p` norm.
    pub fn p(&self) -> Option<f64> {
        match self.oracle {
            NormOracle::P(p) => Some(p),
            _ => None,
        }
    }

    pub fn norm(&self, x: &[C64]) -> f64 {
        assert_eq!(x.len(), self.dim, "vector dimension differs from space dimension");
        match &self.oracle {
            NormOracle::P(p) => lp_norm(x, *p),
            NormOracle::Polytope(fs) => fs
                .iter()
                .map(|f| f.iter().zip(x).map(|(a, b)| b * *a).sum::<C64>().norm())
                .fold(0.0, f64::max),
            NormOracle::FunctionalSup(fs) => fs
                .iter()
                .map(|f| pair(f, x).norm())
                .fold(0.0, f64::max),
            NormOracle::Custom(n) => n(x),
        }
    }

    pub fn check_dim(&self, x: &[C64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        Ok(())
    }

    /// Gaussian direction in the space's scalar field.
    pub fn sample_direction(&self, rng: &mut impl Rng) -> CVector {
        match self.field {
            ScalarField::Real => real_gaussian_vector(rng, self.dim),
            ScalarField::Complex => gaussian_vector(rng, self.dim),
        }
    }

    /// Point on the unit sphere `‖x‖ = 1` of this norm.
    pub fn sample_unit(&self, rng: &mut impl Rng) -> CVector {
        loop {
            let v = self.sample_direction(rng);
            let n = self.norm(&v);
            if n > 1e-300 {
                return v.into_iter().map(|z| z / n).collect();
            }
        }
    }

    /// Point with log-uniform norm in `[10^-3, 10^3]`.
    pub fn sample_point(&self, rng: &mut impl Rng) -> CVector {
        let u = self.sample_unit(rng);
        let r = 10f64.powf(rng.random_range(-3.0..3.0));
        u.into_iter().map(|z| z * r).collect()
    }

    /// Scalar drawn from the space's field.
    pub fn sample_scalar(&self, rng: &mut impl Rng) -> C64 {
        match self.field {
            ScalarField::Real => C64::new(crate::random::gaussian(rng) * 2.0, 0.0),
            ScalarField::Complex => crate::random::complex_gaussian(rng) * 2.0,
        }
    }

    pub fn basis_vector(&self, i: usize) -> CVector {
        let mut e = vec![C64::new(0.0, 0.0); self.dim];
        e[i] = C64::new(1.0, 0.0);
        e
    }

    /// Closed-form dual norm `sup_{‖x‖ <= 1} |φ(x)|` when available.
    pub fn dual_norm_exact(&self, phi: &[C64]) -> Option<f64> {
        match self.oracle {
            NormOracle::P(p) => {
                let q = if p == 1.0 {
                    f64::INFINITY
                } else if p.is_infinite() {
                    1.0
                } else {
                    p / (p - 1.0)
                };
                Some(lp_norm(phi, q))
            }
            _ => None,
        }
    }
}

/// `φ(x) = Σ φ_i x_i`.
pub fn pair(phi: &[C64], x: &[C64]) -> C64 {
    phi.iter().zip(x).map(|(a, b)| a * b).sum()
}

pub fn lp_norm(x: &[C64], p: f64) -> f64 {
    if p.is_infinite() {
        x.iter().map(|z| z.norm()).fold(0.0, f64::max)
    } else if p == 1.0 {
        x.iter().map(|z| z.norm()).sum()
    } else if p == 2.0 {
        x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    } else {
        let m = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if m == 0.0 {
            return 0.0;
        }
        m * x.iter().map(|z| (z.norm() / m).powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

fn check_spanning(dim: usize, functionals: &[CVector]) -> Result<()> {
    if dim == 0 {
        return Err(Error::InvalidArgument("space dimension must be positive".into()));
    }
    let gram = Operator::from_fn(dim, dim, |i, j| {
        functionals.iter().map(|f| f[i].conj() * f[j]).sum()
    });
    let eig = hermitian_eig(&gram)?;
    let lmax = eig.max_abs_eigenvalue();
    let lmin = eig.min_eigenvalue().unwrap_or(0.0);
    if lmax == 0.0 || lmin <= 1e-12 * lmax {
        return Err(Error::InvalidArgument(
            "functionals do not span the dual space; the result would not be definite".into(),
        ));
    }
    Ok(())
}
