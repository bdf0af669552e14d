//! Joint diagonalization of commuting normal matrices.
//!
//! A random real combination of the generators' Hermitian and skew parts is
//! eigendecomposed; if its basis leaves off-diagonal residue in some
//! generator (eigenvalue collisions), a fresh combination is drawn. After
//! [`MAX_RETRIES`] failed draws, clusters of the last basis are refined
//! block by block against each part in turn.

use rand::Rng;

use crate::error::{Error, Result};
use crate::matrix::{CVector, Operator};
use crate::random::{gaussian, rng_from_seed};

use super::{commutator_norm, hermitian_eig, is_normal_residual, spectral_norm};

pub const MAX_RETRIES: usize = 5;
const CLUSTER_GAP: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct JointDiagonalization {
    /// Unitary whose columns diagonalize every generator.
    pub basis: Operator,
    /// `diag(Uᴴ G U)` for each generator, in generator order.
    pub diagonals: Vec<CVector>,
    /// Number of random combinations drawn.
    pub attempts: usize,
    /// Whether block refinement was needed.
    pub refined: bool,
}

impl JointDiagonalization {
    /// Largest Frobenius norm of the off-diagonal part of `Uᴴ G U`, scaled by
    /// `max(1, ‖G‖)`.
    pub fn worst_residual(&self, generators: &[Operator]) -> f64 {
        generators
            .iter()
            .map(|g| scaled_off_diagonal(&self.basis, g))
            .fold(0.0, f64::max)
    }
}

fn scaled_off_diagonal(u: &Operator, g: &Operator) -> f64 {
    let d = &(&u.adjoint() * g) * u;
    let scale = spectral_norm(g).unwrap_or(0.0).max(1.0);
    d.off_diagonal_norm() / scale
}

pub fn simultaneous_diagonalize(
    generators: &[Operator],
    tol: f64,
    seed: u64,
) -> Result<JointDiagonalization> {
    let dim = match generators.first() {
        Some(g) => g.rows(),
        None => {
            return Ok(JointDiagonalization {
                basis: Operator::identity(0),
                diagonals: Vec::new(),
                attempts: 0,
                refined: false,
            })
        }
    };
    for g in generators {
        if !g.is_square() {
            return Err(Error::NotSquare {
                rows: g.rows(),
                cols: g.cols(),
            });
        }
        if g.rows() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: g.rows(),
            });
        }
    }
    for (i, g) in generators.iter().enumerate() {
        let (residual, threshold) = is_normal_residual(g, tol);
        if residual > threshold {
            return Err(Error::NotNormal {
                index: Some(i),
                residual,
            });
        }
    }
    for i in 0..generators.len() {
        for j in (i + 1)..generators.len() {
            let (a, b) = (&generators[i], &generators[j]);
            let residual = commutator_norm(a, b);
            let scale = (spectral_norm(a)? * spectral_norm(b)?).max(1.0);
            if residual > tol * scale {
                return Err(Error::NotCommuting {
                    first: i,
                    second: j,
                    residual,
                });
            }
        }
    }

    let parts: Vec<Operator> = generators
        .iter()
        .flat_map(|g| [g.hermitian_part(), g.skew_part()])
        .collect();
    let mut rng = rng_from_seed(seed);
    let mut attempts = 0;
    let mut last = None;
    while attempts <= MAX_RETRIES {
        attempts += 1;
        let combo = random_combination(&parts, &mut rng);
        let eig = hermitian_eig(&combo)?;
        let ok = generators
            .iter()
            .all(|g| scaled_off_diagonal(&eig.basis, g) <= tol);
        if ok {
            return Ok(finish(eig.basis, generators, attempts, false));
        }
        last = Some(eig);
    }

    let eig = last.expect("at least one attempt");
    let basis = refine(eig.basis, cluster(&eig.eigenvalues), &parts)?;
    let result = finish(basis, generators, attempts, true);
    let worst = result.worst_residual(generators);
    if worst > tol {
        return Err(Error::NoConvergence {
            sweeps: attempts,
            off_diagonal: worst,
        });
    }
    Ok(result)
}

/// Splits each cluster of columns of `basis` by eigendecomposing every
/// Hermitian part compressed to the cluster, in order.
fn refine(mut basis: Operator, mut clusters: Vec<Vec<usize>>, parts: &[Operator]) -> Result<Operator> {
    let dim = basis.rows();
    for part in parts {
        let mut next = Vec::new();
        for block in clusters {
            if block.len() == 1 {
                next.push(block);
                continue;
            }
            let cols: Vec<CVector> = block.iter().map(|&c| basis.column(c)).collect();
            let ub = Operator::from_columns(dim, &cols);
            let compressed = &(&ub.adjoint() * part) * &ub;
            let sub = hermitian_eig(&compressed.hermitian_part())?;
            let rotated = &ub * &sub.basis;
            for (k, &c) in block.iter().enumerate() {
                for i in 0..dim {
                    basis.set(i, c, rotated.get(i, k));
                }
            }
            for group in cluster(&sub.eigenvalues) {
                next.push(group.into_iter().map(|k| block[k]).collect());
            }
        }
        clusters = next;
    }
    Ok(basis)
}

fn random_combination(parts: &[Operator], rng: &mut impl Rng) -> Operator {
    let n = parts[0].rows();
    let mut acc = Operator::zeros(n, n);
    for p in parts {
        acc = &acc + &p.scale_real(gaussian(rng));
    }
    acc
}

/// Groups indices of ascending values whose consecutive gaps are below
/// `CLUSTER_GAP * max(1, |λ|)`.
fn cluster(sorted: &[f64]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for (i, &l) in sorted.iter().enumerate() {
        match out.last_mut() {
            Some(group) if (l - sorted[i - 1]).abs() < CLUSTER_GAP * l.abs().max(1.0) => group.push(i),
            _ => out.push(vec![i]),
        }
    }
    out
}

fn finish(basis: Operator, generators: &[Operator], attempts: usize, refined: bool) -> JointDiagonalization {
    let adj = basis.adjoint();
    let diagonals = generators
        .iter()
        .map(|g| (&(&adj * g) * &basis).diagonal())
        .collect();
    JointDiagonalization {
        basis,
        diagonals,
        attempts,
        refined,
    }
}
