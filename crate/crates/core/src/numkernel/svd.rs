//! One-sided (Hestenes) Jacobi singular values.
//!
//! Column pairs of `A V` are orthogonalized until every pair is orthogonal
//! to working precision. Small singular values keep absolute accuracy of
//! order `eps * ‖A‖`, which the injectivity test in `compose_norm` needs.

use crate::error::{Error, Result};
use crate::matrix::{vec_dot, vec_norm2, CVector, Operator, C64};

const MAX_SWEEPS: usize = 80;

/// Singular values (descending) with matching right singular vectors.
#[derive(Debug, Clone)]
pub struct SingularValues {
    pub values: Vec<f64>,
    /// Columns are right singular vectors, ordered like `values`.
    pub right_vectors: Operator,
}

pub fn singular_values(m: &Operator) -> Result<SingularValues> {
    if m.is_empty() {
        return Err(Error::EmptyMatrix);
    }
    let n = m.cols();
    let mut cols: Vec<CVector> = (0..n).map(|j| m.column(j)).collect();
    let mut v: Vec<CVector> = (0..n)
        .map(|j| {
            let mut e = vec![C64::new(0.0, 0.0); n];
            e[j] = C64::new(1.0, 0.0);
            e
        })
        .collect();

    // Columns below this squared norm are numerically zero.
    let negligible = (10.0 * n as f64 * f64::EPSILON * m.frobenius_norm()).powi(2);
    // Rounding in the inner product alone is of order rows * eps.
    let orthogonal = m.rows() as f64 * f64::EPSILON;
    let mut converged = false;
    let mut sweeps = 0;
    while sweeps < MAX_SWEEPS {
        sweeps += 1;
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                if alpha <= negligible || beta <= negligible {
                    continue;
                }
                let gamma = vec_dot(&cols[p], &cols[q]);
                let gabs = gamma.norm();
                if gabs <= orthogonal * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase_conj = (gamma / gabs).conj();
                let zeta = (beta - alpha) / (2.0 * gabs);
                let t = if zeta == 0.0 {
                    1.0
                } else {
                    zeta.signum() / (zeta.abs() + (zeta * zeta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                apply(&mut cols, p, q, c, s, phase_conj);
                apply(&mut v, p, q, c, s, phase_conj);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        let off = off_orthogonality(&cols);
        return Err(Error::NoConvergence {
            sweeps,
            off_diagonal: off,
        });
    }

    let norms: Vec<f64> = cols.iter().map(|c| vec_norm2(c)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let values = order.iter().map(|&i| norms[i]).collect();
    let ordered: Vec<CVector> = order.iter().map(|&i| v[i].clone()).collect();
    Ok(SingularValues {
        values,
        right_vectors: Operator::from_columns(n, &ordered),
    })
}

/// `(col_p, col_q) ← (c col_p - s ē col_q, s col_p + c ē col_q)`.
fn apply(cols: &mut [CVector], p: usize, q: usize, c: f64, s: f64, phase_conj: C64) {
    let (left, right) = cols.split_at_mut(q);
    let cp = &mut left[p];
    let cq = &mut right[0];
    for (a, b) in cp.iter_mut().zip(cq.iter_mut()) {
        let x = *a;
        let y = *b * phase_conj;
        *a = x * c - y * s;
        *b = x * s + y * c;
    }
}

fn off_orthogonality(cols: &[CVector]) -> f64 {
    let mut worst: f64 = 0.0;
    for p in 0..cols.len() {
        for q in (p + 1)..cols.len() {
            let d = vec_norm2(&cols[p]) * vec_norm2(&cols[q]);
            if d > 0.0 {
                worst = worst.max(vec_dot(&cols[p], &cols[q]).norm() / d);
            }
        }
    }
    worst
}
