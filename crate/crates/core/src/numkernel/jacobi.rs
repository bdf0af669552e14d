//! Cyclic complex Jacobi for Hermitian matrices.

use crate::error::{Error, Result};
use crate::matrix::{Operator, C64, ZERO};

use super::{EigenDecomposition, HERM_TOL};

const MAX_SWEEPS: usize = 100;

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
///
/// The input is symmetrized as `(M + Mᴴ)/2` after the Hermitian check, so
/// entries within `herm_tol` of Hermitian are accepted.
pub fn hermitian_eig(m: &Operator) -> Result<EigenDecomposition> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let threshold = HERM_TOL * m.max_abs().max(1.0);
    let residual = m.hermitian_residual();
    if residual > threshold {
        return Err(Error::NotHermitian {
            residual,
            threshold,
        });
    }
    let n = m.rows();
    let mut a = m.hermitian_part();
    let mut u = Operator::identity(n);

    let total = a.frobenius_norm();
    let target = f64::EPSILON * total;
    let mut sweeps = 0;
    loop {
        let off = a.off_diagonal_norm();
        if off <= target || off == 0.0 {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_diagonal: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut u, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let eigenvalues = order.iter().map(|&i| diag[i]).collect();
    let basis = Operator::from_fn(n, n, |i, j| u.get(i, order[j]));
    Ok(EigenDecomposition { eigenvalues, basis })
}

/// Annihilates `a[p][q]` with a unitary plane rotation `V`, updating
/// `a ← Vᴴ a V` and `u ← u V`.
fn rotate(a: &mut Operator, u: &mut Operator, p: usize, q: usize) {
    let b = a.get(p, q);
    let babs = b.norm();
    if babs == 0.0 {
        return;
    }
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    // Tiny couplings relative to both diagonal entries can be dropped.
    if babs < f64::EPSILON * 1e-2 * (app.abs() + aqq.abs()) {
        a.set(p, q, ZERO);
        a.set(q, p, ZERO);
        return;
    }
    let phase = b / babs;
    let theta = (aqq - app) / (2.0 * babs);
    let t = if theta == 0.0 {
        1.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let ph_conj = phase.conj();
    // Columns of V restricted to (p, q).
    let v_pp = C64::new(c, 0.0);
    let v_qp = -ph_conj * s;
    let v_pq = C64::new(s, 0.0);
    let v_qq = ph_conj * c;
    let n = a.rows();

    for k in 0..n {
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set(k, p, akp * v_pp + akq * v_qp);
        a.set(k, q, akp * v_pq + akq * v_qq);
    }
    for k in 0..n {
        let apk = a.get(p, k);
        let aqk = a.get(q, k);
        a.set(p, k, v_pp.conj() * apk + v_qp.conj() * aqk);
        a.set(q, k, v_pq.conj() * apk + v_qq.conj() * aqk);
    }
    a.set(p, q, ZERO);
    a.set(q, p, ZERO);
    let dp = a.get(p, p).re;
    let dq = a.get(q, q).re;
    a.set(p, p, C64::new(dp, 0.0));
    a.set(q, q, C64::new(dq, 0.0));

    for k in 0..u.rows() {
        let ukp = u.get(k, p);
        let ukq = u.get(k, q);
        u.set(k, p, ukp * v_pp + ukq * v_qp);
        u.set(k, q, ukp * v_pq + ukq * v_qq);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ONE;
    use crate::random::{gaussian_matrix, rng_from_seed};

    #[test]
    fn diagonal_input_sorted_with_permutation_basis() {
        let e = hermitian_eig(&Operator::from_real_diag(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0, 2.0, 3.0]);
        // Column 0 must be e_2 (the slot holding 1), etc.
        assert_eq!(e.basis.get(1, 0), ONE);
        assert_eq!(e.basis.get(2, 1), ONE);
        assert_eq!(e.basis.get(0, 2), ONE);
    }

    #[test]
    fn identity_any_dimension() {
        for d in 0..6 {
            let e = hermitian_eig(&Operator::identity(d)).unwrap();
            assert!(e.eigenvalues.iter().all(|&l| l == 1.0));
            assert_eq!(e.basis, Operator::identity(d));
        }
    }

    #[test]
    fn gram_matrix_is_psd_and_reconstructs() {
        let mut rng = rng_from_seed(11);
        let a = gaussian_matrix(&mut rng, 5, 5);
        let m = &a.adjoint() * &a;
        let e = hermitian_eig(&m).unwrap();
        assert!(e.eigenvalues.iter().all(|&l| l >= -1e-10));
        assert!(e.reconstruction_residual(&m) <= 1e-10 * m.max_abs().max(1.0));
        assert!(e.unitarity_residual() <= 1e-10);
    }

    #[test]
    fn rejects_non_square_and_non_hermitian() {
        assert!(matches!(
            hermitian_eig(&Operator::zeros(2, 3)),
            Err(Error::NotSquare { .. })
        ));
        let m = Operator::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(hermitian_eig(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn accepts_roundoff_level_asymmetry() {
        let m = Operator::from_real_rows(&[&[1.0, 0.5 + 1e-13], &[0.5, 2.0]]);
        assert!(hermitian_eig(&m).is_ok());
    }
}
