//! Reference implementations that share no code with the library kernels.

#![allow(dead_code)]

use opnorm_core::{Operator, C64};
use rand::Rng;

/// Pivoted Cholesky on a Hermitian matrix. Returns false as soon as a pivot is
/// below `-tol`, or the remaining block is not numerically zero once the
/// largest pivot is at most `tol`.
pub fn cholesky_psd(m: &Operator, tol: f64) -> bool {
    let n = m.rows();
    let mut a: Vec<Vec<C64>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j)).collect()).collect();
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let (pos, &p) = active
            .iter()
            .enumerate()
            .max_by(|x, y| a[*x.1][*x.1].re.total_cmp(&a[*y.1][*y.1].re))
            .unwrap();
        let d = a[p][p].re;
        if d < -tol {
            return false;
        }
        if d <= tol {
            return active.iter().all(|&i| active.iter().all(|&j| a[i][j].norm() <= tol));
        }
        active.swap_remove(pos);
        for &i in &active {
            for &j in &active {
                let upd = a[i][p] * a[p][j] / d;
                a[i][j] -= upd;
            }
        }
    }
    true
}

/// `max_{s in {-1,1}^k} ‖T s‖_∞` for a real matrix.
pub fn sign_vector_sup_norm(t: &Operator) -> f64 {
    let k = t.cols();
    let mut best: f64 = 0.0;
    for mask in 0u32..(1 << k) {
        for i in 0..t.rows() {
            let row: f64 = (0..k)
                .map(|j| {
                    let s = if mask >> j & 1 == 1 { -1.0 } else { 1.0 };
                    t.get(i, j).re * s
                })
                .sum();
            best = best.max(row.abs());
        }
    }
    best
}

/// Pushes basis vectors and then random nonnegative, often sparse, functions
/// through `t`; true if every image stays in the cone up to `tol`.
pub fn sampled_cone(t: &Operator, samples: usize, tol: f64, rng: &mut impl Rng) -> bool {
    let k = t.cols();
    let image_ok = |f: &[f64]| {
        (0..t.rows()).all(|i| {
            let z: C64 = (0..k).map(|j| t.get(i, j) * f[j]).sum();
            z.re >= -tol && z.im.abs() <= tol
        })
    };
    for s in 0..samples {
        let f: Vec<f64> = if s < k {
            (0..k).map(|j| if j == s { 1.0 } else { 0.0 }).collect()
        } else {
            let density = rng.random_range(0.1..=1.0);
            (0..k)
                .map(|_| if rng.random_bool(density) { rng.random::<f64>() } else { 0.0 })
                .collect()
        };
        if !image_ok(&f) {
            return false;
        }
    }
    true
}
