//! Dense complex matrices and the JSON interchange encoding.
//!
//! Matrices travel as `{"rows": r, "cols": c, "entries": [[re, im], ...]}`
//! in row-major order. Complex vectors use the same `[re, im]` pair
//! encoding. Finite doubles round-trip bit-exactly.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Complex scalar used throughout the crate.
pub type C64 = Complex64;

/// Complex column vector.
pub type CVector = Vec<C64>;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// Dense complex matrix stored row-major.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct Operator {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl Operator {
    /// Builds a matrix from row-major entries. Rejects length mismatches and
    /// non-finite entries.
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries for a {rows}x{cols} matrix, found {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidMatrix(format!(
                "entry ({}, {}) is not finite",
                pos / cols.max(1),
                pos % cols.max(1)
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    pub fn from_diag(diag: &[C64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, d) in diag.iter().enumerate() {
            m.data[i * n + i] = *d;
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let d: Vec<C64> = diag.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_diag(&d)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Convenience constructor for real matrices given as rows.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| C64::new(rows[i][j], 0.0))
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[CVector]) -> Self {
        assert!(columns.iter().all(|c| c.len() == rows), "column length mismatch");
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i])
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> CVector {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn diagonal(&self) -> CVector {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn mul_vec(&self, v: &[C64]) -> CVector {
        assert_eq!(v.len(), self.cols, "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `hᴴ M h`, i.e. `(Mh, h)` for the standard inner product.
    pub fn quadratic_form(&self, h: &[C64]) -> C64 {
        let mh = self.mul_vec(h);
        mh.iter().zip(h).map(|(a, b)| a * b.conj()).sum()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| modulus(*z)).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Frobenius norm of the strictly off-diagonal part.
    pub fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j {
                    s += self.get(i, j).norm_sqr();
                }
            }
        }
        s.sqrt()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j) == ZERO))
    }

    /// `max |M[i][j] - conj(M[j][i])|`; infinite for non-square input.
    pub fn hermitian_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut r: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                r = r.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        r
    }

    /// `(M + Mᴴ) / 2`.
    pub fn hermitian_part(&self) -> Self {
        assert!(self.is_square());
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self.get(i, j) + self.get(j, i).conj()) * 0.5
        })
    }

    /// `(M - Mᴴ) / 2i`, Hermitian for any square `M`.
    pub fn skew_part(&self) -> Self {
        assert!(self.is_square());
        let half_over_i = C64::new(0.0, -0.5);
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self.get(i, j) - self.get(j, i).conj()) * half_over_i
        })
    }

    pub fn trace(&self) -> C64 {
        self.diagonal().iter().sum()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| modulus(a - b))
            .fold(0.0, f64::max)
    }

    /// `max |self - s * other|` entrywise, without allocating.
    pub fn max_abs_diff_scaled(&self, other: &Self, s: f64) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| modulus(a - b * s))
            .fold(0.0, f64::max)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(C64, C64) -> C64) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(*a, *b)).collect(),
        }
    }
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Operator {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self.get(i, j);
                write!(f, "{:>10.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        let mut out = Operator::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }
}

/// Wire form of [`Operator`].
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<[f64; 2]>,
}

impl TryFrom<MatrixJson> for Operator {
    type Error = Error;
    fn try_from(m: MatrixJson) -> Result<Self> {
        let data = m.entries.into_iter().map(|[re, im]| C64::new(re, im)).collect();
        Operator::new(m.rows, m.cols, data)
    }
}

impl From<Operator> for MatrixJson {
    fn from(m: Operator) -> Self {
        MatrixJson {
            rows: m.rows,
            cols: m.cols,
            entries: m.data.into_iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

/// Serde adapter for complex vectors as `[[re, im], ...]`.
pub mod complex_pairs {
    use super::C64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[C64], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|z| [z.re, z.im])
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<C64>, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(d)?;
        Ok(pairs.into_iter().map(|[re, im]| C64::new(re, im)).collect())
    }
}

/// Serde adapter for lists of complex vectors.
pub mod complex_pair_lists {
    use super::C64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Vec<C64>], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|row| row.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<C64>>, D::Error> {
        let rows = Vec::<Vec<[f64; 2]>>::deserialize(d)?;
        Ok(rows
            .into_iter()
            .map(|r| r.into_iter().map(|[re, im]| C64::new(re, im)).collect())
            .collect())
    }
}

/// Serde adapter for optional complex vectors.
pub mod opt_complex_pairs {
    use super::C64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<C64>>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref()
            .map(|v| v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>())
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<C64>>, D::Error> {
        let pairs = Option::<Vec<[f64; 2]>>::deserialize(d)?;
        Ok(pairs.map(|p| p.into_iter().map(|[re, im]| C64::new(re, im)).collect()))
    }
}

/// Euclidean norm of a complex vector.
/// `|z|`, skipping `hypot` when one part is zero (same result, much cheaper).
#[inline]
pub fn modulus(z: C64) -> f64 {
    if z.im == 0.0 {
        z.re.abs()
    } else if z.re == 0.0 {
        z.im.abs()
    } else {
        z.norm()
    }
}

pub fn vec_norm2(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `⟨u, v⟩ = Σ conj(u_i) v_i`.
pub fn vec_dot(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn vec_sub(u: &[C64], v: &[C64]) -> CVector {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

pub fn vec_add(u: &[C64], v: &[C64]) -> CVector {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

pub fn vec_scale(u: &[C64], s: C64) -> CVector {
    u.iter().map(|a| a * s).collect()
}

pub fn real_vec(v: &[f64]) -> CVector {
    v.iter().map(|&x| C64::new(x, 0.0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_length_and_nan() {
        assert!(Operator::new(2, 2, vec![ONE; 3]).is_err());
        let mut d = vec![ONE; 4];
        d[2] = C64::new(f64::NAN, 0.0);
        assert!(Operator::new(2, 2, d).is_err());
    }

    #[test]
    fn zero_dimensional_is_legal() {
        let m = Operator::new(0, 0, vec![]).unwrap();
        assert!(m.is_empty());
        assert_eq!(m.adjoint().rows(), 0);
        assert_eq!((&m * &m).rows(), 0);
    }

    #[test]
    fn json_shape() {
        let m = Operator::new(1, 2, vec![C64::new(1.5, -2.0), C64::new(0.0, 3.0)]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"rows":1,"cols":2,"entries":[[1.5,-2.0],[0.0,3.0]]}"#);
    }

    #[test]
    fn json_rejects_length_mismatch_and_unknown_fields() {
        assert!(serde_json::from_str::<Operator>(r#"{"rows":2,"cols":2,"entries":[[1,0]]}"#).is_err());
        assert!(serde_json::from_str::<Operator>(r#"{"rows":1,"cols":1,"entries":[[1,0]],"x":1}"#).is_err());
    }

    #[test]
    fn product_and_adjoint() {
        let a = Operator::new(2, 2, vec![ONE, C64::new(0.0, 1.0), ZERO, C64::new(2.0, 0.0)]).unwrap();
        let p = &a * &a.adjoint();
        assert_eq!(p.get(0, 0), C64::new(2.0, 0.0));
        assert_eq!(p.get(0, 1), C64::new(0.0, 2.0));
        assert_eq!(p.hermitian_residual(), 0.0);
    }

    #[test]
    fn hermitian_and_skew_parts_recombine() {
        let a = Operator::new(2, 2, vec![ONE, C64::new(3.0, 1.0), C64::new(-1.0, 2.0), C64::new(0.5, -4.0)]).unwrap();
        let h = a.hermitian_part();
        let k = a.skew_part();
        assert_eq!(h.hermitian_residual(), 0.0);
        assert!(k.hermitian_residual() < 1e-15);
        let back = &h + &k.scale(C64::new(0.0, 1.0));
        assert!(back.max_abs_diff(&a) < 1e-15);
    }
}
