//! Small dense matrices and a cyclic Jacobi eigensolver.
//!
//! Everything here targets the tiny matrices this crate needs (block sizes
//! up to ~8, operator matrices up to a few dozen rows), so simplicity and
//! accuracy win over asymptotics.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Mat { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Mat<T> {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn matmul(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self[(i, k)];
                if aik == T::zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += aik * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matvec dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    pub fn add(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, s: T) -> Mat<T> {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= s;
        }
        out
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|&v| v * v).sum::<T>().sqrt()
    }

    /// Force exact symmetry by averaging with the transpose.
    pub fn symmetrize(&mut self) {
        assert_eq!(self.rows, self.cols);
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                let v = (self[(i, j)] + self[(j, i)]) * T::half();
                self[(i, j)] = v;
                self[(j, i)] = v;
            }
        }
    }

    pub fn trace(&self) -> T {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }
}

impl<T: Scalar> std::ops::Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T: Scalar> std::ops::IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

const JACOBI_MAX_SWEEPS: usize = 64;
const JACOBI_REL_TOL: f64 = 1e-14;

/// Eigendecomposition of a small symmetric matrix by cyclic Jacobi rotations.
///
/// Returns `(eigenvalues, v)` with `a = v * diag(eigenvalues) * v^T`; columns
/// of `v` are the eigenvectors. Eigenvalues are sorted ascending.
pub fn sym_eigen<T: Scalar>(a: &Mat<T>) -> Result<(Vec<T>, Mat<T>)> {
    assert_eq!(a.rows(), a.cols(), "sym_eigen requires a square matrix");
    let n = a.rows();
    if n == 0 {
        return Ok((Vec::new(), Mat::zeros(0, 0)));
    }
    let mut a = a.clone();
    a.symmetrize();
    let mut v = Mat::identity(n);
    let norm = a.frobenius_norm();
    let tol = T::from_f64_lit(JACOBI_REL_TOL) * norm.max(T::one() * T::epsilon());

    let mut last_off = off_diag_norm(&a);
    if norm == T::zero() {
        return Ok((vec![T::zero(); n], v));
    }
    for sweep in 0..JACOBI_MAX_SWEEPS {
        if last_off <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == T::zero() {
                    continue;
                }
                let app = a[(p, p)];
                let aqq = a[(q, q)];
                let theta = (aqq - app) / (T::two() * apq);
                // smaller-magnitude root keeps rotations well conditioned
                let t = if theta >= T::zero() {
                    T::one() / (theta + (T::one() + theta * theta).sqrt())
                } else {
                    -T::one() / (-theta + (T::one() + theta * theta).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;
                apply_rotation(&mut a, p, q, c, s);
                rotate_cols(&mut v, p, q, c, s);
            }
        }
        last_off = off_diag_norm(&a);
        if sweep + 1 == JACOBI_MAX_SWEEPS && last_off > tol {
            return Err(Error::EigenFailure {
                sweeps: JACOBI_MAX_SWEEPS,
                off_norm: last_off.as_f64(),
            });
        }
    }

    let mut pairs: Vec<(T, Vec<T>)> = (0..n).map(|i| (a[(i, i)], v.col(i))).collect();
    pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("NaN eigenvalue"));
    let eigenvalues = pairs.iter().map(|p| p.0).collect();
    let mut vec_mat = Mat::zeros(n, n);
    for (j, (_, col)) in pairs.iter().enumerate() {
        for i in 0..n {
            vec_mat[(i, j)] = col[i];
        }
    }
    Ok((eigenvalues, vec_mat))
}

fn off_diag_norm<T: Scalar>(a: &Mat<T>) -> T {
    let n = a.rows();
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Similarity transform A <- J^T A J for the Jacobi rotation J in plane (p, q).
fn apply_rotation<T: Scalar>(a: &mut Mat<T>, p: usize, q: usize, c: T, s: T) {
    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    a[(p, q)] = T::zero();
    a[(q, p)] = T::zero();
}

fn rotate_cols<T: Scalar>(v: &mut Mat<T>, p: usize, q: usize, c: T, s: T) {
    let n = v.rows();
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

/// PSD matrix square root via eigendecomposition; eigenvalues slightly
/// negative from roundoff are clamped to zero.
pub fn sqrtm_psd<T: Scalar>(a: &Mat<T>) -> Result<Mat<T>> {
    let (eigenvalues, v) = sym_eigen(a)?;
    let n = a.rows();
    let mut out = Mat::zeros(n, n);
    for (k, &lam) in eigenvalues.iter().enumerate() {
        let s = lam.max(T::zero()).sqrt();
        if s == T::zero() {
            continue;
        }
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] += s * v[(i, k)] * v[(j, k)];
            }
        }
    }
    out.symmetrize();
    Ok(out)
}

pub fn min_sym_eigenvalue<T: Scalar>(a: &Mat<T>) -> Result<T> {
    let (eigenvalues, _) = sym_eigen(a)?;
    Ok(eigenvalues
        .into_iter()
        .fold(T::infinity(), |acc, v| acc.min(v)))
}
