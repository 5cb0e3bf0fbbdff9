//! The linear maps induced by a family of cone factors, plus objective and
//! residual evaluation for a target matrix.

use crate::element::Element;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::operator::OperatorMatrix;
use crate::scalar::Scalar;
use crate::structure::ConeStructure;

/// Entrywise nonnegative dense target matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetMatrix<T> {
    matrix: Mat<T>,
}

impl<T: Scalar> TargetMatrix<T> {
    pub fn new(matrix: Mat<T>) -> Result<Self> {
        for &v in matrix.data() {
            if !v.is_finite() {
                return Err(Error::InvalidTarget("non-finite entry".into()));
            }
            if v < T::zero() {
                return Err(Error::InvalidTarget(format!(
                    "negative entry {}",
                    v.as_f64()
                )));
            }
        }
        Ok(TargetMatrix { matrix })
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        Self::new(Mat::from_rows(rows))
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.matrix[(i, j)]
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.matrix.row(i).to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        self.matrix.col(j)
    }

    pub fn frobenius_norm(&self) -> T {
        self.matrix.frobenius_norm()
    }

    pub fn matrix(&self) -> &Mat<T> {
        &self.matrix
    }
}

/// The factor families {a_i} and {b_j} being optimized.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorSet<T> {
    structure: ConeStructure,
    a: Vec<Element<T>>,
    b: Vec<Element<T>>,
}

impl<T: Scalar> FactorSet<T> {
    pub fn new(structure: ConeStructure, a: Vec<Element<T>>, b: Vec<Element<T>>) -> Result<Self> {
        for f in a.iter().chain(&b) {
            if f.structure() != &structure {
                return Err(Error::StructureMismatch);
            }
        }
        Ok(FactorSet { structure, a, b })
    }

    pub fn structure(&self) -> &ConeStructure {
        &self.structure
    }

    pub fn a(&self) -> &[Element<T>] {
        &self.a
    }

    pub fn b(&self) -> &[Element<T>] {
        &self.b
    }

    pub fn into_parts(self) -> (ConeStructure, Vec<Element<T>>, Vec<Element<T>>) {
        (self.structure, self.a, self.b)
    }
}

/// A b = (<a_1, b>, ..., <a_m, b>).
pub fn apply_map<T: Scalar>(factors: &[Element<T>], b: &Element<T>) -> Result<Vec<T>> {
    factors.iter().map(|a| a.inner(b)).collect()
}

/// A^T v = sum_i v_i a_i.
pub fn adjoint_apply<T: Scalar>(factors: &[Element<T>], v: &[T]) -> Result<Element<T>> {
    if v.len() != factors.len() {
        return Err(Error::DimensionMismatch {
            expected: factors.len(),
            got: v.len(),
        });
    }
    let structure = factors
        .first()
        .map(|f| f.structure().clone())
        .ok_or(Error::DimensionMismatch {
            expected: 1,
            got: 0,
        })?;
    let mut acc = Element::zero(&structure);
    for (f, &vi) in factors.iter().zip(v) {
        if vi != T::zero() {
            acc = acc.add(&f.scale(vi))?;
        }
    }
    Ok(acc)
}

/// Gram operator image A^T A b = sum_i <a_i, b> a_i.
pub fn gram_apply<T: Scalar>(factors: &[Element<T>], b: &Element<T>) -> Result<Element<T>> {
    let v = apply_map(factors, b)?;
    adjoint_apply(factors, &v)
}

/// Materialize A^T A in isometric coordinates: sum of outer products of the
/// flattened factors.
pub fn gram_matrix<T: Scalar>(factors: &[Element<T>]) -> Result<OperatorMatrix<T>> {
    let structure = factors
        .first()
        .map(|f| f.structure().clone())
        .ok_or(Error::DimensionMismatch {
            expected: 1,
            got: 0,
        })?;
    let d = structure.dim();
    let mut m = Mat::zeros(d, d);
    for f in factors {
        if f.structure() != &structure {
            return Err(Error::StructureMismatch);
        }
        let flat = f.flatten();
        for i in 0..d {
            if flat[i] == T::zero() {
                continue;
            }
            for j in 0..d {
                m[(i, j)] += flat[i] * flat[j];
            }
        }
    }
    OperatorMatrix::new(structure, m)
}

/// Squared loss sum_ij (X_ij - <a_i, b_j>)^2.
pub fn objective<T: Scalar>(factors: &FactorSet<T>, target: &TargetMatrix<T>) -> Result<T> {
    if factors.a().len() != target.rows() || factors.b().len() != target.cols() {
        return Err(Error::DimensionMismatch {
            expected: target.rows() * target.cols(),
            got: factors.a().len() * factors.b().len(),
        });
    }
    let mut acc = T::zero();
    for (i, ai) in factors.a().iter().enumerate() {
        for (j, bj) in factors.b().iter().enumerate() {
            let r = target.get(i, j) - ai.inner(bj)?;
            acc += r * r;
        }
    }
    Ok(acc)
}

/// Relative Frobenius residual ||X - X_hat||_F / ||X||_F (absolute when X = 0).
pub fn residual_relative<T: Scalar>(
    factors: &FactorSet<T>,
    target: &TargetMatrix<T>,
) -> Result<T> {
    let obj = objective(factors, target)?;
    let norm = target.frobenius_norm();
    if norm == T::zero() {
        Ok(obj.sqrt())
    } else {
        Ok(obj.sqrt() / norm)
    }
}
