//! Dense operator matrices acting on isometric flattened coordinates.

use crate::element::Element;
use crate::error::{Error, Result};
use crate::linalg::{min_sym_eigenvalue, sqrtm_psd, Mat};
use crate::scalar::Scalar;
use crate::structure::ConeStructure;

/// A linear operator on the algebra, materialized in isometric coordinates.
///
/// Because the flattening is an isometry for the trace inner product,
/// self-adjoint algebra operators (L(x), P(x), Gram operators) become
/// ordinary symmetric matrices here, and operator PSD-ness is plain matrix
/// PSD-ness.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix<T> {
    structure: ConeStructure,
    matrix: Mat<T>,
}

impl<T: Scalar> OperatorMatrix<T> {
    pub fn new(structure: ConeStructure, matrix: Mat<T>) -> Result<Self> {
        let d = structure.dim();
        if matrix.rows() != d || matrix.cols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: matrix.rows(),
            });
        }
        Ok(OperatorMatrix { structure, matrix })
    }

    pub fn structure(&self) -> &ConeStructure {
        &self.structure
    }

    pub fn matrix(&self) -> &Mat<T> {
        &self.matrix
    }

    pub fn apply(&self, x: &Element<T>) -> Result<Element<T>> {
        if x.structure() != &self.structure {
            return Err(Error::StructureMismatch);
        }
        let out = self.matrix.matvec(&x.flatten());
        Element::unflatten(&self.structure, &out)
    }

    pub fn compose(&self, other: &OperatorMatrix<T>) -> Result<Self> {
        if self.structure != other.structure {
            return Err(Error::StructureMismatch);
        }
        Ok(OperatorMatrix {
            structure: self.structure.clone(),
            matrix: self.matrix.matmul(&other.matrix),
        })
    }

    pub fn add(&self, other: &OperatorMatrix<T>) -> Result<Self> {
        if self.structure != other.structure {
            return Err(Error::StructureMismatch);
        }
        Ok(OperatorMatrix {
            structure: self.structure.clone(),
            matrix: self.matrix.add(&other.matrix),
        })
    }

    pub fn sub(&self, other: &OperatorMatrix<T>) -> Result<Self> {
        if self.structure != other.structure {
            return Err(Error::StructureMismatch);
        }
        Ok(OperatorMatrix {
            structure: self.structure.clone(),
            matrix: self.matrix.sub(&other.matrix),
        })
    }

    pub fn scale(&self, s: T) -> Self {
        OperatorMatrix {
            structure: self.structure.clone(),
            matrix: self.matrix.scale(s),
        }
    }

    /// Minimum eigenvalue of the (symmetric) operator matrix.
    pub fn min_eigenvalue(&self) -> Result<T> {
        min_sym_eigenvalue(&self.matrix)
    }

    /// PSD matrix square root.
    pub fn sqrt_psd(&self) -> Result<Self> {
        Ok(OperatorMatrix {
            structure: self.structure.clone(),
            matrix: sqrtm_psd(&self.matrix)?,
        })
    }
}

/// Matrix of the Lyapunov transform L(x): columns are flattenings of
/// x o (basis element).
pub fn lyapunov_matrix<T: Scalar>(x: &Element<T>) -> OperatorMatrix<T> {
    let structure = x.structure().clone();
    let d = structure.dim();
    let mut m = Mat::zeros(d, d);
    let mut basis = vec![T::zero(); d];
    for j in 0..d {
        basis[j] = T::one();
        let ej = Element::unflatten(&structure, &basis).expect("basis vector");
        basis[j] = T::zero();
        let col = x
            .jordan_product(&ej)
            .expect("same structure by construction")
            .flatten();
        for i in 0..d {
            m[(i, j)] = col[i];
        }
    }
    // L(x) is self-adjoint; keep it exactly symmetric
    m.symmetrize();
    OperatorMatrix { structure, matrix: m }
}

/// Matrix of the quadratic representation P(x) = 2 L(x)^2 - L(x^2).
pub fn quad_matrix<T: Scalar>(x: &Element<T>) -> OperatorMatrix<T> {
    let l = lyapunov_matrix(x);
    let x2 = x.jordan_product(x).expect("same structure");
    let l2 = lyapunov_matrix(&x2);
    let mut m = l
        .matrix
        .matmul(&l.matrix)
        .scale(T::two())
        .sub(&l2.matrix);
    m.symmetrize();
    OperatorMatrix {
        structure: x.structure().clone(),
        matrix: m,
    }
}
