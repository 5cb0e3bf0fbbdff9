//! Spectral decompositions, fractional powers, cone membership, and the
//! metric geometric mean.

use crate::element::{BlockData, Element};
use crate::error::{Error, Result};
use crate::linalg::{sym_eigen, Mat};
use crate::scalar::Scalar;
use crate::structure::ConeStructure;
use crate::tol;

/// Eigenvalues and Jordan frame of one block.
#[derive(Debug, Clone)]
pub struct BlockSpectral<T> {
    pub eigenvalues: Vec<T>,
    /// Primitive idempotents; same length as `eigenvalues`.
    pub frame: Vec<BlockData<T>>,
}

/// Eigenvalues + Jordan frame of an element, per block.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition<T> {
    structure: ConeStructure,
    blocks: Vec<BlockSpectral<T>>,
}

impl<T: Scalar> SpectralDecomposition<T> {
    pub fn structure(&self) -> &ConeStructure {
        &self.structure
    }

    pub fn blocks(&self) -> &[BlockSpectral<T>] {
        &self.blocks
    }

    /// All eigenvalues across blocks, in block order.
    pub fn eigenvalues(&self) -> impl Iterator<Item = T> + '_ {
        self.blocks.iter().flat_map(|b| b.eigenvalues.iter().copied())
    }

    /// Rebuild sum lambda_i c_i.
    pub fn reconstruct(&self) -> Element<T> {
        self.map_eigenvalues(|_block, lam| lam)
            .expect("identity eigenvalue map cannot fail")
    }

    /// Apply `f` to every eigenvalue and recombine with the same frame.
    /// `f` receives the block index for error reporting.
    pub fn map_eigenvalues(&self, f: impl Fn(usize, T) -> T) -> Result<Element<T>> {
        let blocks = self
            .blocks
            .iter()
            .enumerate()
            .map(|(bi, bs)| {
                let kind = self.structure.blocks()[bi];
                let mut acc = BlockData::zero(kind);
                for (lam, c) in bs.eigenvalues.iter().zip(&bs.frame) {
                    acc = acc.add(&c.scale(f(bi, *lam)))?;
                }
                Ok(acc)
            })
            .collect::<Result<Vec<_>>>()?;
        Element::new(self.structure.clone(), blocks)
    }
}

/// Spectral decomposition of an element, blockwise.
///
/// Orthant blocks decompose on the standard basis, Soc blocks via the
/// two closed-form eigenpairs, and Sym blocks by Jacobi iteration.
pub fn spectral<T: Scalar>(x: &Element<T>) -> Result<SpectralDecomposition<T>> {
    let blocks = x
        .blocks()
        .iter()
        .map(|b| spectral_block(b))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectralDecomposition {
        structure: x.structure().clone(),
        blocks,
    })
}

fn spectral_block<T: Scalar>(b: &BlockData<T>) -> Result<BlockSpectral<T>> {
    match b {
        BlockData::Orthant(v) => {
            let k = v.len();
            let frame = (0..k)
                .map(|i| {
                    let mut c = vec![T::zero(); k];
                    c[i] = T::one();
                    BlockData::Orthant(c)
                })
                .collect();
            Ok(BlockSpectral {
                eigenvalues: v.clone(),
                frame,
            })
        }
        BlockData::Soc { t, x } => {
            let norm = x.iter().map(|&v| v * v).sum::<T>().sqrt();
            let degenerate =
                norm < T::from_f64_lit(tol::SOC_DEGENERATE_DIR) * T::one().max(t.abs());
            // any unit direction is valid when x ~ 0; fix (1,0,...,0)
            let dir: Vec<T> = if degenerate {
                let mut d = vec![T::zero(); x.len()];
                d[0] = T::one();
                d
            } else {
                x.iter().map(|&v| v / norm).collect()
            };
            let half = T::half();
            let c_plus = BlockData::Soc {
                t: half,
                x: dir.iter().map(|&v| half * v).collect(),
            };
            let c_minus = BlockData::Soc {
                t: half,
                x: dir.iter().map(|&v| -half * v).collect(),
            };
            Ok(BlockSpectral {
                eigenvalues: vec![*t + norm, *t - norm],
                frame: vec![c_plus, c_minus],
            })
        }
        BlockData::Sym(m) => {
            let (eigenvalues, v) = sym_eigen(m)?;
            let n = m.rows();
            let frame = (0..n)
                .map(|k| {
                    let mut proj = Mat::zeros(n, n);
                    for i in 0..n {
                        for j in 0..n {
                            proj[(i, j)] = v[(i, k)] * v[(j, k)];
                        }
                    }
                    BlockData::Sym(proj)
                })
                .collect();
            Ok(BlockSpectral { eigenvalues, frame })
        }
    }
}

/// Minimum eigenvalue over all blocks.
pub fn min_eigenvalue<T: Scalar>(x: &Element<T>) -> Result<T> {
    let dec = spectral(x)?;
    Ok(dec
        .eigenvalues()
        .fold(T::infinity(), |acc, v| acc.min(v)))
}

pub fn in_cone<T: Scalar>(x: &Element<T>, tolerance: T) -> Result<bool> {
    Ok(min_eigenvalue(x)? >= -tolerance)
}

pub fn in_interior<T: Scalar>(x: &Element<T>, tolerance: T) -> Result<bool> {
    Ok(min_eigenvalue(x)? > tolerance)
}

/// a-th power: sum lambda_i^a c_i.
///
/// Roundoff eigenvalues in (-1e-12, 0) are clamped to zero when a positive
/// fractional power needs them; negative powers reject any non-positive
/// eigenvalue.
pub fn power<T: Scalar>(x: &Element<T>, a: T) -> Result<Element<T>> {
    if a == T::one() {
        return Ok(x.clone());
    }
    if a == T::zero() {
        return Ok(Element::identity(x.structure()));
    }
    let dec = spectral(x)?;
    let clamp = T::from_f64_lit(tol::EIG_CLAMP);
    let fractional = a.fract() != T::zero();
    // validate all eigenvalues up front so failures carry block context
    for (bi, bs) in dec.blocks().iter().enumerate() {
        for &lam in &bs.eigenvalues {
            let invalid = if a < T::zero() {
                lam <= T::zero()
            } else if fractional {
                lam < -clamp
            } else {
                false
            };
            if invalid {
                return Err(Error::Domain {
                    block: bi,
                    eigenvalue: lam.as_f64(),
                    exponent: a.as_f64(),
                });
            }
        }
    }
    dec.map_eigenvalues(|_bi, lam| {
        let lam = if fractional && a > T::zero() && lam < T::zero() {
            T::zero()
        } else {
            lam
        };
        lam.powf(a)
    })
}

/// Metric geometric mean x # y = P(x^{1/2}) (P(x^{-1/2}) y)^{1/2}.
///
/// Both arguments must be interior points.
pub fn geometric_mean<T: Scalar>(x: &Element<T>, y: &Element<T>) -> Result<Element<T>> {
    for z in [x, y] {
        let min = min_eigenvalue(z)?;
        if min <= T::zero() {
            return Err(Error::NotInterior {
                min_eigenvalue: min.as_f64(),
            });
        }
    }
    let half = T::half();
    let x_sqrt = power(x, half)?;
    let x_inv_sqrt = power(x, -half)?;
    let inner = x_inv_sqrt.quad_apply(y)?;
    let inner_sqrt = power(&inner, half)?;
    x_sqrt.quad_apply(&inner_sqrt)
}

/// Geometric mean x # y where only `x` must be interior; `y` may sit on the
/// cone boundary (eigenvalues down to roundoff below zero are clamped).
///
/// The solver routes its steps through this variant: iterates converging to
/// the boundary can have computed eigenvalues a few ulps negative while the
/// Gram image stays safely interior.
pub fn geometric_mean_psd<T: Scalar>(x: &Element<T>, y: &Element<T>) -> Result<Element<T>> {
    let min_x = min_eigenvalue(x)?;
    if min_x <= T::zero() {
        return Err(Error::NotInterior {
            min_eigenvalue: min_x.as_f64(),
        });
    }
    let half = T::half();
    let x_sqrt = power(x, half)?;
    let x_inv_sqrt = power(x, -half)?;
    let inner = x_inv_sqrt.quad_apply(y)?;
    let dec = spectral(&inner)?;
    let scale = dec
        .eigenvalues()
        .fold(T::zero(), |acc, v| acc.max(v.abs()));
    let clamp = T::from_f64_lit(tol::EIG_CLAMP) * (T::one() + scale);
    for (bi, bs) in dec.blocks().iter().enumerate() {
        for &lam in &bs.eigenvalues {
            if lam < -clamp {
                return Err(Error::Domain {
                    block: bi,
                    eigenvalue: lam.as_f64(),
                    exponent: 0.5,
                });
            }
        }
    }
    let inner_sqrt = dec.map_eigenvalues(|_bi, lam| lam.max(T::zero()).sqrt())?;
    x_sqrt.quad_apply(&inner_sqrt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::BlockKind;

    fn soc2_elem(t: f64, x0: f64, x1: f64) -> Element<f64> {
        let s = ConeStructure::new(vec![BlockKind::Soc { k: 2 }]).unwrap();
        Element::new(s, vec![BlockData::Soc { t, x: vec![x0, x1] }]).unwrap()
    }

    #[test]
    fn soc_spectral_closed_form() {
        // (2,(1,0)) -> eigenvalues {3, 1}, frame {(1/2,(1/2,0)), (1/2,(-1/2,0))}
        let x = soc2_elem(2.0, 1.0, 0.0);
        let dec = spectral(&x).unwrap();
        let bs = &dec.blocks()[0];
        assert_eq!(bs.eigenvalues, vec![3.0, 1.0]);
        assert_eq!(
            bs.frame[0],
            BlockData::Soc {
                t: 0.5,
                x: vec![0.5, 0.0]
            }
        );
        assert_eq!(
            bs.frame[1],
            BlockData::Soc {
                t: 0.5,
                x: vec![-0.5, 0.0]
            }
        );
    }

    #[test]
    fn orthant_spectral_is_entries() {
        let s = ConeStructure::new(vec![BlockKind::Orthant { k: 2 }]).unwrap();
        let x = Element::new(s, vec![BlockData::Orthant(vec![5.0, 7.0])]).unwrap();
        let dec = spectral(&x).unwrap();
        assert_eq!(dec.blocks()[0].eigenvalues, vec![5.0, 7.0]);
        assert_eq!(dec.blocks()[0].frame[0], BlockData::Orthant(vec![1.0, 0.0]));
    }

    #[test]
    fn sym_diag_spectral() {
        let s = ConeStructure::new(vec![BlockKind::Sym { n: 2 }]).unwrap();
        let x = Element::new(
            s,
            vec![BlockData::Sym(Mat::from_rows(&[
                vec![4.0, 0.0],
                vec![0.0, 9.0],
            ]))],
        )
        .unwrap();
        let dec = spectral(&x).unwrap();
        assert_eq!(dec.blocks()[0].eigenvalues, vec![4.0, 9.0]);
        let recon = dec.reconstruct();
        assert!(recon.sub(&x).unwrap().norm() < 1e-12);
    }

    #[test]
    fn soc_sqrt_closed_form() {
        // sqrt of (2,(1,0)) = ((sqrt3 + 1)/2, ((sqrt3 - 1)/2, 0))
        let x = soc2_elem(2.0, 1.0, 0.0);
        let r = power(&x, 0.5).unwrap();
        let s3 = 3f64.sqrt();
        let expect = soc2_elem((s3 + 1.0) / 2.0, (s3 - 1.0) / 2.0, 0.0);
        assert!(r.sub(&expect).unwrap().norm() < 1e-14);
    }

    #[test]
    fn orthant_sqrt() {
        let s = ConeStructure::new(vec![BlockKind::Orthant { k: 2 }]).unwrap();
        let x = Element::new(s, vec![BlockData::Orthant(vec![4.0, 9.0])]).unwrap();
        let r = power(&x, 0.5).unwrap();
        assert_eq!(r.blocks()[0], BlockData::Orthant(vec![2.0, 3.0]));
    }

    #[test]
    fn soc_inverse_closed_form() {
        // (2,(1,0))^{-1} = (2/3, (-1/3, 0)); check x o x^{-1} = e
        let x = soc2_elem(2.0, 1.0, 0.0);
        let inv = power(&x, -1.0).unwrap();
        let expect = soc2_elem(2.0 / 3.0, -1.0 / 3.0, 0.0);
        assert!(inv.sub(&expect).unwrap().norm() < 1e-14);
        let prod = x.jordan_product(&inv).unwrap();
        let e = Element::identity(x.structure());
        assert!(prod.sub(&e).unwrap().norm() < 1e-14);
    }

    #[test]
    fn power_of_zero_exponent_is_identity() {
        let x = soc2_elem(2.0, 1.0, 0.0);
        let e = Element::identity(x.structure());
        assert_eq!(power(&x, 0.0).unwrap(), e);
    }

    #[test]
    fn negative_power_rejects_boundary() {
        let x = soc2_elem(1.0, 1.0, 0.0); // boundary ray, min eigenvalue 0
        let err = power(&x, -1.0).unwrap_err();
        match err {
            Error::Domain { block, eigenvalue, .. } => {
                assert_eq!(block, 0);
                assert!(eigenvalue.abs() < 1e-15);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn sqrt_rejects_negative_eigenvalue() {
        let s = ConeStructure::new(vec![BlockKind::Orthant { k: 2 }]).unwrap();
        let x = Element::new(s, vec![BlockData::Orthant(vec![-1.0, 2.0])]).unwrap();
        assert!(power(&x, 0.5).is_err());
    }

    #[test]
    fn sqrt_clamps_roundoff() {
        let s = ConeStructure::new(vec![BlockKind::Orthant { k: 1 }]).unwrap();
        let x = Element::new(s, vec![BlockData::Orthant(vec![-1e-13])]).unwrap();
        let r = power(&x, 0.5).unwrap();
        assert_eq!(r.blocks()[0], BlockData::Orthant(vec![0.0]));
    }

    #[test]
    fn membership_examples() {
        let boundary = soc2_elem(1.0, 1.0, 0.0);
        assert!((min_eigenvalue(&boundary).unwrap()).abs() < 1e-15);
        assert!(in_cone(&boundary, 1e-12).unwrap());
        assert!(!in_interior(&boundary, 1e-12).unwrap());

        let s = ConeStructure::new(vec![BlockKind::Orthant { k: 2 }]).unwrap();
        let neg = Element::new(s.clone(), vec![BlockData::Orthant(vec![-1.0, 2.0])]).unwrap();
        assert_eq!(min_eigenvalue(&neg).unwrap(), -1.0);
        assert!(!in_cone(&neg, 1e-12).unwrap());

        assert_eq!(min_eigenvalue(&Element::<f64>::identity(&s)).unwrap(), 1.0);
    }

    #[test]
    fn soc_zero_vector_frame_is_deterministic() {
        let x = soc2_elem(2.0, 0.0, 0.0);
        let dec = spectral(&x).unwrap();
        assert_eq!(
            dec.blocks()[0].frame[0],
            BlockData::Soc {
                t: 0.5,
                x: vec![0.5, 0.0]
            }
        );
        assert!(dec.reconstruct().sub(&x).unwrap().norm() < 1e-15);
    }

    #[test]
    fn geometric_mean_orthant() {
        // (1,4) # (9,1) = (3,2)
        let s = ConeStructure::new(vec![BlockKind::Orthant { k: 2 }]).unwrap();
        let x = Element::new(s.clone(), vec![BlockData::Orthant(vec![1.0, 4.0])]).unwrap();
        let y = Element::new(s, vec![BlockData::Orthant(vec![9.0, 1.0])]).unwrap();
        let m = geometric_mean(&x, &y).unwrap();
        assert!(m.sub(&Element::new(
            x.structure().clone(),
            vec![BlockData::Orthant(vec![3.0, 2.0])]
        ).unwrap()).unwrap().norm() < 1e-12);
    }

    #[test]
    fn geometric_mean_with_identity_is_sqrt() {
        let x = soc2_elem(2.0, 1.0, 0.3);
        let e = Element::identity(x.structure());
        let m = geometric_mean(&x, &e).unwrap();
        let r = power(&x, 0.5).unwrap();
        assert!(m.sub(&r).unwrap().norm() < 1e-12);
    }

    #[test]
    fn geometric_mean_rejects_boundary() {
        let x = soc2_elem(1.0, 1.0, 0.0);
        let e = Element::identity(x.structure());
        assert!(matches!(
            geometric_mean(&x, &e),
            Err(Error::NotInterior { .. })
        ));
    }
}
