//! Slack matrices of regular polygons and related factorization fixtures.

use crate::element::{BlockData, Element};
use crate::error::{Error, Result};
use crate::factor_map::{FactorSet, TargetMatrix};
use crate::scalar::Scalar;
use crate::structure::{BlockKind, ConeStructure};
use crate::tol;

/// Facet-by-vertex slack matrix of a regular polygon, with the geometry it
/// was generated from.
#[derive(Debug, Clone)]
pub struct SlackInstance<T> {
    pub n_vertices: usize,
    pub matrix: TargetMatrix<T>,
    pub vertex_angles: Vec<T>,
    pub facet_normal_angles: Vec<T>,
    pub inradius: T,
}

/// Slack matrix of the regular n-gon with circumradius 1.
///
/// Vertex j sits at angle 2 pi j / n, facet i runs between vertices i and
/// i+1 with unit normal at angle (2i+1) pi / n and offset cos(pi/n). Entries
/// below 1e-14 are clamped to exactly zero so incidences are exact.
pub fn regular_ngon_slack<T: Scalar>(n: usize) -> Result<SlackInstance<T>> {
    if n < 3 {
        return Err(Error::InvalidTarget(format!(
            "a polygon needs at least 3 vertices, got {n}"
        )));
    }
    let pi = T::from_f64_lit(std::f64::consts::PI);
    let nf = T::from_usize(n).expect("polygon size fits scalar");
    let inradius = (pi / nf).cos();
    let clamp = T::from_f64_lit(tol::SLACK_ZERO_CLAMP);

    let vertex_angles: Vec<T> = (0..n)
        .map(|j| T::two() * pi * T::from_usize(j).unwrap() / nf)
        .collect();
    let facet_normal_angles: Vec<T> = (0..n)
        .map(|i| (T::two() * T::from_usize(i).unwrap() + T::one()) * pi / nf)
        .collect();

    // entries depend only on (j - i) mod n; computing one generating row
    // keeps the matrix exactly circulant
    let base: Vec<T> = (0..n)
        .map(|delta| {
            let ang = (T::two() * T::from_usize(delta).unwrap() - T::one()) * pi / nf;
            let s = inradius - ang.cos();
            if s.abs() < clamp {
                T::zero()
            } else {
                s
            }
        })
        .collect();
    let rows: Vec<Vec<T>> = (0..n)
        .map(|i| (0..n).map(|j| base[(n + j - i) % n]).collect())
        .collect();

    Ok(SlackInstance {
        n_vertices: n,
        matrix: TargetMatrix::from_rows(&rows)?,
        vertex_angles,
        facet_normal_angles,
        inradius,
    })
}

fn soc1_pair_structure<T: Scalar>(pairs: usize) -> ConeStructure {
    let _ = T::zero();
    ConeStructure::new(vec![BlockKind::Soc { k: 1 }; pairs]).expect("nonempty structure")
}

fn soc1_product_element<T: Scalar>(structure: &ConeStructure, coords: &[T]) -> Element<T> {
    let blocks = coords
        .chunks(2)
        .map(|c| BlockData::Soc {
            t: c[0],
            x: vec![c[1]],
        })
        .collect();
    Element::new(structure.clone(), blocks).expect("coords match structure")
}

/// Exact soc1 x soc1 factorization of the 4-gon slack matrix.
///
/// Left/right factors are stored so that the canonical trace inner product
/// (which carries a factor 2 on Soc blocks) reproduces
/// `regular_ngon_slack(4)` exactly; the trace factor is absorbed by halving
/// the right family.
pub fn fourgon_fixture<T: Scalar>() -> FactorSet<T> {
    let structure = soc1_pair_structure::<T>(2);
    let s = T::two().sqrt() / T::from_f64_lit(12.0);
    // rows ordered to match this crate's facet labeling of the 4-gon
    let left: [[f64; 4]; 4] = [
        [3.0, 3.0, 0.0, 0.0],
        [0.0, 0.0, 2.0, 2.0],
        [0.0, 0.0, 2.0, -2.0],
        [3.0, -3.0, 0.0, 0.0],
    ];
    let right_cols: [[f64; 4]; 4] = [
        [0.0, 0.0, 6.0, 0.0],
        [2.0, -2.0, 3.0, -3.0],
        [4.0, 0.0, 0.0, 0.0],
        [2.0, 2.0, 3.0, 3.0],
    ];
    let a = left
        .iter()
        .map(|row| {
            let coords: Vec<T> = row.iter().map(|&v| T::from_f64_lit(v) * s).collect();
            soc1_product_element(&structure, &coords)
        })
        .collect();
    let b = right_cols
        .iter()
        .map(|col| {
            let coords: Vec<T> = col
                .iter()
                .map(|&v| T::from_f64_lit(v) * T::half())
                .collect();
            soc1_product_element(&structure, &coords)
        })
        .collect();
    FactorSet::new(structure, a, b).expect("fixture is well formed")
}

/// Convert an NMF (nonnegative vectors of even dimension) into a
/// soc1-product cone factorization with identical inner products.
///
/// Coordinate pairs (p, q) map to the Soc(1) element ((p+q)/2, (p-q)/2) on
/// both sides; the scaling compensates the trace factor 2 exactly.
pub fn nmf_to_soc1_product<T: Scalar>(
    a_vectors: &[Vec<T>],
    b_vectors: &[Vec<T>],
) -> Result<FactorSet<T>> {
    let dim = a_vectors
        .first()
        .or(b_vectors.first())
        .map(|v| v.len())
        .ok_or(Error::DimensionMismatch {
            expected: 1,
            got: 0,
        })?;
    if dim == 0 || dim % 2 != 0 {
        return Err(Error::InvalidTarget(format!(
            "vectors must have positive even dimension, got {dim}"
        )));
    }
    for v in a_vectors.iter().chain(b_vectors) {
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: v.len(),
            });
        }
        if v.iter().any(|&e| e < T::zero()) {
            return Err(Error::InvalidTarget("negative entry in NMF vector".into()));
        }
    }
    let structure = soc1_pair_structure::<T>(dim / 2);
    let convert = |v: &Vec<T>| {
        let coords: Vec<T> = v
            .chunks(2)
            .flat_map(|pq| {
                let (p, q) = (pq[0], pq[1]);
                [(p + q) * T::half(), (p - q) * T::half()]
            })
            .collect();
        soc1_product_element(&structure, &coords)
    };
    FactorSet::new(
        structure.clone(),
        a_vectors.iter().map(convert).collect(),
        b_vectors.iter().map(convert).collect(),
    )
}

/// Outcome of the tower-of-variables membership check for soc4.
#[derive(Debug, Clone, PartialEq)]
pub struct TowerCheck<T> {
    pub holds: bool,
    /// (y1, y2) with (x1,x2,y1), (x3,x4,y2), (y1,y2,t) all in soc2.
    pub witness: Option<(T, T)>,
    /// Which soc2 constraint failed, when membership does not hold.
    pub violated: Option<&'static str>,
}

/// Check (x, t) in soc4 via the three-soc2 tower decomposition.
pub fn tower_soc4_check<T: Scalar>(x: &[T; 4], t: T) -> TowerCheck<T> {
    let y1 = (x[0] * x[0] + x[1] * x[1]).sqrt();
    let y2 = (x[2] * x[2] + x[3] * x[3]).sqrt();
    // the first two constraints hold by construction of y1, y2; the top of
    // the tower carries the actual membership test
    let top = (y1 * y1 + y2 * y2).sqrt() <= t;
    if top {
        TowerCheck {
            holds: true,
            witness: Some((y1, y2)),
            violated: None,
        }
    } else {
        TowerCheck {
            holds: false,
            witness: None,
            violated: Some("(y1, y2, t) not in soc2"),
        }
    }
}
