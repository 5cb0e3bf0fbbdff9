//! Sampling of interior points.

use rand::distributions::uniform::SampleUniform;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::element::{BlockData, Element};
use crate::linalg::Mat;
use crate::scalar::Scalar;
use crate::structure::{BlockKind, ConeStructure};

/// Sample an element with all eigenvalues strictly positive.
///
/// Orthant: i.i.d. uniform(0.1, 1) * scale. Soc: standard normal direction
/// with t = ||x|| + uniform(0.1, 1) * scale. Sym: G G^T / n + 0.1 * scale * I
/// for G with i.i.d. standard normal entries.
pub fn random_interior<T, R>(structure: &ConeStructure, scale: T, rng: &mut R) -> Element<T>
where
    T: Scalar + SampleUniform,
    StandardNormal: Distribution<T>,
    R: Rng + ?Sized,
{
    assert!(scale > T::zero(), "scale must be positive");
    let lo = T::from_f64_lit(0.1);
    let hi = T::one();
    let blocks = structure
        .blocks()
        .iter()
        .map(|&kind| match kind {
            BlockKind::Orthant { k } => {
                BlockData::Orthant((0..k).map(|_| rng.gen_range(lo..hi) * scale).collect())
            }
            BlockKind::Soc { k } => {
                let x: Vec<T> = (0..k).map(|_| StandardNormal.sample(rng)).collect();
                let norm = x.iter().map(|&v| v * v).sum::<T>().sqrt();
                BlockData::Soc {
                    t: norm + rng.gen_range(lo..hi) * scale,
                    x,
                }
            }
            BlockKind::Sym { n } => {
                let mut g = Mat::zeros(n, n);
                for i in 0..n {
                    for j in 0..n {
                        g[(i, j)] = StandardNormal.sample(rng);
                    }
                }
                let nn = T::from_usize(n).expect("block size fits scalar");
                let mut m = g.matmul(&g.transpose()).scale(T::one() / nn);
                let shift = lo * scale;
                for i in 0..n {
                    m[(i, i)] += shift;
                }
                BlockData::Sym(m)
            }
        })
        .collect();
    Element::new(structure.clone(), blocks).expect("sampled blocks match structure")
}
