use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::Scalar;
use crate::structure::{BlockKind, ConeStructure};

/// Per-block coordinates of an algebra element.
#[derive(Debug, Clone, PartialEq)]
pub enum BlockData<T> {
    Orthant(Vec<T>),
    Soc { t: T, x: Vec<T> },
    /// Full symmetric matrix; the symmetry invariant is maintained by all
    /// constructors and products.
    Sym(Mat<T>),
}

impl<T: Scalar> BlockData<T> {
    pub fn kind(&self) -> BlockKind {
        match self {
            BlockData::Orthant(v) => BlockKind::Orthant { k: v.len() },
            BlockData::Soc { x, .. } => BlockKind::Soc { k: x.len() },
            BlockData::Sym(m) => BlockKind::Sym { n: m.rows() },
        }
    }

    fn is_finite(&self) -> bool {
        match self {
            BlockData::Orthant(v) => v.iter().all(|e| e.is_finite()),
            BlockData::Soc { t, x } => t.is_finite() && x.iter().all(|e| e.is_finite()),
            BlockData::Sym(m) => m.data().iter().all(|e| e.is_finite()),
        }
    }

    pub fn zero(kind: BlockKind) -> Self {
        match kind {
            BlockKind::Orthant { k } => BlockData::Orthant(vec![T::zero(); k]),
            BlockKind::Soc { k } => BlockData::Soc {
                t: T::zero(),
                x: vec![T::zero(); k],
            },
            BlockKind::Sym { n } => BlockData::Sym(Mat::zeros(n, n)),
        }
    }

    pub fn identity(kind: BlockKind) -> Self {
        match kind {
            BlockKind::Orthant { k } => BlockData::Orthant(vec![T::one(); k]),
            BlockKind::Soc { k } => BlockData::Soc {
                t: T::one(),
                x: vec![T::zero(); k],
            },
            BlockKind::Sym { n } => BlockData::Sym(Mat::identity(n)),
        }
    }

    /// Jordan product of two blocks of the same kind.
    pub fn jordan_product(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (BlockData::Orthant(a), BlockData::Orthant(b)) if a.len() == b.len() => Ok(
                BlockData::Orthant(a.iter().zip(b).map(|(&p, &q)| p * q).collect()),
            ),
            (BlockData::Soc { t: s, x }, BlockData::Soc { t, x: u }) if x.len() == u.len() => {
                let dot: T = x.iter().zip(u).map(|(&p, &q)| p * q).sum();
                Ok(BlockData::Soc {
                    t: *s * *t + dot,
                    x: x
                        .iter()
                        .zip(u)
                        .map(|(&xi, &ui)| *s * ui + *t * xi)
                        .collect(),
                })
            }
            (BlockData::Sym(a), BlockData::Sym(b)) if a.rows() == b.rows() => {
                let mut m = a.matmul(b).add(&b.matmul(a)).scale(T::half());
                m.symmetrize();
                Ok(BlockData::Sym(m))
            }
            _ => Err(Error::StructureMismatch),
        }
    }

    pub fn trace(&self) -> T {
        match self {
            BlockData::Orthant(v) => v.iter().copied().sum(),
            BlockData::Soc { t, .. } => T::two() * *t,
            BlockData::Sym(m) => m.trace(),
        }
    }

    /// Canonical trace inner product restricted to one block.
    pub fn inner(&self, other: &Self) -> Result<T> {
        match (self, other) {
            (BlockData::Orthant(a), BlockData::Orthant(b)) if a.len() == b.len() => {
                Ok(a.iter().zip(b).map(|(&p, &q)| p * q).sum())
            }
            (BlockData::Soc { t: s, x }, BlockData::Soc { t, x: u }) if x.len() == u.len() => {
                let dot: T = x.iter().zip(u).map(|(&p, &q)| p * q).sum();
                Ok(T::two() * (*s * *t + dot))
            }
            (BlockData::Sym(a), BlockData::Sym(b)) if a.rows() == b.rows() => Ok(a
                .data()
                .iter()
                .zip(b.data())
                .map(|(&p, &q)| p * q)
                .sum()),
            _ => Err(Error::StructureMismatch),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_map(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_map(other, |a, b| a - b)
    }

    fn zip_map(&self, other: &Self, f: impl Fn(T, T) -> T) -> Result<Self> {
        match (self, other) {
            (BlockData::Orthant(a), BlockData::Orthant(b)) if a.len() == b.len() => Ok(
                BlockData::Orthant(a.iter().zip(b).map(|(&p, &q)| f(p, q)).collect()),
            ),
            (BlockData::Soc { t: s, x }, BlockData::Soc { t, x: u }) if x.len() == u.len() => {
                Ok(BlockData::Soc {
                    t: f(*s, *t),
                    x: x.iter().zip(u).map(|(&p, &q)| f(p, q)).collect(),
                })
            }
            (BlockData::Sym(a), BlockData::Sym(b)) if a.rows() == b.rows() => {
                Ok(BlockData::Sym(Mat::from_rows(
                    &(0..a.rows())
                        .map(|i| {
                            a.row(i)
                                .iter()
                                .zip(b.row(i))
                                .map(|(&p, &q)| f(p, q))
                                .collect()
                        })
                        .collect::<Vec<_>>(),
                )))
            }
            _ => Err(Error::StructureMismatch),
        }
    }

    pub fn scale(&self, s: T) -> Self {
        match self {
            BlockData::Orthant(v) => BlockData::Orthant(v.iter().map(|&e| e * s).collect()),
            BlockData::Soc { t, x } => BlockData::Soc {
                t: *t * s,
                x: x.iter().map(|&e| e * s).collect(),
            },
            BlockData::Sym(m) => BlockData::Sym(m.scale(s)),
        }
    }

    /// Isometric flattening: the Euclidean dot of flattened coordinates
    /// equals the canonical trace inner product.
    ///
    /// Orthant entries are kept raw, Soc coordinates are scaled by sqrt(2),
    /// and Sym blocks use half-vectorization with off-diagonals times sqrt(2).
    pub fn flatten_into(&self, out: &mut Vec<T>) {
        let sqrt2 = T::two().sqrt();
        match self {
            BlockData::Orthant(v) => out.extend_from_slice(v),
            BlockData::Soc { t, x } => {
                out.push(sqrt2 * *t);
                out.extend(x.iter().map(|&e| sqrt2 * e));
            }
            BlockData::Sym(m) => {
                for i in 0..m.rows() {
                    for j in i..m.cols() {
                        if i == j {
                            out.push(m[(i, j)]);
                        } else {
                            out.push(sqrt2 * m[(i, j)]);
                        }
                    }
                }
            }
        }
    }

    pub fn unflatten(kind: BlockKind, coords: &[T]) -> Self {
        let sqrt2 = T::two().sqrt();
        debug_assert_eq!(coords.len(), kind.dim());
        match kind {
            BlockKind::Orthant { .. } => BlockData::Orthant(coords.to_vec()),
            BlockKind::Soc { .. } => BlockData::Soc {
                t: coords[0] / sqrt2,
                x: coords[1..].iter().map(|&e| e / sqrt2).collect(),
            },
            BlockKind::Sym { n } => {
                let mut m = Mat::zeros(n, n);
                let mut idx = 0;
                for i in 0..n {
                    for j in i..n {
                        let v = if i == j {
                            coords[idx]
                        } else {
                            coords[idx] / sqrt2
                        };
                        m[(i, j)] = v;
                        m[(j, i)] = v;
                        idx += 1;
                    }
                }
                BlockData::Sym(m)
            }
        }
    }
}

/// A point of the direct-sum algebra: one coordinate block per cone block.
#[derive(Debug, Clone, PartialEq)]
pub struct Element<T> {
    structure: ConeStructure,
    blocks: Vec<BlockData<T>>,
}

impl<T: Scalar> Element<T> {
    pub fn new(structure: ConeStructure, blocks: Vec<BlockData<T>>) -> Result<Self> {
        if blocks.len() != structure.blocks().len() {
            return Err(Error::StructureMismatch);
        }
        for (b, &kind) in blocks.iter().zip(structure.blocks()) {
            if b.kind() != kind {
                return Err(Error::StructureMismatch);
            }
            if !b.is_finite() {
                return Err(Error::InvalidStructure(
                    "non-finite coordinate in element".into(),
                ));
            }
        }
        Ok(Element { structure, blocks })
    }

    pub fn structure(&self) -> &ConeStructure {
        &self.structure
    }

    pub fn blocks(&self) -> &[BlockData<T>] {
        &self.blocks
    }

    pub fn zero(structure: &ConeStructure) -> Self {
        Element {
            structure: structure.clone(),
            blocks: structure.blocks().iter().map(|&k| BlockData::zero(k)).collect(),
        }
    }

    /// The algebra identity `e`: all-ones, (1, 0, ..., 0), identity matrix.
    pub fn identity(structure: &ConeStructure) -> Self {
        Element {
            structure: structure.clone(),
            blocks: structure
                .blocks()
                .iter()
                .map(|&k| BlockData::identity(k))
                .collect(),
        }
    }

    fn check_same_structure(&self, other: &Self) -> Result<()> {
        if self.structure != other.structure {
            return Err(Error::StructureMismatch);
        }
        Ok(())
    }

    fn zip_blocks(
        &self,
        other: &Self,
        f: impl Fn(&BlockData<T>, &BlockData<T>) -> Result<BlockData<T>>,
    ) -> Result<Self> {
        self.check_same_structure(other)?;
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| f(a, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Element {
            structure: self.structure.clone(),
            blocks,
        })
    }

    pub fn jordan_product(&self, other: &Self) -> Result<Self> {
        self.zip_blocks(other, |a, b| a.jordan_product(b))
    }

    /// Sum of eigenvalues over all blocks.
    pub fn trace(&self) -> T {
        self.blocks.iter().map(|b| b.trace()).sum()
    }

    /// Canonical trace inner product tr(x o y).
    pub fn inner(&self, other: &Self) -> Result<T> {
        self.check_same_structure(other)?;
        let mut acc = T::zero();
        for (a, b) in self.blocks.iter().zip(&other.blocks) {
            acc += a.inner(b)?;
        }
        Ok(acc)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_blocks(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_blocks(other, |a, b| a.sub(b))
    }

    pub fn scale(&self, s: T) -> Self {
        Element {
            structure: self.structure.clone(),
            blocks: self.blocks.iter().map(|b| b.scale(s)).collect(),
        }
    }

    /// Quadratic representation applied to `y`: P(x) y = 2 x o (x o y) - x^2 o y.
    pub fn quad_apply(&self, y: &Self) -> Result<Self> {
        let xy = self.jordan_product(y)?;
        let xxy = self.jordan_product(&xy)?;
        let x2 = self.jordan_product(self)?;
        let x2y = x2.jordan_product(y)?;
        xxy.scale(T::two()).sub(&x2y)
    }

    /// Euclidean norm of the isometric coordinates; equals sqrt(<x, x>).
    pub fn norm(&self) -> T {
        let flat = self.flatten();
        flat.iter().map(|&v| v * v).sum::<T>().sqrt()
    }

    pub fn flatten(&self) -> Vec<T> {
        let mut out = Vec::with_capacity(self.structure.dim());
        for b in &self.blocks {
            b.flatten_into(&mut out);
        }
        out
    }

    pub fn unflatten(structure: &ConeStructure, coords: &[T]) -> Result<Self> {
        if coords.len() != structure.dim() {
            return Err(Error::DimensionMismatch {
                expected: structure.dim(),
                got: coords.len(),
            });
        }
        let mut blocks = Vec::with_capacity(structure.blocks().len());
        let mut offset = 0;
        for &kind in structure.blocks() {
            let d = kind.dim();
            blocks.push(BlockData::unflatten(kind, &coords[offset..offset + d]));
            offset += d;
        }
        Ok(Element {
            structure: structure.clone(),
            blocks,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn soc2() -> ConeStructure {
        ConeStructure::new(vec![BlockKind::Soc { k: 2 }]).unwrap()
    }

    #[test]
    fn identity_blocks() {
        let e = Element::<f64>::identity(&soc2());
        assert_eq!(
            e.blocks()[0],
            BlockData::Soc {
                t: 1.0,
                x: vec![0.0, 0.0]
            }
        );
        let orth = ConeStructure::new(vec![BlockKind::Orthant { k: 3 }]).unwrap();
        assert_eq!(
            Element::<f64>::identity(&orth).blocks()[0],
            BlockData::Orthant(vec![1.0, 1.0, 1.0])
        );
        let sym = ConeStructure::new(vec![BlockKind::Sym { n: 2 }]).unwrap();
        assert_eq!(
            Element::<f64>::identity(&sym).blocks()[0],
            BlockData::Sym(Mat::identity(2))
        );
    }

    #[test]
    fn identity_is_neutral() {
        let s = soc2();
        let e = Element::identity(&s);
        let x = Element::new(
            s.clone(),
            vec![BlockData::Soc {
                t: 3.0,
                x: vec![1.0, -0.5],
            }],
        )
        .unwrap();
        assert_eq!(e.jordan_product(&x).unwrap(), x);
    }

    #[test]
    fn soc_product_example() {
        // (1,(1,0)) o (1,(1,0)) = (2,(2,0))
        let s = soc2();
        let x = Element::new(
            s,
            vec![BlockData::Soc {
                t: 1.0,
                x: vec![1.0, 0.0],
            }],
        )
        .unwrap();
        let p = x.jordan_product(&x).unwrap();
        assert_eq!(
            p.blocks()[0],
            BlockData::Soc {
                t: 2.0,
                x: vec![2.0, 0.0]
            }
        );
    }

    #[test]
    fn orthant_product_componentwise() {
        let s = ConeStructure::new(vec![BlockKind::Orthant { k: 2 }]).unwrap();
        let a = Element::new(s.clone(), vec![BlockData::Orthant(vec![2.0, 3.0])]).unwrap();
        let b = Element::new(s, vec![BlockData::Orthant(vec![4.0, 5.0])]).unwrap();
        assert_eq!(
            a.jordan_product(&b).unwrap().blocks()[0],
            BlockData::Orthant(vec![8.0, 15.0])
        );
    }

    #[test]
    fn sym_product_hand_oracle() {
        // X = [[0,1],[1,0]], Y = [[1,0],[0,-1]] -> (XY + YX)/2 = 0
        let s = ConeStructure::new(vec![BlockKind::Sym { n: 2 }]).unwrap();
        let x = Element::new(
            s.clone(),
            vec![BlockData::Sym(Mat::from_rows(&[
                vec![0.0, 1.0],
                vec![1.0, 0.0],
            ]))],
        )
        .unwrap();
        let y = Element::new(
            s,
            vec![BlockData::Sym(Mat::from_rows(&[
                vec![1.0, 0.0],
                vec![0.0, -1.0],
            ]))],
        )
        .unwrap();
        let p = x.jordan_product(&y).unwrap();
        assert_eq!(p.blocks()[0], BlockData::Sym(Mat::zeros(2, 2)));
    }

    #[test]
    fn trace_examples() {
        let s = soc2();
        let x = Element::new(
            s,
            vec![BlockData::Soc {
                t: 3.0,
                x: vec![1.0, 1.0],
            }],
        )
        .unwrap();
        assert_eq!(x.trace(), 6.0);
        let orth = ConeStructure::new(vec![BlockKind::Orthant { k: 4 }]).unwrap();
        assert_eq!(Element::<f64>::identity(&orth).trace(), 4.0);
        let sym = ConeStructure::new(vec![BlockKind::Sym { n: 3 }]).unwrap();
        assert_eq!(Element::<f64>::identity(&sym).trace(), 3.0);
    }

    #[test]
    fn inner_examples() {
        // <e, y> = tr(y) = 2t on a Soc block
        let s = soc2();
        let e = Element::<f64>::identity(&s);
        let y = Element::new(
            s,
            vec![BlockData::Soc {
                t: 2.5,
                x: vec![0.3, -1.0],
            }],
        )
        .unwrap();
        assert!((e.inner(&y).unwrap() - 5.0).abs() < 1e-15);

        let orth = ConeStructure::new(vec![BlockKind::Orthant { k: 2 }]).unwrap();
        let a = Element::new(orth.clone(), vec![BlockData::Orthant(vec![1.0, 2.0])]).unwrap();
        let b = Element::new(orth, vec![BlockData::Orthant(vec![3.0, 4.0])]).unwrap();
        assert_eq!(a.inner(&b).unwrap(), 11.0);
    }

    #[test]
    fn flatten_roundtrip_preserves_inner() {
        let s = ConeStructure::new(vec![
            BlockKind::Orthant { k: 2 },
            BlockKind::Soc { k: 2 },
            BlockKind::Sym { n: 2 },
        ])
        .unwrap();
        let x = Element::new(
            s.clone(),
            vec![
                BlockData::Orthant(vec![1.0, 2.0]),
                BlockData::Soc {
                    t: 3.0,
                    x: vec![0.5, -1.0],
                },
                BlockData::Sym(Mat::from_rows(&[vec![1.0, 0.25], vec![0.25, 2.0]])),
            ],
        )
        .unwrap();
        let y = Element::identity(&s);
        let flat_dot: f64 = x
            .flatten()
            .iter()
            .zip(y.flatten())
            .map(|(&a, b)| a * b)
            .sum();
        assert!((flat_dot - x.inner(&y).unwrap()).abs() < 1e-14);
        let back = Element::unflatten(&s, &x.flatten()).unwrap();
        assert!(back.sub(&x).unwrap().norm() < 1e-14);
    }

    #[test]
    fn structure_mismatch_rejected() {
        let a = Element::<f64>::identity(&soc2());
        let orth = ConeStructure::new(vec![BlockKind::Orthant { k: 3 }]).unwrap();
        let b = Element::identity(&orth);
        assert!(matches!(
            a.jordan_product(&b),
            Err(Error::StructureMismatch)
        ));
    }
}
