use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One simple-cone block of a direct-sum symmetric cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BlockKind {
    /// Nonnegative orthant of dimension `k`.
    Orthant { k: usize },
    /// Second-order cone; elements live in R x R^k as (t, x).
    Soc { k: usize },
    /// Real symmetric n x n matrices (PSD cone of squares).
    Sym { n: usize },
}

impl BlockKind {
    /// Ambient dimension of the block's coordinate space.
    pub fn dim(&self) -> usize {
        match *self {
            BlockKind::Orthant { k } => k,
            BlockKind::Soc { k } => k + 1,
            BlockKind::Sym { n } => n * (n + 1) / 2,
        }
    }

    /// Jordan-algebra rank of the block.
    pub fn rank(&self) -> usize {
        match *self {
            BlockKind::Orthant { k } => k,
            BlockKind::Soc { .. } => 2,
            BlockKind::Sym { n } => n,
        }
    }

    fn validate(&self) -> Result<()> {
        let size = match *self {
            BlockKind::Orthant { k } => k,
            BlockKind::Soc { k } => k,
            BlockKind::Sym { n } => n,
        };
        if size == 0 {
            return Err(Error::InvalidStructure(format!(
                "block {self:?} has size zero"
            )));
        }
        Ok(())
    }
}

/// Ordered list of blocks defining a direct-sum symmetric cone.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConeStructure {
    blocks: Vec<BlockKind>,
}

impl ConeStructure {
    pub fn new(blocks: Vec<BlockKind>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidStructure("empty block list".into()));
        }
        for b in &blocks {
            b.validate()?;
        }
        Ok(ConeStructure { blocks })
    }

    pub fn blocks(&self) -> &[BlockKind] {
        &self.blocks
    }

    /// Total ambient dimension (sum of block dimensions).
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.dim()).sum()
    }

    /// Total Jordan rank.
    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.rank()).sum()
    }

    /// Canonical textual form, e.g. `soc:2*3` or `orthant:4 x psd:3`.
    pub fn to_spec_string(&self) -> String {
        let mut terms: Vec<(BlockKind, usize)> = Vec::new();
        for &b in &self.blocks {
            match terms.last_mut() {
                Some((kind, count)) if *kind == b => *count += 1,
                _ => terms.push((b, 1)),
            }
        }
        terms
            .iter()
            .map(|(kind, count)| {
                let head = match *kind {
                    BlockKind::Orthant { k } => format!("orthant:{k}"),
                    BlockKind::Soc { k } => format!("soc:{k}"),
                    BlockKind::Sym { n } => format!("psd:{n}"),
                };
                if *count > 1 {
                    format!("{head}*{count}")
                } else {
                    head
                }
            })
            .collect::<Vec<_>>()
            .join(" x ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims_and_ranks() {
        let s = ConeStructure::new(vec![
            BlockKind::Orthant { k: 3 },
            BlockKind::Soc { k: 2 },
            BlockKind::Sym { n: 3 },
        ])
        .unwrap();
        assert_eq!(s.dim(), 3 + 3 + 6);
        assert_eq!(s.rank(), 3 + 2 + 3);
    }

    #[test]
    fn rejects_empty_and_zero() {
        assert!(ConeStructure::new(vec![]).is_err());
        assert!(ConeStructure::new(vec![BlockKind::Soc { k: 0 }]).is_err());
    }

    #[test]
    fn spec_string_groups_repeats() {
        let s = ConeStructure::new(vec![
            BlockKind::Soc { k: 2 },
            BlockKind::Soc { k: 2 },
            BlockKind::Sym { n: 3 },
        ])
        .unwrap();
        assert_eq!(s.to_spec_string(), "soc:2*2 x psd:3");
    }
}
