//! JSON/CSV serialization of slack instances and factor sets (f64).

use serde::{Deserialize, Serialize};

use crate::element::{BlockData, Element};
use crate::error::{Error, Result};
use crate::factor_map::{FactorSet, TargetMatrix};
use crate::linalg::Mat;
use crate::polytopes::SlackInstance;
use crate::structure::{BlockKind, ConeStructure};

pub const FACTOR_SET_FORMAT_VERSION: u32 = 1;

/// On-disk form of a factor set: structure descriptor plus per-factor block
/// coordinates (orthant entries raw, soc as [t, x...], sym as the upper
/// triangle in row-major order).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FactorSetFile {
    pub format_version: u32,
    pub structure: Vec<BlockKind>,
    pub a: Vec<Vec<Vec<f64>>>,
    pub b: Vec<Vec<Vec<f64>>>,
}

fn block_to_coords(block: &BlockData<f64>) -> Vec<f64> {
    match block {
        BlockData::Orthant(v) => v.clone(),
        BlockData::Soc { t, x } => {
            let mut out = vec![*t];
            out.extend_from_slice(x);
            out
        }
        BlockData::Sym(m) => {
            let mut out = Vec::with_capacity(m.rows() * (m.rows() + 1) / 2);
            for i in 0..m.rows() {
                for j in i..m.cols() {
                    out.push(m[(i, j)]);
                }
            }
            out
        }
    }
}

fn block_from_coords(kind: BlockKind, coords: &[f64]) -> Result<BlockData<f64>> {
    let expected = match kind {
        BlockKind::Orthant { k } => k,
        BlockKind::Soc { k } => k + 1,
        BlockKind::Sym { n } => n * (n + 1) / 2,
    };
    if coords.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            got: coords.len(),
        });
    }
    Ok(match kind {
        BlockKind::Orthant { .. } => BlockData::Orthant(coords.to_vec()),
        BlockKind::Soc { .. } => BlockData::Soc {
            t: coords[0],
            x: coords[1..].to_vec(),
        },
        BlockKind::Sym { n } => {
            let mut m = Mat::zeros(n, n);
            let mut idx = 0;
            for i in 0..n {
                for j in i..n {
                    m[(i, j)] = coords[idx];
                    m[(j, i)] = coords[idx];
                    idx += 1;
                }
            }
            BlockData::Sym(m)
        }
    })
}

pub fn factor_set_to_file(factors: &FactorSet<f64>) -> FactorSetFile {
    let encode = |family: &[Element<f64>]| {
        family
            .iter()
            .map(|f| f.blocks().iter().map(block_to_coords).collect())
            .collect()
    };
    FactorSetFile {
        format_version: FACTOR_SET_FORMAT_VERSION,
        structure: factors.structure().blocks().to_vec(),
        a: encode(factors.a()),
        b: encode(factors.b()),
    }
}

pub fn factor_set_from_file(file: &FactorSetFile) -> Result<FactorSet<f64>> {
    if file.format_version != FACTOR_SET_FORMAT_VERSION {
        return Err(Error::InvalidStructure(format!(
            "unsupported factor file format version {}",
            file.format_version
        )));
    }
    let structure = ConeStructure::new(file.structure.clone())?;
    let decode = |family: &[Vec<Vec<f64>>]| -> Result<Vec<Element<f64>>> {
        family
            .iter()
            .map(|blocks| {
                if blocks.len() != structure.blocks().len() {
                    return Err(Error::StructureMismatch);
                }
                let data = blocks
                    .iter()
                    .zip(structure.blocks())
                    .map(|(coords, &kind)| block_from_coords(kind, coords))
                    .collect::<Result<Vec<_>>>()?;
                Element::new(structure.clone(), data)
            })
            .collect()
    };
    FactorSet::new(structure.clone(), decode(&file.a)?, decode(&file.b)?)
}

pub fn factor_set_to_json(factors: &FactorSet<f64>) -> String {
    serde_json::to_string_pretty(&factor_set_to_file(factors))
        .expect("factor set serializes")
}

pub fn factor_set_from_json(text: &str) -> Result<FactorSet<f64>> {
    let file: FactorSetFile = serde_json::from_str(text)
        .map_err(|e| Error::InvalidStructure(format!("bad factor JSON: {e}")))?;
    factor_set_from_file(&file)
}

/// CSV body of a target matrix: one row per line, comma-separated.
pub fn matrix_to_csv(matrix: &TargetMatrix<f64>) -> String {
    let mut out = String::new();
    for i in 0..matrix.rows() {
        let row: Vec<String> = matrix.row(i).iter().map(|v| format!("{v:?}")).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn matrix_from_csv(text: &str) -> Result<TargetMatrix<f64>> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|cell| {
                cell.trim().parse::<f64>().map_err(|e| {
                    Error::InvalidTarget(format!("line {}: bad number {cell:?}: {e}", lineno + 1))
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::InvalidTarget("empty CSV".into()));
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::InvalidTarget("ragged CSV rows".into()));
    }
    TargetMatrix::from_rows(&rows)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SlackInstanceFile {
    pub n_vertices: usize,
    pub inradius: f64,
    pub vertex_angles: Vec<f64>,
    pub facet_normal_angles: Vec<f64>,
    pub matrix: Vec<Vec<f64>>,
}

pub fn slack_to_json(slack: &SlackInstance<f64>) -> String {
    let m = &slack.matrix;
    let file = SlackInstanceFile {
        n_vertices: slack.n_vertices,
        inradius: slack.inradius,
        vertex_angles: slack.vertex_angles.clone(),
        facet_normal_angles: slack.facet_normal_angles.clone(),
        matrix: (0..m.rows()).map(|i| m.row(i)).collect(),
    };
    serde_json::to_string_pretty(&file).expect("slack instance serializes")
}
