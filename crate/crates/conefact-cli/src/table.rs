//! Grid tables of best residuals over (soc_k, copies l): a human-readable
//! table with 2 significant figures and a full-precision CSV.

use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridCell {
    pub k: usize,
    pub l: usize,
    pub best_residual: Option<f64>,
}

fn axes(cells: &[GridCell]) -> (Vec<usize>, Vec<usize>) {
    let mut ks: Vec<usize> = cells.iter().map(|c| c.k).collect();
    let mut ls: Vec<usize> = cells.iter().map(|c| c.l).collect();
    ks.sort_unstable();
    ks.dedup();
    ls.sort_unstable();
    ls.dedup();
    (ks, ls)
}

fn lookup(cells: &[GridCell]) -> BTreeMap<(usize, usize), f64> {
    cells
        .iter()
        .filter_map(|c| c.best_residual.map(|r| ((c.k, c.l), r)))
        .collect()
}

/// Two significant figures, plain decimal notation in the usual range.
fn sig2(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    let scale = 10f64.powi(exp - 1);
    let rounded = (v / scale).round() * scale;
    if (-4..=4).contains(&exp) {
        let decimals = (1 - exp).max(0) as usize;
        format!("{rounded:.decimals$}")
    } else {
        format!("{rounded:.1e}")
    }
}

/// Rows are soc_k, columns are the number of copies l.
pub fn emit_table(cells: &[GridCell]) -> String {
    let (ks, ls) = axes(cells);
    let map = lookup(cells);
    let mut header = vec!["soc_k \\ l".to_string()];
    header.extend(ls.iter().map(|l| l.to_string()));
    let mut rows = vec![header];
    for &k in &ks {
        let mut row = vec![format!("soc_{k}")];
        for &l in &ls {
            row.push(match map.get(&(k, l)) {
                Some(&r) => sig2(r),
                None => "\u{2014}".to_string(),
            });
        }
        rows.push(row);
    }
    let cols = rows[0].len();
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    rows.iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .map(|(c, cell)| format!("{cell:>width$}", width = widths[c]))
                .collect::<Vec<_>>()
                .join("  ")
        })
        .collect::<Vec<_>>()
        .join("\n")
        + "\n"
}

/// Long-form CSV (`k,l,best_residual`) with full-precision values; missing
/// cells are omitted.
pub fn emit_csv(cells: &[GridCell]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["k", "l", "best_residual"]).unwrap();
    for c in cells {
        if let Some(r) = c.best_residual {
            w.write_record([c.k.to_string(), c.l.to_string(), format!("{r}")])
                .unwrap();
        }
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

pub fn parse_csv(text: &str) -> Result<Vec<GridCell>, csv::Error> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let mut out = Vec::new();
    for record in r.records() {
        let record = record?;
        out.push(GridCell {
            k: record[0].parse().unwrap_or(0),
            l: record[1].parse().unwrap_or(0),
            best_residual: record[2].parse().ok(),
        });
    }
    Ok(out)
}
