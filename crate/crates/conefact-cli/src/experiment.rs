//! Two-stage multi-start experiment runner: many short seeded runs, keep the
//! best few, continue them, and report the smallest residual with enough
//! bookkeeping for exact replay.

use std::path::PathBuf;
use std::time::Instant;

use conefact_core::io::{factor_set_to_file, matrix_from_csv, FactorSetFile};
use conefact_core::polytopes::regular_ngon_slack;
use conefact_core::random::random_interior;
use conefact_core::scmu::{run, SolverConfig};
use conefact_core::{ConeStructure, FactorSet, TargetMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("target parse error: {0}")]
    Target(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] conefact_core::Error),
}

/// Where the target matrix comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TargetSource {
    /// Slack matrix of the regular n-gon.
    Ngon(usize),
    /// Dense nonnegative matrix in CSV form.
    Csv(PathBuf),
}

impl TargetSource {
    /// `ngon:<n>` or a CSV file path.
    pub fn parse(text: &str) -> Result<Self, ExperimentError> {
        if let Some(n_text) = text.strip_prefix("ngon:") {
            let n: usize = n_text
                .parse()
                .map_err(|_| ExperimentError::Target(format!("bad ngon size {n_text:?}")))?;
            if n < 3 {
                return Err(ExperimentError::Target(format!("ngon needs n >= 3, got {n}")));
            }
            Ok(TargetSource::Ngon(n))
        } else {
            Ok(TargetSource::Csv(PathBuf::from(text)))
        }
    }

    pub fn load(&self) -> Result<TargetMatrix<f64>, ExperimentError> {
        match self {
            TargetSource::Ngon(n) => Ok(regular_ngon_slack(*n)?.matrix),
            TargetSource::Csv(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| ExperimentError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
                Ok(matrix_from_csv(&text)?)
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            TargetSource::Ngon(n) => format!("ngon:{n}"),
            TargetSource::Csv(path) => path.display().to_string(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub cone: ConeStructure,
    pub stage1_starts: usize,
    pub stage1_sweeps: usize,
    pub stage2_keep: usize,
    pub stage2_sweeps: usize,
    pub seed: u64,
    pub eps: f64,
}

impl ExperimentConfig {
    /// Paper-protocol defaults: 100 starts x 100 sweeps, keep 10 for 900
    /// more sweeps, damping 1e-6.
    pub fn new(cone: ConeStructure, seed: u64) -> Self {
        ExperimentConfig {
            cone,
            stage1_starts: 100,
            stage1_sweeps: 100,
            stage2_keep: 10,
            stage2_sweeps: 900,
            seed,
            eps: 1e-6,
        }
    }

    fn validate(&self) -> Result<(), ExperimentError> {
        if self.stage1_starts == 0
            || self.stage1_sweeps == 0
            || self.stage2_keep == 0
            || self.stage2_sweeps == 0
        {
            return Err(ExperimentError::Config("all counts must be >= 1".into()));
        }
        if self.stage2_keep > self.stage1_starts {
            return Err(ExperimentError::Config(format!(
                "stage2_keep {} exceeds stage1_starts {}",
                self.stage2_keep, self.stage1_starts
            )));
        }
        if self.eps < 0.0 {
            return Err(ExperimentError::Config("negative damping".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StartRecord {
    pub start: usize,
    pub child_seed: u64,
    /// Final relative residual after stage 1; absent if the start failed.
    pub stage1_residual: Option<f64>,
    /// Final relative residual after stage 2; present only for kept starts.
    pub stage2_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Wall-clock bookkeeping, kept in its own object so reports can be compared
/// for determinism with timing excluded.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Timing {
    pub stage1_ms: u128,
    pub stage2_ms: u128,
    pub total_ms: u128,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema_version: u32,
    pub target: String,
    pub cone: String,
    pub seed: u64,
    pub eps: f64,
    pub stage1_starts: usize,
    pub stage1_sweeps: usize,
    pub stage2_keep: usize,
    pub stage2_sweeps: usize,
    pub init_scale: f64,
    pub starts: Vec<StartRecord>,
    pub best_start: Option<usize>,
    pub best_residual: Option<f64>,
    pub best_factors: Option<FactorSetFile>,
    pub timing: Timing,
}

fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for start `s`: the s-th output of the splitmix64 stream at `seed`.
pub fn child_seed(seed: u64, s: u64) -> u64 {
    splitmix64(seed.wrapping_add((s + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15)))
}

/// Factor-initialization scale so that initial fitted entries match the
/// target's mean magnitude.
pub fn init_scale(target: &TargetMatrix<f64>, cone: &ConeStructure) -> f64 {
    let total: f64 = (0..target.rows())
        .map(|i| target.row(i).iter().sum::<f64>())
        .sum();
    let mean = total / (target.rows() * target.cols()) as f64;
    (mean.max(f64::MIN_POSITIVE)).sqrt() / ((target.rows() * cone.rank()) as f64).sqrt()
}

fn init_factors(
    target: &TargetMatrix<f64>,
    cone: &ConeStructure,
    scale: f64,
    seed: u64,
) -> FactorSet<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = (0..target.rows())
        .map(|_| random_interior(cone, scale, &mut rng))
        .collect();
    let b = (0..target.cols())
        .map(|_| random_interior(cone, scale, &mut rng))
        .collect();
    FactorSet::new(cone.clone(), a, b).expect("random factors match the structure")
}

pub fn run_experiment(
    target_source: &TargetSource,
    config: &ExperimentConfig,
) -> Result<ExperimentReport, ExperimentError> {
    config.validate()?;
    let target = target_source.load()?;
    let scale = init_scale(&target, &config.cone);
    let start_time = Instant::now();

    let mut records = Vec::with_capacity(config.stage1_starts);
    let mut survivors: Vec<Option<FactorSet<f64>>> = Vec::with_capacity(config.stage1_starts);
    for s in 0..config.stage1_starts {
        let seed = child_seed(config.seed, s as u64);
        let init = init_factors(&target, &config.cone, scale, seed);
        let solver = SolverConfig {
            record_trace: false,
            ..SolverConfig::exact_sweeps(config.stage1_sweeps, config.eps)
        };
        match run(&target, init, &solver) {
            Ok((factors, report)) => {
                records.push(StartRecord {
                    start: s,
                    child_seed: seed,
                    stage1_residual: Some(report.final_residual_relative),
                    stage2_residual: None,
                    error: None,
                });
                survivors.push(Some(factors));
            }
            Err(e) => {
                records.push(StartRecord {
                    start: s,
                    child_seed: seed,
                    stage1_residual: None,
                    stage2_residual: None,
                    error: Some(e.to_string()),
                });
                survivors.push(None);
            }
        }
    }
    let stage1_ms = start_time.elapsed().as_millis();

    // keep the best stage2_keep starts; ties break toward the lower index
    let mut order: Vec<usize> = (0..config.stage1_starts)
        .filter(|&s| records[s].stage1_residual.is_some())
        .collect();
    order.sort_by(|&p, &q| {
        records[p]
            .stage1_residual
            .partial_cmp(&records[q].stage1_residual)
            .unwrap()
            .then(p.cmp(&q))
    });
    order.truncate(config.stage2_keep);

    let stage2_start = Instant::now();
    let mut best: Option<(f64, usize, FactorSet<f64>)> = None;
    for &s in &order {
        let factors = survivors[s].take().expect("kept start has factors");
        let solver = SolverConfig {
            record_trace: false,
            ..SolverConfig::exact_sweeps(config.stage2_sweeps, config.eps)
        };
        match run(&target, factors, &solver) {
            Ok((factors, report)) => {
                let res = report.final_residual_relative;
                records[s].stage2_residual = Some(res);
                let better = match &best {
                    None => true,
                    Some((b, bs, _)) => res < *b || (res == *b && s < *bs),
                };
                if better {
                    best = Some((res, s, factors));
                }
            }
            Err(e) => records[s].error = Some(e.to_string()),
        }
    }
    let stage2_ms = stage2_start.elapsed().as_millis();

    let (best_residual, best_start, best_factors) = match best {
        Some((res, s, factors)) => (Some(res), Some(s), Some(factor_set_to_file(&factors))),
        None => (None, None, None),
    };
    Ok(ExperimentReport {
        schema_version: REPORT_SCHEMA_VERSION,
        target: target_source.label(),
        cone: config.cone.to_spec_string(),
        seed: config.seed,
        eps: config.eps,
        stage1_starts: config.stage1_starts,
        stage1_sweeps: config.stage1_sweeps,
        stage2_keep: config.stage2_keep,
        stage2_sweeps: config.stage2_sweeps,
        init_scale: scale,
        starts: records,
        best_start,
        best_residual,
        best_factors,
        timing: Timing {
            stage1_ms,
            stage2_ms,
            total_ms: start_time.elapsed().as_millis(),
        },
    })
}

/// Report JSON with the `timing` object removed; two runs of the same config
/// and seed must agree bit for bit on this view.
pub fn report_json_without_timing(report: &ExperimentReport) -> String {
    let mut value = serde_json::to_value(report).expect("report serializes");
    value
        .as_object_mut()
        .expect("report is an object")
        .remove("timing");
    serde_json::to_string_pretty(&value).expect("value serializes")
}
