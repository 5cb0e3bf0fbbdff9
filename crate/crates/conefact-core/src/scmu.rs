//! Multiplicative updates over symmetric cones: per-column step, damped
//! variant, alternating sweeps, the solver loop, and the numerical checks
//! backing the majorization argument.

use std::time::{Duration, Instant};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::factor_map::{
    adjoint_apply, gram_apply, gram_matrix, objective, residual_relative, FactorSet,
    TargetMatrix,
};
use crate::operator::quad_matrix;
use crate::scalar::Scalar;
use crate::spectral::{geometric_mean, geometric_mean_psd, power, spectral};

/// Solver loop configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig<T> {
    pub max_sweeps: usize,
    pub min_sweeps: usize,
    /// Damping epsilon; 0 gives the undamped update.
    pub damping: T,
    /// Stop when the relative objective decrease over a sweep drops below
    /// this (after `min_sweeps`).
    pub stop_rel_decrease: T,
    pub record_trace: bool,
}

impl<T: Scalar> SolverConfig<T> {
    pub fn new(max_sweeps: usize) -> Self {
        SolverConfig {
            max_sweeps,
            min_sweeps: 1,
            damping: T::zero(),
            stop_rel_decrease: T::from_f64_lit(1e-10),
            record_trace: true,
        }
    }

    pub fn with_damping(mut self, eps: T) -> Self {
        self.damping = eps;
        self
    }

    /// Run exactly `n` sweeps with no early stop.
    pub fn exact_sweeps(n: usize, eps: T) -> Self {
        SolverConfig {
            max_sweeps: n,
            min_sweeps: n,
            damping: eps,
            stop_rel_decrease: T::zero(),
            record_trace: true,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.min_sweeps == 0 || self.max_sweeps < self.min_sweeps {
            return Err(Error::InvalidStructure(format!(
                "invalid sweep bounds: max {} < min {}",
                self.max_sweeps, self.min_sweeps
            )));
        }
        if self.damping < T::zero() {
            return Err(Error::InvalidStructure("negative damping".into()));
        }
        Ok(())
    }
}

/// Diagnostics for one solver run.
#[derive(Debug, Clone)]
pub struct RunReport<T> {
    /// Objective after each sweep (empty when trace recording is off).
    pub objective_trace: Vec<T>,
    pub final_objective: T,
    pub final_residual_relative: T,
    pub sweeps_run: usize,
    /// Sweeps where the objective increased beyond 1e-9 * (1 + previous).
    pub monotone_violations: usize,
    /// Max normalized stationarity residual over rows and columns.
    pub kkt_residual: T,
    /// Columns/rows of the target that are identically zero (their factors
    /// are frozen).
    pub zero_columns: usize,
    pub zero_rows: usize,
    pub wall_time: Duration,
}

/// Result of one per-index update.
#[derive(Debug, Clone)]
pub enum StepOutcome<T> {
    Updated(Element<T>),
    /// The target column/row is identically zero; the caller must freeze the
    /// current factor.
    ZeroTarget,
}

/// Undamped update: b <- P(b # (A^T A b)^{-1}) A^T x.
pub fn scmu_step<T: Scalar>(
    factors_fixed: &[Element<T>],
    current: &Element<T>,
    target_col: &[T],
) -> Result<StepOutcome<T>> {
    step_impl(factors_fixed, current, target_col, T::zero())
}

/// Damped update: the Gram image is shifted by eps * e (and its eigenvalues
/// floored at eps) before forming the geometric mean. Reduces to the
/// undamped step at eps = 0.
pub fn scmu_step_damped<T: Scalar>(
    factors_fixed: &[Element<T>],
    current: &Element<T>,
    target_col: &[T],
    eps: T,
) -> Result<StepOutcome<T>> {
    step_impl(factors_fixed, current, target_col, eps)
}

fn step_impl<T: Scalar>(
    factors_fixed: &[Element<T>],
    current: &Element<T>,
    target_col: &[T],
    eps: T,
) -> Result<StepOutcome<T>> {
    if target_col.iter().all(|&v| v == T::zero()) {
        return Ok(StepOutcome::ZeroTarget);
    }
    let mut gram = gram_apply(factors_fixed, current)?;
    if eps > T::zero() {
        let e = Element::identity(current.structure());
        gram = gram.add(&e.scale(eps))?;
        // floor eigenvalues at eps so the inverse stays well conditioned
        gram = spectral(&gram)?.map_eigenvalues(|_b, lam| lam.max(eps))?;
    }
    // a non-positive eigenvalue here is the "iterate escaped the interior"
    // signal; the mean itself is anchored at the interior inverse so that
    // `current` may touch the boundary
    let gram_inv = power(&gram, -T::one())?;
    let w = geometric_mean_psd(&gram_inv, current)?;
    let rhs = adjoint_apply(factors_fixed, target_col)?;
    Ok(StepOutcome::Updated(w.quad_apply(&rhs)?))
}

/// One alternating sweep: update every a_i against the current b's, then
/// every b_j against the updated a's.
pub fn sweep<T: Scalar>(
    factors: &FactorSet<T>,
    target: &TargetMatrix<T>,
    config: &SolverConfig<T>,
) -> Result<FactorSet<T>> {
    sweep_indexed(factors, target, config.damping, 0)
}

fn sweep_indexed<T: Scalar>(
    factors: &FactorSet<T>,
    target: &TargetMatrix<T>,
    eps: T,
    sweep_idx: usize,
) -> Result<FactorSet<T>> {
    let structure = factors.structure().clone();
    let wrap = |side: &'static str, index: usize, source: Error| Error::SolverStep {
        sweep: sweep_idx,
        side,
        index,
        source: Box::new(source),
    };

    let mut new_a = Vec::with_capacity(factors.a().len());
    for (i, ai) in factors.a().iter().enumerate() {
        let row = target.row(i);
        match step_impl(factors.b(), ai, &row, eps).map_err(|e| wrap("a", i, e))? {
            StepOutcome::Updated(next) => new_a.push(next),
            StepOutcome::ZeroTarget => new_a.push(ai.clone()),
        }
    }
    let mut new_b = Vec::with_capacity(factors.b().len());
    for (j, bj) in factors.b().iter().enumerate() {
        let col = target.col(j);
        match step_impl(&new_a, bj, &col, eps).map_err(|e| wrap("b", j, e))? {
            StepOutcome::Updated(next) => new_b.push(next),
            StepOutcome::ZeroTarget => new_b.push(bj.clone()),
        }
    }
    FactorSet::new(structure, new_a, new_b)
}

const MONOTONE_SLACK: f64 = 1e-9;

/// Run the alternating solver until the stopping criterion fires.
pub fn run<T: Scalar>(
    target: &TargetMatrix<T>,
    init: FactorSet<T>,
    config: &SolverConfig<T>,
) -> Result<(FactorSet<T>, RunReport<T>)> {
    config.validate()?;
    let start = Instant::now();
    let mut factors = init;
    let mut trace = Vec::new();
    let mut prev_obj = objective(&factors, target)?;
    let mut monotone_violations = 0usize;
    let mut sweeps_run = 0usize;
    let slack = T::from_f64_lit(MONOTONE_SLACK);

    for s in 0..config.max_sweeps {
        factors = sweep_indexed(&factors, target, config.damping, s)?;
        let obj = objective(&factors, target)?;
        if obj > prev_obj + slack * (T::one() + prev_obj) {
            monotone_violations += 1;
        }
        if config.record_trace {
            trace.push(obj);
        }
        sweeps_run = s + 1;
        let decrease = (prev_obj - obj) / (T::one() + prev_obj);
        prev_obj = obj;
        if sweeps_run >= config.min_sweeps && decrease < config.stop_rel_decrease {
            break;
        }
    }

    let zero_rows = (0..target.rows())
        .filter(|&i| target.row(i).iter().all(|&v| v == T::zero()))
        .count();
    let zero_columns = (0..target.cols())
        .filter(|&j| target.col(j).iter().all(|&v| v == T::zero()))
        .count();
    let report = RunReport {
        final_objective: prev_obj,
        final_residual_relative: residual_relative(&factors, target)?,
        kkt_residual: kkt_residual(&factors, target)?,
        objective_trace: trace,
        sweeps_run,
        monotone_violations,
        zero_columns,
        zero_rows,
        wall_time: start.elapsed(),
    };
    Ok((factors, report))
}

/// Max stationarity residual max_j ||A^T X_:j - A^T A b_j|| (and the
/// symmetric row quantity), normalized by 1 + ||X||_F. Zero rows/columns are
/// excluded.
pub fn kkt_residual<T: Scalar>(
    factors: &FactorSet<T>,
    target: &TargetMatrix<T>,
) -> Result<T> {
    let norm = T::one() + target.frobenius_norm();
    let mut worst = T::zero();
    for (j, bj) in factors.b().iter().enumerate() {
        let col = target.col(j);
        if col.iter().all(|&v| v == T::zero()) {
            continue;
        }
        let lhs = adjoint_apply(factors.a(), &col)?;
        let rhs = gram_apply(factors.a(), bj)?;
        worst = worst.max(lhs.sub(&rhs)?.norm());
    }
    for (i, ai) in factors.a().iter().enumerate() {
        let row = target.row(i);
        if row.iter().all(|&v| v == T::zero()) {
            continue;
        }
        let lhs = adjoint_apply(factors.b(), &row)?;
        let rhs = gram_apply(factors.b(), ai)?;
        worst = worst.max(lhs.sub(&rhs)?.norm());
    }
    Ok(worst / norm)
}

/// Minimum eigenvalue of P(b^{-1} # A^T A b) - A^T A; nonnegative when the
/// operator domination bound holds.
pub fn check_domination<T: Scalar>(factors: &[Element<T>], b: &Element<T>) -> Result<T> {
    let b_inv = power(b, -T::one())?;
    let gram_b = gram_apply(factors, b)?;
    let w = geometric_mean(&b_inv, &gram_b)?;
    let lhs = quad_matrix(&w);
    let rhs = gram_matrix(factors)?;
    lhs.sub(&rhs)?.min_eigenvalue()
}

/// Minimum eigenvalue of sqrt(P(a1 + a2)) - sqrt(P(a1)) - sqrt(P(a2));
/// nonnegative by square-root superadditivity of the quadratic
/// representation.
pub fn check_sqrt_superadditivity<T: Scalar>(a1: &Element<T>, a2: &Element<T>) -> Result<T> {
    let sum = a1.add(a2)?;
    let lhs = quad_matrix(&sum).sqrt_psd()?;
    let rhs = quad_matrix(a1)
        .sqrt_psd()?
        .add(&quad_matrix(a2).sqrt_psd()?)?;
    lhs.sub(&rhs)?.min_eigenvalue()
}

/// tr(a) <b, P(a^{1/2}) b> - <a, b>^2; nonnegative by the trace inequality.
pub fn check_trace_inequality<T: Scalar>(a: &Element<T>, b: &Element<T>) -> Result<T> {
    let a_sqrt = power(a, T::half())?;
    let pb = a_sqrt.quad_apply(b)?;
    Ok(a.trace() * b.inner(&pb)? - a.inner(b)?.powi(2))
}
