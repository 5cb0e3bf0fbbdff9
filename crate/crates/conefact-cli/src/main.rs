use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use conefact_cli::experiment::{
    run_experiment, ExperimentConfig, ExperimentError, TargetSource,
};
use conefact_cli::spec_parse::parse_cone_spec;
use conefact_cli::table::{emit_csv, emit_table, GridCell};
use conefact_core::factor_map::residual_relative;
use conefact_core::io::factor_set_from_json;
use conefact_core::spectral::min_eigenvalue;

const EXIT_PARSE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(name = "conefact", about = "Cone factorizations of nonnegative matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SolverFlags {
    /// Damping epsilon.
    #[arg(long, default_value_t = 1e-6)]
    eps: f64,
    #[arg(long, default_value_t = 100)]
    stage1_starts: usize,
    #[arg(long, default_value_t = 100)]
    stage1_sweeps: usize,
    #[arg(long, default_value_t = 10)]
    stage2_keep: usize,
    #[arg(long, default_value_t = 900)]
    stage2_sweeps: usize,
}

impl SolverFlags {
    fn apply(&self, config: &mut ExperimentConfig) {
        config.eps = self.eps;
        config.stage1_starts = self.stage1_starts;
        config.stage1_sweeps = self.stage1_sweeps;
        config.stage2_keep = self.stage2_keep;
        config.stage2_sweeps = self.stage2_sweeps;
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the two-stage multi-start solver for one cone structure.
    Solve {
        /// `ngon:<n>` or a CSV file with the target matrix.
        #[arg(long)]
        target: String,
        /// Cone structure, e.g. `soc:2*3` or `orthant:4 x psd:3`.
        #[arg(long)]
        cone: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        solver: SolverFlags,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep a (soc_k, l copies) grid and print the residual table.
    Grid {
        #[arg(long)]
        target: String,
        /// Inclusive range of soc sizes, e.g. `1..4`.
        #[arg(long)]
        k: String,
        /// Inclusive range of copy counts, e.g. `1..4`.
        #[arg(long)]
        l: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        solver: SolverFlags,
        /// Write the full-precision CSV here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a stored factor set against a target matrix.
    Verify {
        /// Factor-set JSON file.
        #[arg(long)]
        factors: PathBuf,
        #[arg(long)]
        target: String,
    },
}

struct CliFailure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> CliFailure {
    CliFailure {
        code,
        message: message.into(),
    }
}

impl From<ExperimentError> for CliFailure {
    fn from(e: ExperimentError) -> Self {
        let code = match &e {
            ExperimentError::Target(_) | ExperimentError::Config(_) => EXIT_PARSE,
            ExperimentError::Io { .. } => EXIT_IO,
            ExperimentError::Core(_) => 1,
        };
        fail(code, e.to_string())
    }
}

/// Inclusive `a..b` range.
fn parse_range(text: &str) -> Result<std::ops::RangeInclusive<usize>, CliFailure> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| fail(EXIT_PARSE, format!("bad range {text:?}, expected a..b")))?;
    let lo: usize = lo
        .parse()
        .map_err(|_| fail(EXIT_PARSE, format!("bad range start {lo:?}")))?;
    let hi: usize = hi
        .parse()
        .map_err(|_| fail(EXIT_PARSE, format!("bad range end {hi:?}")))?;
    if lo == 0 || hi < lo {
        return Err(fail(EXIT_PARSE, format!("empty or zero-based range {text:?}")));
    }
    Ok(lo..=hi)
}

fn write_out(path: &PathBuf, content: &str) -> Result<(), CliFailure> {
    std::fs::write(path, content)
        .map_err(|e| fail(EXIT_IO, format!("cannot write {}: {e}", path.display())))
}

fn cmd_solve(
    target: &str,
    cone: &str,
    seed: u64,
    solver: &SolverFlags,
    out: Option<&PathBuf>,
) -> Result<(), CliFailure> {
    let source = TargetSource::parse(target)?;
    let structure =
        parse_cone_spec(cone).map_err(|e| fail(EXIT_PARSE, e.to_string()))?;
    let mut config = ExperimentConfig::new(structure, seed);
    solver.apply(&mut config);
    let report = run_experiment(&source, &config)?;
    match report.best_residual {
        Some(r) => println!(
            "target {} cone {} seed {}: best residual {r:.6e} (start {})",
            report.target,
            report.cone,
            report.seed,
            report.best_start.unwrap()
        ),
        None => println!(
            "target {} cone {}: every start failed",
            report.target, report.cone
        ),
    }
    if let Some(path) = out {
        let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
        text.push('\n');
        write_out(path, &text)?;
    }
    Ok(())
}

fn cmd_grid(
    target: &str,
    k: &str,
    l: &str,
    seed: u64,
    solver: &SolverFlags,
    out: Option<&PathBuf>,
) -> Result<(), CliFailure> {
    let source = TargetSource::parse(target)?;
    let k_range = parse_range(k)?;
    let l_range = parse_range(l)?;
    let mut cells = Vec::new();
    for k in k_range {
        for l in l_range.clone() {
            let structure = parse_cone_spec(&format!("soc:{k}*{l}"))
                .map_err(|e| fail(EXIT_PARSE, e.to_string()))?;
            let mut config = ExperimentConfig::new(structure, seed);
            solver.apply(&mut config);
            let report = run_experiment(&source, &config)?;
            cells.push(GridCell {
                k,
                l,
                best_residual: report.best_residual,
            });
        }
    }
    print!("{}", emit_table(&cells));
    if let Some(path) = out {
        write_out(path, &emit_csv(&cells))?;
    }
    Ok(())
}

fn cmd_verify(factors: &PathBuf, target: &str) -> Result<(), CliFailure> {
    let text = std::fs::read_to_string(factors)
        .map_err(|e| fail(EXIT_IO, format!("cannot read {}: {e}", factors.display())))?;
    let set = factor_set_from_json(&text).map_err(|e| fail(EXIT_PARSE, e.to_string()))?;
    let source = TargetSource::parse(target)?;
    let matrix = source.load()?;
    let residual =
        residual_relative(&set, &matrix).map_err(|e| fail(EXIT_PARSE, e.to_string()))?;
    println!("structure: {}", set.structure().to_spec_string());
    println!("relative residual: {residual:.6e}");
    for (side, list) in [("a", set.a()), ("b", set.b())] {
        for (i, f) in list.iter().enumerate() {
            let margin = min_eigenvalue(f).map_err(|e| fail(1, e.to_string()))?;
            println!("{side}[{i}] min eigenvalue: {margin:.6e}");
        }
    }
    let all_in_cone = set
        .a()
        .iter()
        .chain(set.b())
        .all(|f| min_eigenvalue(f).map(|m| m >= -1e-12).unwrap_or(false));
    println!("all factors in cone: {all_in_cone}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve {
            target,
            cone,
            seed,
            solver,
            out,
        } => cmd_solve(target, cone, *seed, solver, out.as_ref()),
        Command::Grid {
            target,
            k,
            l,
            seed,
            solver,
            out,
        } => cmd_grid(target, k, l, *seed, solver, out.as_ref()),
        Command::Verify { factors, target } => cmd_verify(factors, target),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
