//! Command-line front end: single points, dissociation curves, checks
//! against a coefficient table, and standalone Ising solving.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use h2ising::hamiltonian::computed_coefficients;
use h2ising::integrals::DEFAULT_ZETA;
use h2ising::ising_map::{apply_shift, recover_ground_energy, to_ising_problem};
use h2ising::ising_solver::{solve_anneal, solve_brute};
use h2ising::table::CoefficientTable;
use h2ising::{IsingCoefficients, IsingProblem, IsingSolution, RecoveryReport, ReducedCoefficients, Schedule};
use rayon::prelude::*;
use serde::Serialize;

pub mod svg;

/// Slack added before flooring the number of grid steps so that
/// `(3.1 - 0.6) / 0.05` still counts 50 intervals.
const GRID_SLACK: f64 = 1e-9;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error(transparent)]
    Core(#[from] h2ising::Error),
    #[error("{0}")]
    Tolerance(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) | CliError::Core(_) => 1,
            CliError::Tolerance(_) => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "h2ising", version, about = "Minimal-basis H2 ground state through an exact Ising mapping")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the full pipeline at one bond length.
    Single(SingleArgs),
    /// Scan a range of bond lengths.
    Curve(CurveArgs),
    /// Recompute the energy columns of a coefficient table from its g columns.
    TableCheck(TableCheckArgs),
    /// Solve an Ising problem read from a JSON file.
    IsingSolve(IsingSolveArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CoeffSource {
    Computed,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolverKind {
    Brute,
    Anneal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct CoeffArgs {
    /// Where the g coefficients come from.
    #[arg(long, value_enum, default_value = "table")]
    pub coeffs: CoeffSource,
    /// Orbital exponent scale for computed coefficients.
    #[arg(long, default_value_t = DEFAULT_ZETA)]
    pub zeta: f64,
    /// Coefficient table to use instead of the embedded one.
    #[arg(long)]
    pub table: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    #[arg(long, value_enum, default_value = "anneal")]
    pub solver: SolverKind,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Starting temperature (default: 5 x the largest coefficient).
    #[arg(long)]
    pub t_start: Option<f64>,
    #[arg(long)]
    pub t_end: Option<f64>,
    #[arg(long)]
    pub sweeps: Option<usize>,
    #[arg(long)]
    pub restarts: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct SingleArgs {
    /// Bond length in bohr.
    #[arg(long = "R")]
    pub r: f64,
    #[command(flatten)]
    pub coeffs: CoeffArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    #[arg(long = "R-start", default_value_t = 0.6)]
    pub start: f64,
    #[arg(long = "R-stop", default_value_t = 3.1)]
    pub stop: f64,
    #[arg(long = "R-step", default_value_t = 0.05)]
    pub step: f64,
    #[command(flatten)]
    pub coeffs: CoeffArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Also write a line chart of the exact and simulated energies.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct TableCheckArgs {
    /// Table to check (default: the embedded one).
    #[arg(long)]
    pub fixture: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-4)]
    pub tolerance: f64,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct IsingSolveArgs {
    /// Problem file: `{"n": .., "offset": .., "h": [..], "J": [[i, j, v], ..]}`.
    pub problem: PathBuf,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Output file (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl SolverArgs {
    fn validate(&self) -> CliResult<()> {
        for (name, v) in [("--t-start", self.t_start), ("--t-end", self.t_end)] {
            if let Some(v) = v {
                if !(v.is_finite() && v > 0.0) {
                    return Err(CliError::Validation(format!("{name} must be a positive number, got {v}")));
                }
            }
        }
        for (name, v) in [("--sweeps", self.sweeps), ("--restarts", self.restarts)] {
            if v == Some(0) {
                return Err(CliError::Validation(format!("{name} must be at least 1")));
            }
        }
        Ok(())
    }

    fn schedule_for(&self, p: &IsingProblem) -> Schedule {
        let d = Schedule::default_for(p);
        Schedule {
            t_start: self.t_start.unwrap_or(d.t_start),
            t_end: self.t_end.unwrap_or(d.t_end),
            sweeps: self.sweeps.unwrap_or(d.sweeps),
            restarts: self.restarts.unwrap_or(d.restarts),
        }
    }

    pub fn solve(&self, p: &IsingProblem) -> CliResult<IsingSolution> {
        let solution = match self.solver {
            SolverKind::Brute => solve_brute(p)?,
            SolverKind::Anneal => {
                let schedule = self.schedule_for(p);
                schedule.validate().map_err(|e| CliError::Validation(e.to_string()))?;
                solve_anneal(p, &schedule, self.seed)?
            }
        };
        Ok(solution)
    }
}

/// Resolves g coefficients for a bond length from the chosen source.
pub struct CoefficientProvider {
    source: CoeffSource,
    zeta: f64,
    table: Option<CoefficientTable>,
}

impl CoefficientProvider {
    pub fn new(args: &CoeffArgs) -> CliResult<Self> {
        if !(args.zeta.is_finite() && args.zeta > 0.0) {
            return Err(CliError::Validation(format!("--zeta must be positive, got {}", args.zeta)));
        }
        let table = match args.coeffs {
            CoeffSource::Table => Some(match &args.table {
                Some(path) => CoefficientTable::load(path)?,
                None => CoefficientTable::embedded(),
            }),
            CoeffSource::Computed => None,
        };
        Ok(Self { source: args.coeffs, zeta: args.zeta, table })
    }

    pub fn coefficients(&self, r: f64) -> CliResult<ReducedCoefficients> {
        let g = match &self.table {
            Some(t) => t.coefficients(r)?,
            None => computed_coefficients(r, self.zeta)?,
        };
        Ok(g)
    }

    pub fn source(&self) -> CoeffSource {
        self.source
    }
}

/// Everything produced at one bond length.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointReport {
    #[serde(rename = "R")]
    pub r: f64,
    pub g: ReducedCoefficients,
    pub ising: IsingCoefficients,
    pub solution: IsingSolution,
    pub recovery: RecoveryReport,
    /// Energy recovered from the Ising minimum.
    pub simulated: f64,
    /// `g0` plus the smallest eigenvalue from dense diagonalisation.
    pub exact: f64,
    pub diff: f64,
}

pub fn run_point(r: f64, g: &ReducedCoefficients, solver: &SolverArgs) -> CliResult<PointReport> {
    let ising = apply_shift(g);
    let solution = solver.solve(&to_ising_problem(&ising))?;
    let recovery = recover_ground_energy(g, solution.energy, ising.delta)?;
    let exact = h2ising::exact_ground_energy(g)?;
    let simulated = recovery.ground_energy;
    Ok(PointReport { r, g: *g, ising, solution, recovery, simulated, exact, diff: simulated - exact })
}

/// `start, start + step, ...` up to `stop`; always at least one point.
pub fn r_grid(start: f64, stop: f64, step: f64) -> CliResult<Vec<f64>> {
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
        return Err(CliError::Validation("R range must be finite".into()));
    }
    if !(step > 0.0) {
        return Err(CliError::Validation(format!("--R-step must be positive, got {step}")));
    }
    if start > stop {
        return Err(CliError::Validation(format!("--R-start {start} is above --R-stop {stop}")));
    }
    if !(start > 0.0) {
        return Err(CliError::Validation(format!("bond lengths must be positive, got {start}")));
    }
    let n = ((stop - start) / step + GRID_SLACK).floor() as usize + 1;
    Ok((0..n).map(|k| tidy(start + k as f64 * step)).collect())
}

/// Strips accumulated floating-point noise from a grid value.
fn tidy(r: f64) -> f64 {
    (r * 1e10).round() / 1e10
}

fn check_r(r: f64) -> CliResult<()> {
    if r.is_finite() && r > 0.0 {
        Ok(())
    } else {
        Err(CliError::Validation(format!("--R must be a positive bond length, got {r}")))
    }
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Core(e.into())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialise");
    s.push('\n');
    s
}

pub fn cmd_single(args: &SingleArgs) -> CliResult<String> {
    check_r(args.r)?;
    args.solver.validate()?;
    let provider = CoefficientProvider::new(&args.coeffs)?;
    let g = provider.coefficients(args.r)?;
    let report = run_point(args.r, &g, &args.solver)?;
    let text = match args.output.format {
        Format::Json => json(&report),
        Format::Csv => {
            let mut s = String::from("R,g0,g1,g2,g3,g4,a1,a2,a3,delta,Y,exact,simulated,diff\n");
            let g = &report.g;
            let a = &report.ising;
            let cells = [
                g.g0,
                g.g1,
                g.g2,
                g.g3,
                g.g4,
                a.a1,
                a.a2,
                a.a3,
                a.delta,
                report.solution.energy,
                report.exact,
                report.simulated,
                report.diff,
            ];
            s.push_str(&report.r.to_string());
            for v in cells {
                write!(s, ",{}", fixed4(v)).unwrap();
            }
            s.push('\n');
            s
        }
    };
    emit(args.output.out.as_deref(), &text)?;
    Ok(text)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveRow {
    #[serde(rename = "R")]
    pub r: f64,
    pub exact: f64,
    pub simulated: f64,
    pub diff: f64,
}

pub fn curve_rows(start: f64, stop: f64, step: f64, coeffs: &CoeffArgs, solver: &SolverArgs) -> CliResult<Vec<CurveRow>> {
    solver.validate()?;
    let grid = r_grid(start, stop, step)?;
    let provider = CoefficientProvider::new(coeffs)?;
    // collect() keeps grid order whatever order the workers finish in
    grid.par_iter()
        .map(|&r| {
            let g = provider.coefficients(r)?;
            let p = run_point(r, &g, solver)?;
            Ok(CurveRow { r, exact: p.exact, simulated: p.simulated, diff: p.diff })
        })
        .collect()
}

/// Fixed four-decimal rendering; never prints `-0.0000`.
pub fn fixed4(v: f64) -> String {
    let s = format!("{v:.4}");
    if s == "-0.0000" {
        "0.0000".into()
    } else {
        s
    }
}

pub fn curve_csv(rows: &[CurveRow]) -> String {
    let mut s = String::from("R,exact,simulated,diff\n");
    for row in rows {
        writeln!(s, "{},{},{},{}", row.r, fixed4(row.exact), fixed4(row.simulated), fixed4(row.diff)).unwrap();
    }
    s
}

pub fn cmd_curve(args: &CurveArgs) -> CliResult<String> {
    let rows = curve_rows(args.start, args.stop, args.step, &args.coeffs, &args.solver)?;
    let text = match args.output.format {
        Format::Csv => curve_csv(&rows),
        Format::Json => json(&rows),
    };
    emit(args.output.out.as_deref(), &text)?;
    if let Some(path) = &args.svg {
        fs::write(path, svg::line_chart(&rows)).map_err(|e| CliError::Core(e.into()))?;
    }
    Ok(text)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableCheckRow {
    #[serde(rename = "R")]
    pub r: f64,
    pub table_exact: f64,
    pub exact: f64,
    pub table_simulated: f64,
    pub simulated: f64,
    /// Larger of the two column deviations.
    pub deviation: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableCheckReport {
    pub tolerance: f64,
    pub rows: Vec<TableCheckRow>,
    pub max_deviation: f64,
    pub passed: usize,
}

impl TableCheckReport {
    pub fn all_pass(&self) -> bool {
        self.passed == self.rows.len()
    }

    pub fn summary(&self) -> String {
        format!(
            "{}/{} rows within {:e}; max deviation {:.3e}",
            self.passed,
            self.rows.len(),
            self.tolerance,
            self.max_deviation
        )
    }
}

pub fn table_check(table: &CoefficientTable, tolerance: f64, solver: &SolverArgs) -> CliResult<TableCheckReport> {
    if !(tolerance.is_finite() && tolerance >= 0.0) {
        return Err(CliError::Validation(format!("--tolerance must be non-negative, got {tolerance}")));
    }
    solver.validate()?;
    let rows: Vec<TableCheckRow> = table
        .rows()
        .par_iter()
        .map(|row| {
            let p = run_point(row.r, &row.coefficients(), solver)?;
            let deviation = (p.exact - row.exact).abs().max((p.simulated - row.simulated).abs());
            Ok(TableCheckRow {
                r: row.r,
                table_exact: row.exact,
                exact: p.exact,
                table_simulated: row.simulated,
                simulated: p.simulated,
                deviation,
                pass: deviation <= tolerance,
            })
        })
        .collect::<CliResult<_>>()?;
    let max_deviation = rows.iter().map(|r| r.deviation).fold(0.0, f64::max);
    let passed = rows.iter().filter(|r| r.pass).count();
    Ok(TableCheckReport { tolerance, rows, max_deviation, passed })
}

pub fn cmd_table_check(args: &TableCheckArgs) -> CliResult<String> {
    let table = match &args.fixture {
        Some(path) => CoefficientTable::load(path)?,
        None => CoefficientTable::embedded(),
    };
    let report = table_check(&table, args.tolerance, &args.solver)?;
    let text = match args.output.format {
        Format::Json => json(&report),
        Format::Csv => {
            let mut s = String::from("R,table_exact,exact,table_simulated,simulated,deviation,status\n");
            for row in &report.rows {
                writeln!(
                    s,
                    "{},{},{},{},{},{:.2e},{}",
                    row.r,
                    fixed4(row.table_exact),
                    fixed4(row.exact),
                    fixed4(row.table_simulated),
                    fixed4(row.simulated),
                    row.deviation,
                    if row.pass { "ok" } else { "FAIL" }
                )
                .unwrap();
            }
            s
        }
    };
    emit(args.output.out.as_deref(), &text)?;
    eprintln!("{}", report.summary());
    if report.all_pass() {
        Ok(text)
    } else {
        Err(CliError::Tolerance(report.summary()))
    }
}

pub fn cmd_ising(args: &IsingSolveArgs) -> CliResult<String> {
    args.solver.validate()?;
    let text = fs::read_to_string(&args.problem)
        .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", args.problem.display())))?;
    let problem =
        IsingProblem::from_json(&text).map_err(|e| CliError::Validation(format!("{}: {e}", args.problem.display())))?;
    let solution = args.solver.solve(&problem)?;
    let text = json(&solution);
    emit(args.out.as_deref(), &text)?;
    Ok(text)
}

pub fn run(cli: &Cli) -> CliResult<String> {
    match &cli.command {
        Command::Single(a) => cmd_single(a),
        Command::Curve(a) => cmd_curve(a),
        Command::TableCheck(a) => cmd_table_check(a),
        Command::IsingSolve(a) => cmd_ising(a),
    }
}
