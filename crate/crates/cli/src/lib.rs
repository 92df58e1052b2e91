//! Command implementations behind the `padic-min` binary.

use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use padic_minimality::sweep::DEFAULT_WORK_BUDGET;
use padic_minimality::{
    analyze, run_sweep, CoefficientBox, Error, IntPolynomial, Limits, Prime, SweepMode, SweepSpec,
};

pub mod records;

use records::{AnalyzeRecord, CyclesRecord, PsiRecord, StreamRecord, SweepRecord, TowerRecord};

#[derive(Debug, Parser)]
#[command(name = "padic-min", version, about = "Minimality of polynomial dynamics on the p-adic integers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Largest table (in entries) built for a single level
    #[arg(long, env = "PADIC_TABLE_BOUND", global = true)]
    pub table_bound: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct PolyArgs {
    #[arg(long)]
    pub prime: u64,
    /// Coefficients a0,a1,...,ad, constant term first
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: String,
}

impl PolyArgs {
    fn polynomial(&self) -> Result<IntPolynomial, Error> {
        IntPolynomial::parse(self.prime, &self.coeffs)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide minimality with every applicable criterion
    Analyze {
        #[command(flatten)]
        poly: PolyArgs,
    },
    /// Cycle structure of f mod p^level
    Cycles {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        level: u32,
    },
    /// Conjugacy to x+1 at one level, or the tower of levels 1..=nmax
    Conjugacy {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long, required_unless_present = "nmax")]
        level: Option<u32>,
        #[arg(long)]
        nmax: Option<u32>,
    },
    /// Orbit of a seed under f mod p^level
    Stream {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        level: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of values (default: one period)
        #[arg(long)]
        count: Option<u64>,
        /// Packed base-p digits with a header line
        #[arg(long)]
        digits: bool,
    },
    /// Cross-validate all deciders over a box of coefficients
    Sweep {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        degree: usize,
        /// Coefficients a1..ad range over [0, bound)
        #[arg(long)]
        bound: u64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        constant: i64,
        /// Levels checked by brute force (at least delta)
        #[arg(long, default_value_t = 0)]
        nmax: u32,
        /// Draw this many random tuples instead of enumerating
        #[arg(long)]
        samples: Option<u64>,
        /// Seed for sampling; also allows falling back to sampling over budget
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        threads: Option<usize>,
        /// Maximum number of full-cycle checks
        #[arg(long, env = "PADIC_WORK_BUDGET", default_value_t = DEFAULT_WORK_BUDGET)]
        budget: u64,
    },
}

/// Failure of a command, reported on stderr with exit status 2.
#[derive(Debug)]
pub enum CliError {
    Lib(Error),
    Io(io::Error),
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => e.fmt(f),
            CliError::Io(e) => e.fmt(f),
            CliError::Usage(s) => f.write_str(s),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

/// Run a parsed command, writing results to `out` and notes to `err`.
/// Returns the process exit status.
pub fn run(cli: &Cli, out: &mut impl Write, err: &mut impl Write) -> Result<u8, CliError> {
    let limits = cli.table_bound.map_or_else(Limits::default, Limits::with_table_bound);
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Analyze { poly } => {
            let f = poly.polynomial()?;
            let record = AnalyzeRecord::new(&f, analyze(&f, &limits)?);
            if json {
                emit_json(out, &record)?;
            } else {
                write!(out, "{record}")?;
            }
            Ok(if record.minimal { 0 } else { 1 })
        }
        Command::Cycles { poly, level } => {
            let f = poly.polynomial()?;
            let record = CyclesRecord::new(&f, &f.cycle_decomposition(*level, &limits)?);
            if json {
                emit_json(out, &record)?;
            } else {
                write!(out, "{record}")?;
            }
            Ok(0)
        }
        Command::Conjugacy { poly, level, nmax } => {
            let f = poly.polynomial()?;
            if let Some(level) = level {
                let table = f.build_psi(*level, &limits)?;
                if json {
                    emit_json(out, &PsiRecord::new(&f, &table))?;
                } else {
                    table.write_text(&mut *out)?;
                }
            }
            if let Some(n_max) = nmax {
                let record = TowerRecord::new(&f, f.verify_conjugacy_tower(*n_max, &limits)?);
                if json {
                    emit_json(out, &record)?;
                } else {
                    write!(out, "{record}")?;
                }
                if !record.passed {
                    return Ok(1);
                }
            }
            Ok(0)
        }
        Command::Stream { poly, level, seed, count, digits } => {
            let f = poly.polynomial()?;
            let period = f.prime().checked_pow(*level).unwrap_or(u64::MAX);
            let stream = f.full_cycle_stream(*level, *seed, count.unwrap_or(period), &limits)?;
            writeln!(err, "certificate: {:?}", stream.certificate())?;
            if json {
                emit_json(out, &StreamRecord::new(&f, *level, stream))?;
            } else if *digits {
                stream.write_packed(&mut *out)?;
            } else {
                stream.write_decimal(&mut *out)?;
            }
            Ok(0)
        }
        Command::Sweep { prime, degree, bound, constant, nmax, samples, seed, threads, budget } => {
            let prime = Prime::new(*prime)?;
            let coeff_box = CoefficientBox::new(prime, *constant, *degree, *bound)?;
            let mode = match samples {
                Some(samples) => SweepMode::Sampled { seed: seed.unwrap_or(0), samples: *samples },
                None => SweepMode::Exhaustive,
            };
            let mut spec = SweepSpec { coeff_box, mode, n_max: *nmax, budget: *budget };
            if spec.work().is_none_or(|w| w > spec.budget) && mode == SweepMode::Exhaustive {
                let Some(seed) = seed else {
                    return Err(CliError::Usage(format!(
                        "exhaustive sweep needs more than {} full-cycle checks; pass --seed to sample instead",
                        spec.budget
                    )));
                };
                spec.mode = SweepMode::Sampled { seed: *seed, samples: spec.affordable_samples() };
                writeln!(err, "box exceeds the work budget; sampling {} tuples with seed {seed}", spec.affordable_samples())?;
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads.unwrap_or(0))
                .build()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let report = pool.install(|| run_sweep(&spec, &limits))?;
            let record = SweepRecord::new(&spec, report);
            if json {
                emit_json(out, &record)?;
            } else {
                write!(out, "{record}")?;
            }
            Ok(if record.report.disagreements == 0 { 0 } else { 1 })
        }
    }
}

fn emit_json(out: &mut impl Write, value: &impl serde::Serialize) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}
