//! Command-line front end of the `spiked` binary.
//!
//! Every command builds a [`Report`] of decimal strings, so the same result
//! renders as an aligned table, CSV or JSON. Settings resolve as
//! flag > environment > config file > built-in default.
//!
//! The config file is TOML with optional top-level keys:
//!
//! ```toml
//! precision = 256   # working bits
//! format = "table"  # table | csv | json
//! digits = 25       # significant digits printed
//! threads = 4       # workers for table1 and fig2
//! ```

mod commands;
pub mod reference;
mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::numerics::Precision;

pub use report::{Format, Report};

pub const PRECISION_ENV: &str = "SPIKED_PRECISION";
pub const CONFIG_ENV: &str = "SPIKED_CONFIG";

#[derive(Parser, Debug)]
#[command(name = "spiked", version, about = "Bound-state energies of PT-symmetric spiked oscillators")]
pub struct Cli {
    /// Working precision in bits (at least 64).
    #[arg(long, global = true, env = PRECISION_ENV)]
    pub precision: Option<u32>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Significant digits printed for each number.
    #[arg(long, global = true)]
    pub digits: Option<usize>,
    /// Worker threads for commands that run independent solves.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// TOML config file; see the module docs for the keys.
    #[arg(long, global = true, env = CONFIG_ENV)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Complex stationary points with their admissibility verdicts.
    Stationary(ModelArgs),
    /// Taylor coefficients of the potential about a centre.
    Taylor(TaylorArgs),
    /// Harmonic estimate at the admissible minimum.
    Harmonic(LevelArgs),
    /// Perturbation coefficients and partial sums.
    Perturb(PerturbArgs),
    /// Riccati–Padé ladder for one level.
    Rpm(RpmArgs),
    /// Harmonic, perturbative and Riccati–Padé estimates side by side.
    Compare(CompareArgs),
    /// Reproduce the 24 reference eigenvalues.
    Table1(Table1Args),
    /// Perturbative error curves against Riccati–Padé references.
    Fig2(Fig2Args),
    /// The potential along the shifted line `x = s - i eps`.
    Profile(ProfileArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    /// `x^(2m) + lambda/x^(2n)`: needs `--m --n --R`.
    Int,
    /// `-(ix)^(2+alpha) - g^2/(ix)^(6+beta)`: needs `--alpha --beta --g`.
    Ab,
    /// `x^2 + g^2/x^6`: needs `--g`.
    Sextic,
}

#[derive(Args, Clone, Debug)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub family: FamilyKind,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long = "R")]
    pub r: Option<String>,
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub beta: Option<String>,
    #[arg(long)]
    pub g: Option<String>,
}

#[derive(Args, Debug)]
pub struct TaylorArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Highest coefficient order.
    #[arg(long, default_value_t = 10)]
    pub order: usize,
    /// Centre; defaults to the admissible minimum.
    #[arg(long, requires = "center_im")]
    pub center_re: Option<String>,
    #[arg(long, requires = "center_re")]
    pub center_im: Option<String>,
}

#[derive(Args, Debug)]
pub struct LevelArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 0)]
    pub v: u32,
}

#[derive(Args, Debug)]
pub struct PerturbArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 0)]
    pub v: u32,
    /// Highest perturbative order `N`.
    #[arg(long = "order", default_value_t = 20)]
    pub order: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    General,
    Regularized,
}

#[derive(Args, Clone, Debug)]
pub struct LadderArgs {
    /// Largest Hankel size of the ladder.
    #[arg(long, default_value_t = 40)]
    pub dmax: usize,
    /// Hankel displacement.
    #[arg(long, default_value_t = 0)]
    pub d: usize,
    /// Stop once two successive rungs agree to this many digits.
    #[arg(long, default_value_t = 24)]
    pub settle: u32,
}

#[derive(Args, Debug)]
pub struct RpmArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 0)]
    pub v: u32,
    #[arg(long, value_enum, default_value_t = VariantArg::General)]
    pub variant: VariantArg,
    #[command(flatten)]
    pub ladder: LadderArgs,
    /// Fail unless the final rung claims at least this many digits.
    #[arg(long)]
    pub digits_target: Option<u32>,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Highest perturbative order searched for the optimal truncation.
    #[arg(long = "order", default_value_t = 40)]
    pub order: usize,
    #[command(flatten)]
    pub ladder: LadderArgs,
}

#[derive(Args, Debug)]
pub struct Table1Args {
    /// Required matching significant digits (at most 20).
    #[arg(long, default_value_t = 18)]
    pub digits_target: usize,
    /// Restrict to one `m`.
    #[arg(long)]
    pub m: Option<u32>,
    /// Restrict to one `n`.
    #[arg(long)]
    pub n: Option<u32>,
    /// Restrict to one `R` (as printed in the table).
    #[arg(long = "R")]
    pub r: Option<String>,
    /// Add wall-clock runtimes (makes the output non-reproducible).
    #[arg(long)]
    pub timings: bool,
    #[command(flatten)]
    pub ladder: LadderArgs,
}

#[derive(Args, Debug)]
pub struct Fig2Args {
    #[arg(long = "R", default_value = "2")]
    pub r: String,
    #[arg(long, default_value_t = 40)]
    pub nmax: usize,
    /// Largest accepted best-over-N `log10` relative error.
    #[arg(long, default_value_t = -4.0, allow_negative_numbers = true)]
    pub threshold: f64,
    /// Order up to which each curve must decrease.
    #[arg(long, default_value_t = 6)]
    pub initial: usize,
    /// Directory for the per-model `n,log10_rel_err` files.
    #[arg(long)]
    pub curves: Option<PathBuf>,
    #[command(flatten)]
    pub ladder: LadderArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ShiftArg {
    None,
    WellBottom,
}

#[derive(Args, Debug)]
pub struct ProfileArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Line offset; defaults to the well-depth scale `|x0|`.
    #[arg(long)]
    pub eps: Option<String>,
    #[arg(long, default_value = "-3", allow_hyphen_values = true)]
    pub s_min: String,
    #[arg(long, default_value = "3", allow_hyphen_values = true)]
    pub s_max: String,
    #[arg(long, default_value_t = 121)]
    pub samples: usize,
    #[arg(long, value_enum, default_value_t = ShiftArg::None)]
    pub shift: ShiftArg,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    precision: Option<u32>,
    format: Option<Format>,
    digits: Option<usize>,
    threads: Option<usize>,
}

/// Resolved global settings.
#[derive(Clone, Debug)]
pub struct Settings {
    pub precision: Precision,
    pub format: Format,
    pub digits: usize,
    pub threads: usize,
}

impl Settings {
    pub fn resolve(cli: &Cli) -> Result<Self> {
        let file = match &cli.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)?;
                toml::from_str::<FileConfig>(&text)
                    .map_err(|e| Error::Usage(format!("config {}: {e}", path.display())))?
            }
            None => FileConfig::default(),
        };
        let bits = cli.precision.or(file.precision).unwrap_or(Precision::DEFAULT.bits());
        let precision = Precision::new(bits).map_err(|e| Error::Usage(e.to_string()))?;
        let threads = cli
            .threads
            .or(file.threads)
            .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
            .max(1);
        Ok(Settings {
            precision,
            format: cli.format.or(file.format).unwrap_or(Format::Table),
            digits: cli.digits.or(file.digits).unwrap_or(25).max(1),
            threads,
        })
    }
}

/// Parse `args` (including the program name), run the command and return the
/// exit code: 0 when every tolerance is met, 1 when some check or solve
/// failed (listed on standard error), 2 for usage errors.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok((report, settings)) => {
            let text = report.render(settings.format);
            let written = match &cli.out {
                Some(path) => std::fs::write(path, text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("spiked: {e}");
                return 1;
            }
            for f in &report.failures {
                eprintln!("FAILED: {f}");
            }
            i32::from(!report.failures.is_empty())
        }
        Err(e @ (Error::Usage(_) | Error::InvalidInput(_) | Error::PrecisionTooLow(_))) => {
            eprintln!("spiked: {e}");
            2
        }
        Err(e) => {
            eprintln!("spiked: {e}");
            1
        }
    }
}

/// Run the parsed command without writing anything.
pub fn execute(cli: &Cli) -> Result<(Report, Settings)> {
    let settings = Settings::resolve(cli)?;
    let report = match &cli.command {
        Command::Stationary(a) => commands::stationary(a, &settings),
        Command::Taylor(a) => commands::taylor(a, &settings),
        Command::Harmonic(a) => commands::harmonic(a, &settings),
        Command::Perturb(a) => commands::perturb(a, &settings),
        Command::Rpm(a) => commands::rpm(a, &settings),
        Command::Compare(a) => commands::compare(a, &settings),
        Command::Table1(a) => commands::table1(a, &settings),
        Command::Fig2(a) => commands::fig2(a, &settings),
        Command::Profile(a) => commands::profile(a, &settings),
    }?;
    Ok((report, settings))
}

pub use commands::{ground_state, reproduce_table1, table1_report, ReproEntry, FIG2_MODELS};
