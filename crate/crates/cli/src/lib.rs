//! Command-line front end for the `krawtchouk` crate: spectra, coherent
//! states, overlaps, roots, the grid-oscillator comparison and the full
//! verification suite, emitted as JSON or CSV.

pub mod check;
mod commands;
mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use krawtchouk::{Complex64, Params};

pub use check::{CheckEntry, CheckReport};
pub use commands::execute;
pub use output::{Cell, Document, Table};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Math(#[from] krawtchouk::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for anything the caller got wrong or the environment refused.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "krawtchouk",
    version,
    about = "Krawtchouk oscillator: spectra, coherent states and checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectra of H~ (computed and closed form) and of H_AS.
    Spectrum(Common),
    /// Amplitudes and probabilities of one coherent state.
    Coherent(CoherentArgs),
    /// Pairwise overlaps of the four coherent families.
    Overlap(CoherentArgs),
    /// Zeros of the auxiliary polynomials with their quadrature weights.
    Roots(Common),
    /// The grid oscillator against the Fock-basis one, level by level.
    AsCompare(Common),
    /// Run the verification suite at one point or over the sweep grid.
    Check(CheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Disp,
    #[value(name = "eq49")]
    RootSum,
    Spin,
    Phase,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Probability parameter, 0 < p < 1.
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub p: f64,
    /// Number of levels minus one.
    #[arg(long = "N", default_value_t = 4)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CoherentArgs {
    #[command(flatten)]
    pub common: Common,
    /// Displacement label.
    #[arg(long, num_args = 2, value_names = ["RE", "IM"], allow_negative_numbers = true, default_values_t = [0.0, 0.0])]
    pub z: Vec<f64>,
    /// Spin label; defaults to `z`.
    #[arg(long, num_args = 2, value_names = ["RE", "IM"], allow_negative_numbers = true)]
    pub xi: Option<Vec<f64>>,
    /// Reference angle of the phase basis.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta0: f64,
    #[arg(long, value_enum, default_value_t = FamilyArg::Disp)]
    pub family: FamilyArg,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub common: Common,
    /// Run over p in {0.1,0.3,0.5,0.7,0.9} and N in {1,2,4,8,16,32,64}.
    #[arg(long)]
    pub sweep: bool,
}

/// Validated parameters shared by all commands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: Params,
    pub z: Complex64,
    pub xi: Complex64,
    pub theta0: f64,
    pub family: FamilyArg,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub sweep: bool,
}

fn complex(v: &[f64], flag: &str) -> Result<Complex64, CliError> {
    match v {
        [re, im] if re.is_finite() && im.is_finite() => Ok(Complex64::new(*re, *im)),
        _ => Err(CliError::Usage(format!(
            "--{flag} needs two finite numbers"
        ))),
    }
}

impl RunConfig {
    pub fn from_common(c: &Common) -> Result<Self, CliError> {
        Ok(Self {
            params: Params::new(c.p, c.n)?,
            z: Complex64::new(0.0, 0.0),
            xi: Complex64::new(0.0, 0.0),
            theta0: 0.0,
            family: FamilyArg::Disp,
            format: c.format,
            out: c.out.clone(),
            sweep: false,
        })
    }

    pub fn from_coherent(a: &CoherentArgs) -> Result<Self, CliError> {
        let mut cfg = Self::from_common(&a.common)?;
        cfg.z = complex(&a.z, "z")?;
        cfg.xi = match &a.xi {
            Some(v) => complex(v, "xi")?,
            None => cfg.z,
        };
        if !a.theta0.is_finite() {
            return Err(CliError::Usage("--theta0 must be finite".into()));
        }
        cfg.theta0 = a.theta0;
        cfg.family = a.family;
        Ok(cfg)
    }

    pub fn from_check(a: &CheckArgs) -> Result<Self, CliError> {
        let mut cfg = Self::from_common(&a.common)?;
        cfg.sweep = a.sweep;
        Ok(cfg)
    }
}
