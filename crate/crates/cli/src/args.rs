use std::path::PathBuf;

use bohrlab::series::DEFAULT_ORDER;
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Largest symmetry order accepted. Beyond it the two roots of the radius
/// polynomial near 1 fall inside one scan step and are not separated.
pub const MAX_P: u32 = 1000;

#[derive(Debug, Parser)]
#[command(
    name = "bohrlab",
    version,
    about = "Bohr radii for p-symmetric bounded and odd univalent functions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

impl Cli {
    /// Path given by `--out`, if any.
    pub fn out(&self) -> Option<&PathBuf> {
        match &self.command {
            Command::Radius(a) => a.out.as_ref(),
            Command::Table(a) => a.out.as_ref(),
            Command::Verify(a) => a.out.as_ref(),
            Command::Majorant(a) => a.out.as_ref(),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a single radius.
    Radius(RadiusArgs),
    /// Tabulate r_p for p = 1..=p_max.
    Table(TableArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Sample a certified majorant over a radius range.
    Majorant(MajorantArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RadiusKind {
    Theorem1,
    Rstar,
    Subordination,
    Remark1,
    Corollary5,
    Abs,
}

#[derive(Debug, Args)]
pub struct RadiusArgs {
    #[arg(long, value_enum)]
    pub kind: RadiusKind,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=MAX_P as i64))]
    pub p: Option<u32>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = bohrlab::radii::DEFAULT_TOL)]
    pub tol: f64,
    /// Write the JSON output record here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=MAX_P as i64))]
    pub p_max: u32,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    pub format: TableFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Theorem1,
    Lemma1,
    Lemma2,
    Schwarzpick,
    Classical,
    Eq6,
    Theorem2,
    Remark2,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=MAX_P as i64))]
    pub p: Option<u32>,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    /// Overridden by the BOHRLAB_SEED environment variable.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MajorantFunction {
    Extremal,
    Mobius,
    Oddkoebe,
}

#[derive(Debug, Args)]
pub struct MajorantArgs {
    #[arg(long, value_enum)]
    pub function: MajorantFunction,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=MAX_P as i64))]
    pub p: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    pub r_from: f64,
    #[arg(long, default_value_t = 0.95)]
    pub r_to: f64,
    #[arg(long, default_value_t = 96)]
    pub steps: usize,
    /// Truncation order of the expansion.
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
