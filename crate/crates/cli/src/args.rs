use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "pulseforge", version, about = "Composite-pulse error sensing in three-level Lambda systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep an error parameter and record the final population.
    Sweep(SweepArgs),
    /// Recompute one of the FWHM tables and compare with reference values.
    Table(TableArgs),
    /// Run the invariant suite.
    Validate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PhaseArg {
    Same,
    Alt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    /// Time-reverse even pulses for alternating-phase STIRAP, keep order otherwise.
    Auto,
    Fixed,
    Reverse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ErrorArg {
    Rabi,
    Detuning,
    Arm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AssignArg {
    FixedP,
    FixedS,
    Alt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObservableArg {
    /// P3 for odd N, P1 for even N.
    Auto,
    P1,
    P3,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum, default_value = "1")]
    pub case: CaseArg,
    /// Pulse kind; defaults to `pi` for case 1 and `cds` for case 2.
    #[arg(long)]
    pub pulse: Option<String>,
    /// Ansatz parameter of the `sta` pulse.
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub sta_n: f64,
    /// Pulse counts, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "5")]
    pub n: Vec<usize>,
    #[arg(long, value_enum, default_value = "same")]
    pub phase: PhaseArg,
    #[arg(long, value_enum, default_value = "auto")]
    pub order: OrderArg,
    /// Error channel; defaults to `rabi` for case 1 and `arm` for case 2.
    #[arg(long, value_enum)]
    pub error: Option<ErrorArg>,
    /// Arm assignment for `--error arm`.
    #[arg(long, value_enum, default_value = "alt")]
    pub assign: AssignArg,
    /// `min:max:points`, symmetric about 0 with an odd point count.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    #[arg(long, value_enum, default_value = "auto")]
    pub observable: ObservableArg,
    /// Output path without extension.
    #[arg(long, default_value = "sweep")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub id: u8,
    /// Relative tolerance applied to every cell instead of the per-column bands.
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}
