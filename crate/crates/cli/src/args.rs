use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "mtangle", version, about = "Multi-qubit m-tangle, S² invariant and phase-POVM measures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a named or random state to a state file
    Generate(GenerateArgs),
    /// Compute measures for a state file
    Compute(ComputeArgs),
    /// Run the identity and invariance suite on random states
    Verify(VerifyArgs),
    /// Tabulate Γ_m over uniform phases as CSV
    Sweep(SweepArgs),
    /// Check normalization, hermiticity and positivity of the phase POVM
    PovmCheck(PovmCheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StateName {
    Ghz,
    W,
    Bell,
    Product,
    Basis,
    RandomPure,
    RandomMixed,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    pub name: StateName,
    /// Number of qubits
    #[arg(long)]
    pub m: Option<usize>,
    /// Bell state index 0..=3 (Φ+, Φ-, Ψ+, Ψ-)
    #[arg(long)]
    pub index: Option<usize>,
    /// Bitstring for `basis`, qubit 1 first
    #[arg(long)]
    pub bits: Option<String>,
    /// Comma list of single-qubit factors for `product`: 0, 1, +, -, +i, -i
    #[arg(long, allow_hyphen_values = true)]
    pub factors: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Rank of `random-mixed` (defaults to 2^m)
    #[arg(long)]
    pub rank: Option<usize>,
    /// Output path; standard output when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Measure {
    Tangle,
    S2,
    Purity,
    Hs,
    Symmetry,
    Gamma,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Measures to report (default: all)
    #[arg(long, value_delimiter = ',')]
    pub measures: Vec<Measure>,
    /// Phases for Γ_m: one angle for every qubit or a comma list (accepts `pi/2`)
    #[arg(long, allow_hyphen_values = true)]
    pub phases: Option<String>,
    /// Emit the report as JSON
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Qubit counts to test
    #[arg(long, value_delimiter = ',', default_value = "2,4")]
    pub m: Vec<usize>,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Pass threshold on every worst residual
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Number of uniform phase points over [0, 2π)
    #[arg(long)]
    pub grid: usize,
    /// CSV output path; standard output when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PovmCheckArgs {
    /// Subsystem dimension N
    #[arg(long)]
    pub n: usize,
    /// Grid points per phase for the normalization average
    #[arg(long, default_value_t = 64)]
    pub grid: usize,
}
