use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser)]
#[command(
    name = "clifford-hp",
    version,
    about = "Clifford Hayden-Preskill recovery: simulations, ensembles and checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the Bell-measurement recovery protocol once.
    RecoverBell(RecoverArgs),
    /// Run the local Z-measurement recovery protocol once.
    RecoverLocal(LocalArgs),
    /// Sample random Cliffords and tabulate recoverability.
    Ensemble(EnsembleArgs),
    /// Print logical operators on D B̄ and the stabilizer generators.
    Logical(RecoverArgs),
    /// Check the sign-matrix and Wigner-operator identities.
    VerifyAppendix(AppendixArgs),
    /// Walk through one instance end to end.
    Demo(RecoverArgs),
    /// Write an instance (tableau, partition and maps) as JSON.
    DumpInstance(RecoverArgs),
}

#[derive(Args, Clone)]
pub struct InstanceArgs {
    /// Total number of qubits.
    #[arg(long)]
    pub n: Option<usize>,
    /// Qubits thrown in (A).
    #[arg(long = "na", default_value_t = 1)]
    pub n_a: usize,
    /// Qubits already in the system (B); checked against n - n_A when given.
    #[arg(long = "nb")]
    pub n_b: Option<usize>,
    /// Radiated qubits (D).
    #[arg(long = "nd")]
    pub n_d: usize,
    /// Explicit output wires forming D, comma separated.
    #[arg(long = "d-wires", value_delimiter = ',')]
    pub d_wires: Option<Vec<usize>>,
    /// Gate-list file (H, S, CNOT, one per line).
    #[arg(long, group = "unitary")]
    pub gates: Option<PathBuf>,
    /// Tableau JSON file.
    #[arg(long, group = "unitary")]
    pub tableau: Option<PathBuf>,
    /// Sample a uniformly random Clifford (the default).
    #[arg(long, group = "unitary")]
    pub random: bool,
    /// Seed for every random choice; drawn from the OS when absent.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args, Clone)]
pub struct OutputArgs {
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format; json by default, text for demo and verify-appendix.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Clone)]
pub struct RecoverArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Clone)]
pub struct LocalArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Apply a random single-qubit Pauli to D before measuring.
    #[arg(long)]
    pub inject_error: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Protocol {
    Bell,
    Local,
}

#[derive(Args, Clone)]
pub struct EnsembleArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long = "na", default_value_t = 1)]
    pub n_a: usize,
    #[arg(long = "nb")]
    pub n_b: Option<usize>,
    #[arg(long = "nd")]
    pub n_d: usize,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads; results do not depend on this.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Simulate the local protocol with one random Pauli error on D per trial.
    #[arg(long)]
    pub inject_error: bool,
    /// Protocol whose recoverable fraction is printed in text mode.
    #[arg(long, value_enum, default_value_t = Protocol::Bell)]
    pub protocol: Protocol,
    /// Accepted for symmetry with the other subcommands; ensembles always sample.
    #[arg(long)]
    pub random: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Clone)]
pub struct AppendixArgs {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 1e-12)]
    pub tolerance: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::RecoverBell(a) => commands::cmd_recover_bell(a),
        Command::RecoverLocal(a) => commands::cmd_recover_local(a),
        Command::Ensemble(a) => commands::cmd_ensemble(a),
        Command::Logical(a) => commands::cmd_logical(a),
        Command::VerifyAppendix(a) => commands::cmd_verify_appendix(a),
        Command::Demo(a) => commands::cmd_demo(a),
        Command::DumpInstance(a) => commands::cmd_dump_instance(a),
    };
    match result {
        Ok(commands::Status::Success) => ExitCode::SUCCESS,
        Ok(commands::Status::VerificationFailed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
