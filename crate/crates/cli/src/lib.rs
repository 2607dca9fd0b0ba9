//! Command-line front end: resource reports, VQE runs, tapering and
//! torsion fits.

mod fit;
mod resources;
mod taper_cmd;
mod vqe_cmd;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use resources::{build_report, ReportRow, REPORT_SCHEMA_VERSION};
pub use vqe_cmd::{VqeReport, VQE_SCHEMA_VERSION};

/// Environment variable holding the simulator width cap.
pub const MAX_QUBITS_ENV: &str = "QPEP_MAX_QUBITS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Domain(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) | CliError::Io(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "qpep", version, about = "Quantum resource estimates and desk-scale VQE for peptide chemistry")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AnsatzKind {
    Uccsd,
    Kupccgsd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OptimizerKind {
    NelderMead,
    Spsa,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Qubit, gate-count and depth report for a roster of molecules.
    Resources {
        /// Roster file of `label formula` lines; defaults to the 20 homodipeptides.
        #[arg(long)]
        roster: Option<PathBuf>,
        #[arg(long, default_value = "STO-3G")]
        basis: String,
        /// Extra `basis element count` lines merged into the basis catalog.
        #[arg(long)]
        basis_overrides: Option<PathBuf>,
        /// Count only valence orbitals and electrons.
        #[arg(long)]
        active_space: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Repetitions for the k-UpCCGSD columns.
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Runs VQE on an FCIDUMP Hamiltonian.
    Vqe {
        fcidump: PathBuf,
        #[arg(long, value_enum, default_value = "uccsd")]
        ansatz: AnsatzKind,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Remove qubits using Z2 symmetries first.
        #[arg(long)]
        taper: bool,
        /// Also report the exact ground energy and the gap.
        #[arg(long)]
        fci: bool,
        /// Doubly occupied orbitals to freeze.
        #[arg(long, default_value_t = 0)]
        n_core: usize,
        #[arg(long, value_enum, default_value = "nelder-mead")]
        optimizer: OptimizerKind,
        #[arg(long, default_value_t = 20_000)]
        max_iter: usize,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        restarts: usize,
        /// Start from uniform noise of this size instead of zeros.
        #[arg(long)]
        perturb: Option<f64>,
        /// Simulator width cap.
        #[arg(long, env = MAX_QUBITS_ENV, default_value_t = qpep::sim::DEFAULT_MAX_QUBITS)]
        max_qubits: usize,
    },
    /// Prints symmetry generators and the tapered Hamiltonian.
    Taper {
        /// FCIDUMP file, or Pauli text with `--pauli`.
        input: PathBuf,
        #[arg(long)]
        pauli: bool,
        #[arg(long, default_value_t = 0)]
        n_core: usize,
        /// Comma-separated ±1 values; defaults to the best sector for the reference.
        #[arg(long, allow_hyphen_values = true)]
        sector: Option<String>,
        /// Electrons in the reference for `--pauli` input.
        #[arg(long)]
        electrons: Option<usize>,
        #[arg(long, env = MAX_QUBITS_ENV, default_value_t = qpep::sim::DEFAULT_MAX_QUBITS)]
        max_qubits: usize,
    },
    /// Fits a torsion series to an `angle_rad,energy` scan.
    FitTorsion {
        scan: PathBuf,
        #[arg(long)]
        n_max: usize,
        /// Write the parameter CSV here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

pub(crate) fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Executes a parsed command.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Resources { roster, basis, basis_overrides, active_space, format, k } => {
            resources::run(roster.as_deref(), &basis, basis_overrides.as_deref(), active_space, format, k, out)
        }
        Command::Vqe {
            fcidump,
            ansatz,
            k,
            taper,
            fci,
            n_core,
            optimizer,
            max_iter,
            tol,
            seed,
            restarts,
            perturb,
            max_qubits,
        } => {
            let opts = vqe_cmd::VqeOptions {
                ansatz,
                k,
                taper,
                fci,
                n_core,
                optimizer,
                max_iter,
                tol,
                seed,
                restarts,
                perturb,
                max_qubits,
            };
            vqe_cmd::run(&fcidump, &opts, out)
        }
        Command::Taper { input, pauli, n_core, sector, electrons, max_qubits } => {
            taper_cmd::run(&input, pauli, n_core, sector.as_deref(), electrons, max_qubits, out)
        }
        Command::FitTorsion { scan, n_max, output } => fit::run(&scan, n_max, output.as_deref(), out, err),
    }
}

/// Parses `args` (program name first), runs, reports errors on `err` and
/// returns the process exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    1
                }
            };
        }
    };
    match run(cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
