//! `tgs`: thermal graph states on the command line.
//!
//! Subcommands: `graph` (generators), `sweep` (negativity vs temperature),
//! `tc` (critical temperatures), `window` (bound-entanglement report),
//! `verify` (spectral vs dephasing construction).
//!
//! Exit codes: 0 success, 1 usage error, 2 cap or precondition violation,
//! 3 solver non-convergence, 4 verification failure.

mod commands;
mod output;
mod parse;

use std::fmt;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use tgs_core::entanglement::DEFAULT_TC_GRID_POINTS;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(std::io::Error),
    Core(tgs_core::Error),
    VerificationFailed { failures: usize },
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::VerificationFailed { failures } => {
                write!(f, "{failures} verification check(s) failed")
            }
        }
    }
}

impl From<tgs_core::Error> for CliError {
    fn from(e: tgs_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use tgs_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Core(e) => match e {
                E::SeparableAtAllProbed | E::ExceedsTMax(_) | E::EigenNoConvergence => 3,
                _ => 2,
            },
            CliError::VerificationFailed { .. } => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Parser)]
#[command(
    name = "tgs",
    version,
    about = "Thermal graph states: negativities, critical temperatures, bound-entanglement windows"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Generate a graph JSON file
    Graph {
        #[command(subcommand)]
        generator: Generator,
    },
    /// Sample negativity over a temperature grid for one bipartition
    Sweep(SweepArgs),
    /// Solve a critical temperature (closed form, pair root, or numeric)
    Tc(TcArgs),
    /// Probe cuts and sites and report the bound-entanglement window
    Window(WindowArgs),
    /// Compare the spectral and dephasing constructions per temperature
    Verify(VerifyArgs),
}

#[derive(Args)]
pub struct CouplingArgs {
    /// Uniform coupling strength for every vertex
    #[arg(long, default_value_t = 1.0, conflicts_with = "couplings", allow_negative_numbers = true)]
    pub coupling: f64,
    /// Comma-separated per-vertex couplings
    #[arg(long)]
    pub couplings: Option<String>,
}

#[derive(Subcommand)]
pub enum Generator {
    /// Path graph 0 - 1 - ... - (n-1)
    Chain {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        couplings: CouplingArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Open-boundary square lattice, row-major vertex order
    Lattice {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[command(flatten)]
        couplings: CouplingArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Star with hub vertex 0
    Star {
        #[arg(long)]
        leaves: usize,
        #[command(flatten)]
        couplings: CouplingArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
pub struct SweepArgs {
    /// Graph JSON file
    #[arg(long)]
    pub graph: PathBuf,
    /// Bipartition: `cut:<i>`, `site:<i>`, `even-odd`, or `set:<i,j,...>`
    #[arg(long)]
    pub partition: String,
    /// Temperature grid start:stop:steps
    #[arg(long)]
    pub temps: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Output path (stdout if omitted); CSV gets a .meta.json sidecar
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Force the full-state computation instead of the boundary reduction
    #[arg(long)]
    pub no_reduce: bool,
    /// Worker threads for the grid (default: all available)
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Largest dense problem to accept, in qubits (hard cap 14)
    #[arg(long, default_value_t = 12)]
    pub max_qubits: usize,
}

#[derive(Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["equal", "pair", "graph"])))]
pub struct TcArgs {
    /// Closed form for a boundary pair with equal couplings B
    #[arg(long, value_name = "B", allow_negative_numbers = true)]
    pub equal: Option<f64>,
    /// Pair root for couplings B_i B_j
    #[arg(long, num_args = 2, value_names = ["B_I", "B_J"], allow_negative_numbers = true)]
    pub pair: Option<Vec<f64>>,
    /// Numeric solve on a graph file (needs --partition)
    #[arg(long, requires = "partition")]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub partition: Option<String>,
    /// Upper bracket for the numeric solve (default: 10 * max coupling)
    #[arg(long)]
    pub t_max: Option<f64>,
    /// Coarse grid resolution used to bracket the crossing
    #[arg(long, default_value_t = DEFAULT_TC_GRID_POINTS)]
    pub grid_points: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct WindowArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Contiguous cut positions: 'all' or a comma list
    #[arg(long, default_value = "all")]
    pub cuts: String,
    /// Single-site partitions: 'all' or a comma list
    #[arg(long, default_value = "all")]
    pub sites: String,
    /// Worker threads (default: all available)
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Temperature grid start:stop:steps
    #[arg(long, default_value = "0.5:2.0:4")]
    pub temps: String,
    /// Trace-distance tolerance per temperature
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Extra trials with couplings resampled uniformly from (0.1, 3)
    #[arg(long, default_value_t = 0)]
    pub trials: usize,
    /// Seed for the randomized trials
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(e) = commands::run(cli.command) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
