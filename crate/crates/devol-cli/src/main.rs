//! `devol` — batch front end for the deviatoric/volumetric decomposition
//! library: material tensors, single-tensor splits, FEM runs with decomposed
//! stiffness, locking benchmarks, and BEM interior-field evaluation.
//!
//! Exit codes: 0 success, 1 numerical failure (factorization or iteration),
//! 2 input error (bad flags, files, or material parameters).

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use devol::bem::BemError;
use devol::elasticity::MaterialError;
use devol::fem::FemError;

#[derive(Debug)]
pub enum CliError {
    /// Bad parameters or files: exit 2.
    Input(String),
    /// The computation itself failed: exit 1.
    Numerical(String),
}

impl From<FemError> for CliError {
    fn from(e: FemError) -> CliError {
        match e {
            FemError::NotSpd | FemError::NonConvergence { .. } => {
                CliError::Numerical(e.to_string())
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<BemError> for CliError {
    fn from(e: BemError) -> CliError {
        // Proximity violations are bad queries, not solver breakdowns.
        CliError::Input(e.to_string())
    }
}

impl From<MaterialError> for CliError {
    fn from(e: MaterialError) -> CliError {
        CliError::Input(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "devol",
    version,
    about = "Deviatoric/volumetric decomposition of stress, strain, and elastic laws"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print C, D, their deviatoric/volumetric parts, and additivity residuals
    Material(MaterialArgs),
    /// Split one stress or strain tensor and print its invariants
    Decompose(DecomposeArgs),
    /// Solve a mesh under boundary conditions; write the Gauss-point field CSV
    Fem(FemArgs),
    /// Run a locking benchmark across the three integration schemes
    Locking(LockingArgs),
    /// Evaluate decomposed interior fields from known boundary data
    Bem(BemArgs),
}

#[derive(Args)]
pub struct MaterialArgs {
    /// Young's modulus
    #[arg(long = "E", value_name = "MODULUS")]
    pub e: Option<f64>,
    /// Poisson's ratio, in (-1, 0.5)
    #[arg(long, allow_negative_numbers = true)]
    pub nu: Option<f64>,
    /// key=value defaults file; flags win
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

#[derive(Args)]
pub struct DecomposeArgs {
    /// Six stress components in order 11 22 33 12 23 31
    #[arg(long, num_args = 6, value_name = "C", allow_negative_numbers = true)]
    pub stress: Option<Vec<f64>>,
    /// Six strain components (tensor shear, not doubled), same order
    #[arg(long, num_args = 6, value_name = "C", allow_negative_numbers = true, conflicts_with = "stress")]
    pub strain: Option<Vec<f64>>,
    /// Young's modulus (enables the energy split for strain input)
    #[arg(long = "E", value_name = "MODULUS")]
    pub e: Option<f64>,
    /// Poisson's ratio
    #[arg(long, allow_negative_numbers = true)]
    pub nu: Option<f64>,
    /// key=value defaults file; flags win
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

#[derive(Args)]
pub struct FemArgs {
    /// Mesh file (`dim nnodes nelems` header)
    #[arg(long, value_name = "PATH")]
    pub mesh: Option<PathBuf>,
    /// Boundary-condition file (`fix|load NODE DIR VALUE` lines)
    #[arg(long, value_name = "PATH")]
    pub bc: Option<PathBuf>,
    /// Output CSV path
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Young's modulus
    #[arg(long = "E", value_name = "MODULUS")]
    pub e: Option<f64>,
    /// Poisson's ratio
    #[arg(long, allow_negative_numbers = true)]
    pub nu: Option<f64>,
    /// Integration scheme
    #[arg(long, value_name = "full|vol-reduced|dev-reduced")]
    pub scheme: Option<String>,
    /// Solver backward-error target override
    #[arg(long, value_name = "X")]
    pub tol: Option<f64>,
    /// key=value defaults file; flags win
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

#[derive(Args)]
pub struct LockingArgs {
    /// Which benchmark to run
    #[arg(long, value_name = "block|cantilever")]
    pub benchmark: Option<String>,
    /// Poisson's ratio (default: 0.4999 for block, 1/3 for cantilever)
    #[arg(long, allow_negative_numbers = true)]
    pub nu: Option<f64>,
    /// Cantilever length-to-height ratio
    #[arg(long, value_name = "X")]
    pub aspect: Option<f64>,
    /// Comma-separated mesh sizes (default: 8 for block, 100 for cantilever)
    #[arg(long, value_name = "N,N,...")]
    pub sizes: Option<String>,
    /// Output CSV path
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// key=value defaults file; flags win
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

#[derive(Args)]
pub struct BemArgs {
    /// Boundary file (`nsegs` header, then `x1 y1 x2 y2 t1 t2 u1 u2`)
    #[arg(long, value_name = "PATH")]
    pub boundary: Option<PathBuf>,
    /// Interior query points file (`x y` per line)
    #[arg(long, value_name = "PATH")]
    pub points: Option<PathBuf>,
    /// Output CSV path
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Young's modulus
    #[arg(long = "E", value_name = "MODULUS")]
    pub e: Option<f64>,
    /// Poisson's ratio
    #[arg(long, allow_negative_numbers = true)]
    pub nu: Option<f64>,
    /// key=value defaults file; flags win
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Material(a) => commands::material(a),
        Command::Decompose(a) => commands::decompose(a),
        Command::Fem(a) => commands::fem(a),
        Command::Locking(a) => commands::locking(a),
        Command::Bem(a) => commands::bem(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
