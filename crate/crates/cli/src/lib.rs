//! Command-line front end: analysis reports, claim verification, figures and
//! Gershgorin sweeps for polynomials read from JSON files.

pub mod analyze;
pub mod figure;
pub mod input;
pub mod json;
pub mod sweep;
pub mod verify;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

pub use input::Input;

pub const DEFAULT_SEED: u64 = 20_240_101;

#[derive(Debug, Parser)]
#[command(name = "lemniscate", version, about = "Localize polynomial zeros in lemniscate regions")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Relative tolerance of the real root solvers.
    #[arg(long, global = true, default_value_t = lemniscate::roots_real::DEFAULT_TOL)]
    pub tol: f64,
    /// Seed for randomized checks and random inputs.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Suppress non-essential output.
    #[arg(long, global = true)]
    pub quiet: bool,
}

impl Default for GlobalArgs {
    fn default() -> Self {
        Self {
            tol: lemniscate::roots_real::DEFAULT_TOL,
            seed: DEFAULT_SEED,
            json: false,
            quiet: false,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pellet brackets, Cauchy radii, regions, certificates and zero counts.
    Analyze(AnalyzeArgs),
    /// Check every applicable localization claim against the root oracle.
    Verify(VerifyArgs),
    /// Draw inclusion regions to SVG or PGM.
    Render(RenderArgs),
    /// Scaled Gershgorin disk pairs over a range of x.
    Sweep(SweepArgs),
    /// Pellet outcome for every split index.
    Scan(ScanArgs),
}

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    pub poly: PathBuf,
    /// Split indices (comma separated).
    #[arg(long, value_delimiter = ',', conflicts_with = "all")]
    pub k: Vec<usize>,
    /// Analyze every split index (the default when --k is absent).
    #[arg(long)]
    pub all: bool,
    /// Disk radius for the disjointness certificate; default is half the
    /// smallest foci distance.
    #[arg(long)]
    pub eta: Option<f64>,
    /// Grid resolution for component decomposition.
    #[arg(long, default_value_t = 256)]
    pub res: usize,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Polynomial file; may be omitted with --random-degree.
    pub poly: Option<PathBuf>,
    /// Verify a seeded random polynomial of this degree instead.
    #[arg(long)]
    pub random_degree: Option<usize>,
    /// Lower every region level by this fraction before checking (fault
    /// injection).
    #[arg(long)]
    pub perturb_level: Option<f64>,
    /// Grid resolution for component decomposition.
    #[arg(long, default_value_t = 256)]
    pub res: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegionSet {
    Omega,
    OmegaRecip,
    Upsilon1,
    Upsilon2,
}

#[derive(Debug, Clone, Args)]
pub struct RenderArgs {
    pub poly: PathBuf,
    #[arg(long, value_enum)]
    pub set: RegionSet,
    /// Split indices (comma separated); Omega sets use the first.
    #[arg(long, value_delimiter = ',', required = true)]
    pub k: Vec<usize>,
    /// re_min,re_max,im_min,im_max
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub window: Option<Vec<f64>>,
    #[arg(long, default_value_t = 512)]
    pub res: usize,
    /// Output file; the extension selects SVG or PGM.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    pub poly: PathBuf,
    /// Split index.
    #[arg(long)]
    pub k: usize,
    /// Smallest scaling (positive).
    #[arg(long)]
    pub x_from: f64,
    #[arg(long)]
    pub x_to: f64,
    /// Grid points, both ends included.
    #[arg(long, default_value_t = 11)]
    pub steps: usize,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    pub poly: PathBuf,
}

/// Failure classes with their process exit codes.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("solver failure: {0}")]
    Solver(lemniscate::Error),
    #[error("i/o failure: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Solver(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl From<lemniscate::Error> for CliError {
    fn from(e: lemniscate::Error) -> Self {
        match e {
            lemniscate::Error::Io(msg) => CliError::Io(msg),
            other => CliError::Solver(other),
        }
    }
}

/// Result of a command: the JSON document, its text rendering and whether
/// every checked claim held.
#[derive(Debug, Clone)]
pub struct Report {
    pub json: Value,
    pub text: String,
    pub ok: bool,
}

impl Report {
    pub fn render(&self, global: &GlobalArgs) -> String {
        if global.json {
            let mut s = json::to_string(&self.json);
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }

    /// 0 on success, 1 when a verified claim failed.
    pub fn exit_code(&self) -> i32 {
        if self.ok {
            0
        } else {
            1
        }
    }
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Analyze(args) => analyze::run(&Input::load(&args.poly)?, args, g),
        Command::Verify(args) => {
            let input = match (args.random_degree, &args.poly) {
                (Some(degree), _) => Input::random(degree, g.seed)?,
                (None, Some(path)) => Input::load(path)?,
                (None, None) => {
                    return Err(CliError::Parse(
                        "verify needs a polynomial file or --random-degree".into(),
                    ))
                }
            };
            verify::run(&input, args, g)
        }
        Command::Render(args) => figure::run(&Input::load(&args.poly)?, args, g),
        Command::Sweep(args) => sweep::run(&Input::load(&args.poly)?, args, g),
        Command::Scan(args) => analyze::scan(&Input::load(&args.poly)?, g),
    }
}
