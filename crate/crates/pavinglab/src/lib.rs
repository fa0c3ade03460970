//! Batch front-end: reads a JSON instance file, runs one mode over its specs and writes
//! CSV and JSON results plus a run metadata sidecar.

pub mod commands;
pub mod instance;

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Parser;
use flag_engine::{Budget, FlagError, DEFAULT_BUDGET};
use paving_engine::PavingError;
use serde::Serialize;

pub use commands::{execute, Report, Settings};
pub use instance::{load, InstanceFile, Mode, SpecRecord};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Invariant(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    /// 0 success, 1 input error, 2 budget exceeded, 3 violated invariant.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io { .. } => 1,
            CliError::Budget(_) => 2,
            CliError::Invariant(_) => 3,
        }
    }

    /// Prefixes the message with the id of the record it concerns.
    pub fn context(self, id: &str) -> Self {
        match self {
            CliError::Input(m) => CliError::Input(format!("spec {id}: {m}")),
            CliError::Budget(m) => CliError::Budget(format!("spec {id}: {m}")),
            CliError::Invariant(m) => CliError::Invariant(format!("spec {id}: {m}")),
            io => io,
        }
    }
}

impl From<FlagError> for CliError {
    fn from(e: FlagError) -> Self {
        match e {
            FlagError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            FlagError::NonIntegral(_) => CliError::Invariant(e.to_string()),
            e => CliError::Input(e.to_string()),
        }
    }
}

impl From<PavingError> for CliError {
    fn from(e: PavingError) -> Self {
        match e {
            PavingError::Flag(f) => f.into(),
            PavingError::NotDistinguished { .. } => {
                CliError::Input(format!("{e}; pave the distinguished core, or count with fixed-count"))
            }
            PavingError::ClaimViolation(_) | PavingError::InvalidReduction(_) => CliError::Invariant(e.to_string()),
            e => CliError::Input(e.to_string()),
        }
    }
}

impl From<ideal_combinatorics::IdealError> for CliError {
    fn from(e: ideal_combinatorics::IdealError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<nilpotent_core::NilpotentError> for CliError {
    fn from(e: nilpotent_core::NilpotentError) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Clone, Debug, Parser)]
#[command(name = "pavinglab", version, about = "Point counts, count polynomials and verified pavings of flag loci")]
pub struct Args {
    /// JSON instance file.
    #[arg(long)]
    pub instance: PathBuf,
    /// Output directory; defaults to the instance's `out`, else the current directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Cap on candidate subspaces examined per search.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Prime used to check interpolated polynomials.
    #[arg(long)]
    pub holdout_prime: Option<u64>,
}

#[derive(Serialize)]
struct RunMeta<'a> {
    tool: &'static str,
    version: &'static str,
    mode: &'static str,
    instance: String,
    specs: usize,
    budget: u64,
    holdout_prime: Option<u64>,
    jobs: usize,
    files: Vec<&'a str>,
    exit_code: i32,
    elapsed_ms: u128,
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Runs an instance and writes its outputs. Files are written even when the run ends
/// in a violated invariant, which is then returned.
pub fn run(args: &Args) -> Result<(), CliError> {
    let start = Instant::now();
    let instance = load(&args.instance)?;
    let out = match (&args.out, &instance.out) {
        (Some(dir), _) => dir.clone(),
        (None, Some(dir)) => args.instance.parent().unwrap_or(Path::new(".")).join(dir),
        (None, None) => PathBuf::from("."),
    };
    std::fs::create_dir_all(&out).map_err(|source| CliError::Io { path: out.clone(), source })?;
    let settings = Settings {
        budget: Budget { cap: args.budget.or(instance.budget).unwrap_or(DEFAULT_BUDGET) },
        holdout: args.holdout_prime.or(instance.holdout_prime),
    };
    log::info!("{} over {} spec(s), budget {}", instance.mode.name(), instance.specs.len(), settings.budget.cap);
    let result = execute(&instance, settings);
    let (report, failure) = match result {
        Ok(mut report) => {
            let failure = report.failure.take();
            (report, failure)
        }
        Err(e) => (Report::default(), Some(e)),
    };
    for (name, bytes) in &report.files {
        write(&out.join(name), bytes)?;
    }
    let meta = RunMeta {
        tool: "pavinglab",
        version: env!("CARGO_PKG_VERSION"),
        mode: instance.mode.name(),
        instance: args.instance.display().to_string(),
        specs: instance.specs.len(),
        budget: settings.budget.cap,
        holdout_prime: settings.holdout,
        jobs: rayon::current_num_threads(),
        files: report.files.iter().map(|(n, _)| n.as_str()).collect(),
        exit_code: failure.as_ref().map_or(0, CliError::exit_code),
        elapsed_ms: start.elapsed().as_millis(),
    };
    let mut bytes = serde_json::to_vec_pretty(&meta).expect("serializable");
    bytes.push(b'\n');
    write(&out.join("run.meta.json"), &bytes)?;
    failure.map_or(Ok(()), Err)
}
