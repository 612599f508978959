//! Batch front end for `ainfty-core`: problem files, subcommands, JSON
//! reports and a result cache.

pub mod cache;
pub mod commands;
pub mod problem;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::json;

use cache::{Cache, Output};
use problem::ProblemSpec;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<ainfty_core::Error> for CliError {
    fn from(e: ainfty_core::Error) -> Self {
        use ainfty_core::Error as E;
        match e {
            E::Unsolvable(_) | E::Internal(_) => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "ainfty",
    version,
    about = "Resolutions, A∞-structures and Golod verdicts over prime fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Homological cap
    #[arg(long = "cap-hom", global = true)]
    pub cap_hom: Option<usize>,
    /// Internal-degree cap
    #[arg(long = "cap-int", global = true)]
    pub cap_int: Option<u32>,
    /// Characteristic, overriding the problem file
    #[arg(long, global = true)]
    pub prime: Option<u32>,
    /// Write `<command>.json` and `<command>.txt` here
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Cache directory for finished reports
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Print the JSON report instead of the summary
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Minimal resolution and Betti numbers
    Resolve {
        problem: String,
        /// Resolve over Q instead of R
        #[arg(long)]
        over_q: bool,
    },
    /// Build and verify the A∞-structures
    Ainf { problem: String },
    /// Build and verify the bar resolution
    Bar { problem: String },
    /// Iterated syzygy complex with its structure
    Syzygy {
        problem: String,
        #[arg(long, default_value_t = 1)]
        level: usize,
    },
    /// Spectral sequence pages and edge maps
    Ss {
        problem: String,
        #[arg(long, default_value_t = 3)]
        rmax: usize,
    },
    /// Golod verdicts for the module and the ring
    Golod { problem: String },
    /// Run the checks attached to a shipped fixture
    VerifyFixture { name: String },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Resolve { .. } => "resolve",
            Command::Ainf { .. } => "ainf",
            Command::Bar { .. } => "bar",
            Command::Syzygy { .. } => "syzygy",
            Command::Ss { .. } => "ss",
            Command::Golod { .. } => "golod",
            Command::VerifyFixture { .. } => "verify-fixture",
        }
    }

    fn problem(&self) -> Option<&str> {
        match self {
            Command::Resolve { problem, .. }
            | Command::Ainf { problem }
            | Command::Bar { problem }
            | Command::Syzygy { problem, .. }
            | Command::Ss { problem, .. }
            | Command::Golod { problem } => Some(problem),
            Command::VerifyFixture { .. } => None,
        }
    }
}

fn apply_overrides(cli: &Cli, spec: &mut ProblemSpec) {
    if let Some(h) = cli.cap_hom {
        spec.caps.hom_cap = h;
    }
    if let Some(i) = cli.cap_int {
        spec.caps.int_cap = i;
    }
    if let Some(p) = cli.prime {
        spec.p = p;
    }
}

/// Runs a command, consulting the cache first. Errors carry exit codes 1
/// and 2; a finished report carries exit code 0 or 2.
pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let spec = match cli.command.problem() {
        Some(p) => {
            let mut s = ProblemSpec::load(p)?;
            apply_overrides(cli, &mut s);
            Some(s)
        }
        None => None,
    };
    let request = json!({
        "command": cli.command.name(),
        "problem": spec,
        "args": match &cli.command {
            Command::Resolve { over_q, .. } => json!({ "over_q": over_q }),
            Command::Syzygy { level, .. } => json!({ "level": level }),
            Command::Ss { rmax, .. } => json!({ "rmax": rmax }),
            Command::VerifyFixture { name } => json!({ "name": name, "prime": cli.prime }),
            _ => json!({}),
        },
        "version": env!("CARGO_PKG_VERSION"),
    });
    let key = cache::key(&request);
    let store = cli.cache.as_deref().map(Cache::new);
    if let Some(hit) = store.as_ref().and_then(|c| c.get(&key)) {
        return Ok(hit);
    }
    let report = match (&cli.command, spec.as_ref()) {
        (Command::Resolve { over_q, .. }, Some(s)) => commands::resolve(s, *over_q)?,
        (Command::Ainf { .. }, Some(s)) => commands::ainf(s)?,
        (Command::Bar { .. }, Some(s)) => commands::bar(s)?,
        (Command::Syzygy { level, .. }, Some(s)) => {
            if *level == 0 {
                return Err(CliError::Input(String::from("--level must be at least 1")));
            }
            commands::syzygy(s, *level)?
        }
        (Command::Ss { rmax, .. }, Some(s)) => commands::ss(s, *rmax)?,
        (Command::Golod { .. }, Some(s)) => commands::golod(s)?,
        (Command::VerifyFixture { name }, _) => {
            commands::verify_fixture(name, cli.prime.unwrap_or(ainfty_core::DEFAULT_PRIME))?
        }
        _ => unreachable!("every other command carries a problem"),
    };
    let mut json = report.json;
    json["schema"] = json!(problem::SCHEMA_VERSION);
    json["consistent"] = json!(report.consistent);
    let out = Output {
        json: serde_json::to_string_pretty(&json).expect("serializable"),
        summary: report.summary,
        exit_code: if report.consistent { 0 } else { 2 },
    };
    if let Some(c) = &store {
        c.put(&key, &out)?;
    }
    Ok(out)
}

/// Writes the report files requested by `--out`.
pub fn write_outputs(cli: &Cli, out: &Output) -> Result<(), CliError> {
    let Some(dir) = &cli.out else { return Ok(()) };
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    let name = cli.command.name();
    std::fs::write(dir.join(format!("{name}.json")), &out.json).map_err(io)?;
    std::fs::write(
        dir.join(format!("{name}.txt")),
        format!("{}\n", out.summary),
    )
    .map_err(io)?;
    Ok(())
}
