//! Command-line driver for the `purespin` verification suites.
//!
//! Exit codes: 0 when every check passes, 1 on a suite failure, 2 on a bad
//! configuration, 3 on an internal error.

pub mod config;
pub mod output;
pub mod suites;

use std::ffi::OsString;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::SystemTime;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use config::Layer;
use suites::Suite;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Internal(_) => "internal",
        }
    }
}

impl From<purespin::Error> for CliError {
    fn from(e: purespin::Error) -> Self {
        use purespin::Error as E;
        match e {
            E::ZeroDimension
            | E::DimensionOutOfRange(..)
            | E::SignatureMismatch { .. }
            | E::GridTooCoarse { .. }
            | E::InvalidArgument(_)
            | E::UnsupportedVolume(..) => CliError::Config(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "purespin", version, about = "Pure spinor, Fock spectrum and Wyler formula verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one of the algebraic verification suites.
    Verify {
        #[arg(value_enum)]
        target: Target,
    },
    /// Solve the S³ eigenproblem and emit the hydrogen spectrum.
    Fock,
    /// Evaluate the closed-form fine-structure constant.
    Wyler,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Clifford,
    Purity,
    NullTheorem,
    Maxwell,
    Gravity,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Algebra half-dimension.
    #[arg(long, global = true)]
    pub n: Option<String>,
    /// Highest level for `fock`.
    #[arg(long, global = true)]
    pub nmax: Option<String>,
    #[arg(long, global = true)]
    pub trials: Option<String>,
    #[arg(long, global = true)]
    pub seed: Option<String>,
    /// Primary tolerance of the selected suite.
    #[arg(long, global = true)]
    pub tol: Option<String>,
    /// Nystrom grid size per angular direction.
    #[arg(long, global = true, alias = "nystrom-grid")]
    pub grid: Option<String>,
    /// Output directory for reports.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Flat `key = value` configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Set any configuration key, e.g. `V_Q5=1.0` or `tol.rank=1e-8`.
    #[arg(long = "override", global = true, value_name = "KEY=VAL")]
    pub overrides: Vec<String>,
}

impl CommonArgs {
    fn flag_layer(&self) -> Result<Layer, CliError> {
        let mut layer = config::parse_assignments(&self.overrides)?;
        let pairs = [
            ("n", &self.n),
            ("nmax", &self.nmax),
            ("trials", &self.trials),
            ("seed", &self.seed),
            ("tol", &self.tol),
            ("grid", &self.grid),
        ];
        for (k, v) in pairs {
            if let Some(v) = v {
                layer.insert(k.to_string(), v.clone());
            }
        }
        if let Some(out) = &self.out {
            layer.insert("out".into(), out.display().to_string());
        }
        Ok(layer)
    }
}

fn suite_of(cmd: &Command) -> Suite {
    match cmd {
        Command::Verify { target } => match target {
            Target::Clifford => Suite::Clifford,
            Target::Purity => Suite::Purity,
            Target::NullTheorem => Suite::NullTheorem,
            Target::Maxwell => Suite::Maxwell,
            Target::Gravity => Suite::Gravity,
        },
        Command::Fock => Suite::Fock,
        Command::Wyler => Suite::Wyler,
    }
}

fn report_error(suite: Option<Suite>, err: &CliError) -> i32 {
    let summary = json!({
        "suite": suite.map(Suite::name),
        "error": err.kind(),
        "message": err.to_string(),
    });
    eprintln!("{summary}");
    err.exit_code()
}

/// Parses arguments, runs the selected suite and writes its reports.
/// Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_PASS };
        }
    };
    let suite = suite_of(&cli.command);
    let mut layers = Vec::new();
    if let Some(path) = &cli.common.config {
        match config::parse_file(path) {
            Ok(l) => layers.push(l),
            Err(e) => return report_error(Some(suite), &e),
        }
    }
    match cli.common.flag_layer() {
        Ok(l) => layers.push(l),
        Err(e) => return report_error(Some(suite), &e),
    }
    let cfg = match config::resolve(&layers) {
        Ok(c) => c,
        Err(e) => return report_error(Some(suite), &e),
    };

    let started = SystemTime::now();
    let outcome = match catch_unwind(AssertUnwindSafe(|| suites::run(suite, &cfg))) {
        Ok(Ok(o)) => o,
        Ok(Err(e)) => return report_error(Some(suite), &e),
        Err(_) => return report_error(Some(suite), &CliError::Internal("suite panicked".into())),
    };
    let written = match output::write_reports(&cfg.out, &outcome, started) {
        Ok(w) => w,
        Err(e) => {
            return report_error(Some(suite), &CliError::Internal(format!("cannot write reports: {e}")));
        }
    };
    println!(
        "{}: {} (report {})",
        outcome.suite,
        if outcome.passed { "PASS" } else { "FAIL" },
        written.report.display()
    );
    if let Some(csv) = &written.csv {
        println!("{}: spectrum {}", outcome.suite, csv.display());
    }
    if outcome.passed {
        EXIT_PASS
    } else {
        eprintln!("{}", output::failure_summary(&outcome));
        EXIT_FAIL
    }
}
