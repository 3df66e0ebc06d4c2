//! Command-line interface.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use gimso_core::liealg::Shape;
use gimso_core::witness::{verify_witness, TargetSpec};
use serde_json::{json, Value};

use crate::config::{parse_config, ConfigError, Format, RunConfig, Suite};
use crate::suites::{run, Context};

/// Exit status when a check failed.
pub const EXIT_FAILED: i32 = 1;
/// Exit status for unusable input: configuration, flags or witness target.
pub const EXIT_INPUT: i32 = 2;
/// Exit status when building the algebra or running a suite errored.
pub const EXIT_ERROR: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("{0}")]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Core(#[from] gimso_core::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl AppError {
    pub fn exit_status(&self) -> i32 {
        match self {
            AppError::Config(_) | AppError::Input(_) => EXIT_INPUT,
            AppError::Core(_) | AppError::Io(_) => EXIT_ERROR,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "gimso",
    version,
    about = "Verify affinized B_r intersection-matrix algebras in coordinatized so_{2r+1}"
)]
struct Cli {
    /// Configuration document (JSON).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Report format; overrides the configuration.
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Report destination (`-` for standard output); overrides the configuration.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<String>,
    /// Sampling seed; overrides the configuration.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Random trials per check; overrides the configuration.
    #[arg(long, global = true)]
    trials: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the affinized matrix and its validation.
    Matrix,
    /// Run the suites selected by the configuration.
    Verify,
    /// Build, check and print a witness expression for one target element.
    Witness {
        /// VERT, HORT, UL, UR or BL.
        #[arg(long)]
        shape: String,
        /// Comma-separated 1-based indices, e.g. `1,3`.
        #[arg(long)]
        indices: String,
        /// Coordinate word such as `x[-1,-1,0;1]*y[1,0,-1;1]^-1`; `1` is the unit.
        #[arg(long, default_value = "1")]
        monomial: String,
    },
    /// Run the self-test suite (Lie axioms and negative controls).
    Selftest,
}

/// Configuration used by `selftest` when no `--config` is given: rank 3
/// with one root of each kind adjoined.
pub const SELFTEST_CONFIG: &str =
    r#"{"rank":3,"adjoined":[{"root":[-1,-1,0],"copies":1},{"root":[1,0,-1],"copies":1}]}"#;

/// Run the command line `args` (including the program name) and return the exit status.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { 0 };
        }
    };
    match execute(cli) {
        Ok(status) => status,
        Err(e) => {
            match &e {
                AppError::Config(c) => eprintln!("error: {} ({})", c.message, c.code),
                other => eprintln!("error: {other}"),
            }
            e.exit_status()
        }
    }
}

fn load(cli: &Cli, fallback: Option<&str>) -> Result<RunConfig, AppError> {
    let text = match (&cli.config, fallback) {
        (Some(p), _) => std::fs::read_to_string(p).map_err(|e| ConfigError {
            code: "config.io",
            field: p.display().to_string(),
            message: e.to_string(),
        })?,
        (None, Some(f)) => f.to_string(),
        (None, None) => return Err(AppError::Input("this command needs --config PATH".into())),
    };
    let mut c = parse_config(&text)?;
    if let Some(s) = cli.seed {
        c.seed = s;
    }
    if let Some(t) = cli.trials {
        if t == 0 {
            return Err(ConfigError {
                code: "config.trials",
                field: "--trials".into(),
                message: "expected an integer >= 1".into(),
            }
            .into());
        }
        c.trials = t;
    }
    if let Some(f) = cli.format {
        c.format = match f {
            FormatArg::Json => Format::Json,
            FormatArg::Text => Format::Text,
        };
    }
    if let Some(o) = &cli.output {
        c.output = (o != "-").then(|| o.clone());
    }
    Ok(c)
}

fn emit(config: &RunConfig, body: &str) -> Result<(), AppError> {
    match &config.output {
        Some(path) => std::fs::write(path, body)?,
        None => std::io::stdout().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn execute(cli: Cli) -> Result<i32, AppError> {
    match &cli.command {
        Command::Matrix | Command::Verify | Command::Selftest => {
            let fallback = matches!(cli.command, Command::Selftest).then_some(SELFTEST_CONFIG);
            let mut config = load(&cli, fallback)?;
            match cli.command {
                Command::Matrix => config.suites = vec![Suite::Matrix],
                Command::Selftest => config.suites = vec![Suite::Selftest],
                _ => {}
            }
            let report = run(&config)?;
            let body = match config.format {
                Format::Json => json_text(&report.to_json()),
                Format::Text => report.to_text(),
            };
            emit(&config, &body)?;
            Ok(report.exit_status())
        }
        Command::Witness { shape, indices, monomial } => {
            let config = load(&cli, None)?;
            let shape = Shape::parse(shape).ok_or_else(|| AppError::Input(format!("unknown shape `{shape}`")))?;
            let indices: Vec<usize> =
                indices.split(',').map(|s| s.trim().parse::<usize>()).collect::<Result<_, _>>().map_err(|_| {
                    AppError::Input(format!("indices must be comma-separated integers, got `{indices}`"))
                })?;
            let ctx = Context::build(&config.spec)?;
            let word = ctx.so().coords().parse_word(monomial).map_err(|e| AppError::Input(e.to_string()))?;
            let target = TargetSpec::new(shape, indices, word);
            // index and arity problems are input errors
            target.element(&ctx.table).map_err(|e| AppError::Input(e.to_string()))?;
            let rep = verify_witness(&target, &ctx.table).map_err(|e| match e {
                gimso_core::Error::UnsupportedTarget(_) => AppError::Input(e.to_string()),
                other => AppError::Core(other),
            })?;
            let body = match config.format {
                Format::Json => json_text(&json!({
                    "target": rep.target,
                    "status": if rep.passed { "pass" } else { "fail" },
                    "depth": rep.depth,
                    "size": rep.size,
                    "expression": rep.expression,
                    "detail": rep.detail,
                })),
                Format::Text => format!(
                    "target {}\n{}\ndepth {}  size {}  {}\n",
                    rep.target,
                    rep.expression,
                    rep.depth,
                    rep.size,
                    if rep.passed { "verified" } else { "MISMATCH" }
                ),
            };
            emit(&config, &body)?;
            Ok(if rep.passed { 0 } else { EXIT_FAILED })
        }
    }
}
