//! Runs the identity suite and computes single values from the command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use eulerprod_core::precision::{parse_decimal, DEFAULT_BITS};
use eulerprod_core::PrecisionPolicy;

pub mod catalog;
pub mod compute;
pub mod report;

pub use compute::{compute, Computed, Target};
pub use report::{identity_ids, render_csv, render_json, run_suite, IdentityReport, Status};

#[derive(Debug, thiserror::Error)]
pub enum UsageError {
    #[error("no identity matches {0:?}")]
    UnknownIdentity(String),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("cannot write {path}: {source}")]
    Output { path: String, source: std::io::Error },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "eulerprod", version, about = "Checks tan/tanh/cos product identities in ball arithmetic")]
pub struct Cli {
    /// Working precision in bits.
    #[arg(long, global = true, default_value_t = DEFAULT_BITS)]
    pub precision_bits: u32,
    /// Radius a result must reach to count as verified.
    #[arg(long, global = true, default_value = "1e-30")]
    pub tolerance: String,
    /// Continued-fraction depth cap.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub depth: usize,
    /// Identity id, id prefix (up to a `-`) or glob.
    #[arg(long, global = true)]
    pub identity: Option<String>,
    /// Output format; `compute` prints plain text unless this is given.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the identity suite (the default).
    Run,
    /// List identity ids.
    List,
    /// Compute one value.
    Compute {
        #[command(subcommand)]
        target: TargetArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum TargetArg {
    Pi,
    QuarterPiCf,
    #[command(alias = "euler-number")]
    Euler {
        n: usize,
    },
    Bernoulli {
        n: usize,
    },
    Zeta2n {
        n: u32,
    },
    Hurwitz {
        s: u32,
        /// Rational shift, e.g. `1/4`.
        a: String,
    },
    /// A named series; `eulerprod compute series list` shows the names.
    Series {
        id: String,
        #[arg(allow_hyphen_values = true)]
        params: Vec<String>,
    },
}

impl From<TargetArg> for Target {
    fn from(t: TargetArg) -> Target {
        match t {
            TargetArg::Pi => Target::Pi,
            TargetArg::QuarterPiCf => Target::QuarterPiCf,
            TargetArg::Euler { n } => Target::Euler(n),
            TargetArg::Bernoulli { n } => Target::Bernoulli(n),
            TargetArg::Zeta2n { n } => Target::Zeta2n(n),
            TargetArg::Hurwitz { s, a } => Target::Hurwitz { s, a },
            TargetArg::Series { id, params } => Target::Series { id, params },
        }
    }
}

fn policy(cli: &Cli) -> Result<PrecisionPolicy, UsageError> {
    let tol = parse_decimal(&cli.tolerance)
        .ok_or_else(|| UsageError::InvalidArgument(format!("bad tolerance {:?}", cli.tolerance)))?;
    let p = PrecisionPolicy::new(cli.precision_bits, tol)
        .map_err(|e| UsageError::InvalidArgument(e.to_string()))?;
    if cli.precision_bits > eulerprod_core::precision::MAX_BITS {
        return Err(UsageError::InvalidArgument(format!(
            "precision_bits above {}",
            eulerprod_core::precision::MAX_BITS
        )));
    }
    Ok(p)
}

/// Runs the parsed command; the `u8` is the exit code.
pub fn execute(cli: Cli) -> Result<(String, u8), UsageError> {
    let policy = policy(&cli)?;
    match cli.command {
        None | Some(Command::Run) => {
            let reports = run_suite(cli.identity.as_deref(), &policy, cli.depth)?;
            let out = match cli.format.unwrap_or(Format::Json) {
                Format::Json => render_json(&reports, cli.precision_bits, &cli.tolerance, cli.depth),
                Format::Csv => render_csv(&reports),
            };
            let code = if reports.iter().any(|r| r.status == Status::Mismatch) { 1 } else { 0 };
            Ok((out, code))
        }
        Some(Command::List) => {
            let mut ids = identity_ids();
            if let Some(p) = &cli.identity {
                let mut kept = Vec::new();
                for id in ids {
                    if report::matches(p, &id)? {
                        kept.push(id);
                    }
                }
                ids = kept;
            }
            Ok((ids.iter().map(|id| format!("{id}\n")).collect(), 0))
        }
        Some(Command::Compute { target: TargetArg::Series { id, .. } }) if id == "list" => {
            let lines = compute::SERIES
                .iter()
                .map(|(name, params)| format!("{name} {params}").trim_end().to_string() + "\n");
            Ok((lines.collect(), 0))
        }
        Some(Command::Compute { target }) => {
            let c = compute(&target.into(), &policy, cli.depth)?;
            let out = match cli.format {
                None => c.to_text(),
                Some(Format::Json) => serde_json::to_string_pretty(&c).expect("serializes") + "\n",
                Some(Format::Csv) => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    let value = match &c.value {
                        compute::Value::Exact { exact } => exact.clone(),
                        compute::Value::Ball(b) => b.to_string(),
                    };
                    w.write_record(["target", "value", "provenance"]).expect("in-memory write");
                    w.write_record([&c.target, &value, &c.provenance]).expect("in-memory write");
                    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
                }
            };
            Ok((out, 0))
        }
    }
}

/// Parses `args`, runs and writes the output; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let output = cli.output.clone();
    let result = execute(cli).and_then(|(text, code)| {
        match &output {
            Some(path) => std::fs::write(path, &text)
                .map_err(|source| UsageError::Output { path: path.display().to_string(), source })?,
            None => {
                let _ = std::io::stdout().write_all(text.as_bytes());
            }
        }
        Ok(code)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("eulerprod: {e}");
            2
        }
    }
}
