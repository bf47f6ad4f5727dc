//! Command-line front end.

mod figure;
mod verify;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::asymptotics::{empirical_density, CharacteristicSamples, CurveOrder, DensityCurve};
use crate::distribution::AreaDistribution;
use crate::dp::{dp_counts, DP_MAX_N};
use crate::parallel::{resolve_threads, with_threads, THREADS_ENV};
use crate::spectral::{
    calibrate_phase, invert_counts_with, PHASE_CONSTANT, SPECTRAL_INTEGER_MAX_N,
};
use crate::walk::{enumerate_counts, ENUMERATE_MAX_N};
use crate::Error;

pub use figure::{cmd_figure1, plot_script, FigureBundle};
pub use verify::{cmd_verify, Check, VerifyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "lattice-area",
    version,
    about = "Exact area statistics of closed lattice walks"
)]
pub struct Cli {
    #[command(subcommand)]
    command: CommandKind,

    /// Walk length (even).
    #[arg(long = "n", global = true)]
    n: Option<u32>,

    #[arg(long, global = true, value_enum)]
    engine: Option<Engine>,

    /// Output file (a directory for `figure1`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    #[arg(long = "x-max", global = true)]
    x_max: Option<f64>,

    #[arg(long = "a-max", global = true)]
    a_max: Option<f64>,

    #[arg(long, global = true)]
    step: Option<f64>,

    #[arg(long, global = true, env = THREADS_ENV)]
    threads: Option<usize>,

    /// Largest N exercised by `verify`.
    #[arg(long = "max-n", global = true)]
    max_n: Option<u32>,

    /// Overrides the calibrated phase constant (negative control for `verify`).
    #[arg(long = "phase-constant", global = true, hide = true)]
    phase_constant: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum CommandKind {
    /// Exact area counts from the selected engine.
    Counts,
    /// Area counts by direct enumeration (N <= 14).
    Oracle,
    /// Characteristic functions: exact, 1/N-corrected, and limit.
    Charfn,
    /// Densities of a = A/N: empirical, 1/N-corrected, and limit.
    Density,
    /// CSV bundle and gnuplot script for the scaling-function figure.
    Figure1,
    /// Cross-engine and invariant checks.
    Verify,
    /// Re-derives the phase constant.
    Calibrate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Enumerate,
    Dp,
    Spectral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Validated run parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub n: Option<u32>,
    pub engine: Engine,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub x_max: f64,
    pub a_max: f64,
    pub step: Option<f64>,
    pub threads: usize,
    pub max_n: u32,
    pub phase_constant: u32,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("resource budget exceeded: {0}")]
    Budget(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Verification(_) | CliError::Io(_) => EXIT_VERIFY,
            CliError::Budget(_) => EXIT_BUDGET,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::OddLength(_)
            | Error::InvalidFlux { .. }
            | Error::Parse(_)
            | Error::NotClosed(_) => CliError::Usage(e.to_string()),
            Error::Budget { .. } => CliError::Budget(e.to_string()),
            Error::Io(io) => CliError::Io(io),
            other => CliError::Verification(other.to_string()),
        }
    }
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        if let Some(n) = cli.n {
            if n % 2 == 1 {
                return Err(CliError::Usage(format!(
                    "--n must be even (closed walks have even length), got {n}"
                )));
            }
        }
        let engine = match cli.command {
            CommandKind::Oracle => Engine::Enumerate,
            _ => cli.engine.unwrap_or(Engine::Dp),
        };
        if let Some(n) = cli.n {
            let limit = match engine {
                Engine::Enumerate => Some(ENUMERATE_MAX_N),
                Engine::Spectral => Some(SPECTRAL_INTEGER_MAX_N),
                Engine::Dp => None,
            };
            if let Some(max) = limit.filter(|&m| n > m) {
                return Err(CliError::Usage(format!(
                    "engine {engine:?} is limited to N <= {max} (got {n}); use --engine dp"
                )));
            }
        }
        if cli.threads == Some(0) {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        for (name, v) in [
            ("--x-max", cli.x_max),
            ("--a-max", cli.a_max),
            ("--step", cli.step),
        ] {
            if let Some(v) = v {
                if !(v.is_finite() && v > 0.0) {
                    return Err(CliError::Usage(format!("{name} must be a positive number")));
                }
            }
        }
        let phase_constant = cli.phase_constant.unwrap_or(PHASE_CONSTANT);
        if !(1..=2).contains(&phase_constant) {
            return Err(CliError::Usage("--phase-constant must be 1 or 2".into()));
        }
        Ok(RunConfig {
            command: cli.command,
            n: cli.n,
            engine,
            out: cli.out,
            format: cli.format,
            x_max: cli.x_max.unwrap_or(8.0),
            a_max: cli.a_max.unwrap_or(0.5),
            step: cli.step,
            threads: resolve_threads(cli.threads),
            max_n: cli.max_n.unwrap_or(20),
            phase_constant,
        })
    }

    fn require_n(&self) -> Result<u32, CliError> {
        self.n
            .ok_or_else(|| CliError::Usage("--n is required".into()))
    }
}

/// Runs one engine and gates the result on `Σ counts = binomial(N, N/2)²`.
pub fn compute_counts(cfg: &RunConfig) -> Result<AreaDistribution, CliError> {
    let n = cfg.require_n()?;
    let d = match cfg.engine {
        Engine::Enumerate => enumerate_counts(n)?,
        Engine::Dp => dp_counts(n)?,
        Engine::Spectral => invert_counts_with(n, cfg.phase_constant)?.0,
    };
    d.validate()?;
    Ok(d)
}

pub fn cmd_counts(cfg: &RunConfig) -> Result<String, CliError> {
    let d = compute_counts(cfg)?;
    Ok(match cfg.format {
        Format::Csv => d.to_csv(),
        Format::Json => d.to_json() + "\n",
    })
}

pub fn cmd_charfn(cfg: &RunConfig) -> Result<String, CliError> {
    let n = cfg.n.unwrap_or(20);
    if n == 0 || n > DP_MAX_N {
        return Err(CliError::Usage(format!("charfn needs 0 < N <= {DP_MAX_N}")));
    }
    let step = cfg.step.unwrap_or(0.1);
    let d = dp_counts(n)?;
    d.validate()?;
    let sets = [
        CharacteristicSamples::sample_exact(&d, cfg.x_max, step)?,
        CharacteristicSamples::sample_corrected(n, cfg.x_max, step)?,
        CharacteristicSamples::sample_limit(cfg.x_max, step)?,
    ];
    Ok(match cfg.format {
        Format::Csv => concat_csv(sets.iter().map(|s| s.to_csv())),
        Format::Json => json_array(sets.iter().map(|s| s.to_json())),
    })
}

pub fn cmd_density(cfg: &RunConfig) -> Result<String, CliError> {
    let n = cfg.n.unwrap_or(20);
    if n == 0 || n > DP_MAX_N {
        return Err(CliError::Usage(format!(
            "density needs 0 < N <= {DP_MAX_N}"
        )));
    }
    let step = cfg.step.unwrap_or(0.01);
    let d = dp_counts(n)?;
    d.validate()?;
    let mut empirical = empirical_density(&d);
    empirical.points.retain(|p| p.0.abs() <= cfg.a_max + 1e-12);
    let curves = [
        empirical,
        DensityCurve::sample(CurveOrder::Corrected(n), cfg.a_max, step)?,
        DensityCurve::sample(CurveOrder::Limit, cfg.a_max, step)?,
    ];
    Ok(match cfg.format {
        Format::Csv => concat_csv(curves.iter().map(|c| c.to_csv())),
        Format::Json => json_array(curves.iter().map(|c| c.to_json())),
    })
}

pub fn cmd_calibrate(cfg: &RunConfig) -> Result<String, CliError> {
    let cal = calibrate_phase()?;
    let mut out = String::new();
    writeln!(out, "phase constant: {}", cal.constant).unwrap();
    let fluxes: Vec<String> = cal.fluxes.iter().map(|f| f.to_string()).collect();
    writeln!(out, "fluxes: {}", fluxes.join(" ")).unwrap();
    for (c, r) in &cal.residuals {
        writeln!(out, "candidate {c}: max residual {r:.3e}").unwrap();
    }
    if cal.constant != cfg.phase_constant {
        return Err(CliError::Verification(format!(
            "calibrated constant {} differs from configured {}",
            cal.constant, cfg.phase_constant
        )));
    }
    Ok(out)
}

fn concat_csv(parts: impl Iterator<Item = String>) -> String {
    let mut out = String::new();
    for (i, p) in parts.enumerate() {
        if i == 0 {
            out.push_str(&p);
        } else {
            // drop the repeated header
            out.push_str(p.split_once('\n').map_or("", |(_, rest)| rest));
        }
    }
    out
}

fn json_array(parts: impl Iterator<Item = String>) -> String {
    format!("[{}]\n", parts.collect::<Vec<_>>().join(","))
}

/// Dispatches a validated configuration; returns the text written to stdout.
pub fn execute(cfg: &RunConfig) -> Result<String, CliError> {
    with_threads(cfg.threads, || match cfg.command {
        CommandKind::Counts | CommandKind::Oracle => cmd_counts(cfg),
        CommandKind::Charfn => cmd_charfn(cfg),
        CommandKind::Density => cmd_density(cfg),
        CommandKind::Calibrate => cmd_calibrate(cfg),
        CommandKind::Figure1 => cmd_figure1(cfg).map(|b| b.summary()),
        CommandKind::Verify => {
            let report = cmd_verify(cfg);
            let text = report.render();
            if report.all_passed() {
                Ok(text)
            } else {
                Err(CliError::Verification(text))
            }
        }
    })
}

/// Entry point used by the binary; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = RunConfig::from_cli(cli).and_then(|cfg| {
        let text = execute(&cfg)?;
        match (&cfg.out, cfg.command) {
            (Some(path), c) if c != CommandKind::Figure1 => std::fs::write(path, text)?,
            _ => std::io::stdout().write_all(text.as_bytes())?,
        }
        Ok(())
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("lattice-area: {e}");
            e.exit_code()
        }
    }
}
