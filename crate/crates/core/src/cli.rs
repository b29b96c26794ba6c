//! The `hodge` command line.
//!
//! Exit codes: 0 on success, 1 for parse or validation errors, 2 when the
//! closed formula and the nearby-cycle pipeline disagree.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use crate::params::{parse_list, validate, HypergeomParams};
use crate::rational::Rational;
use crate::spectra::HodgeSpectrum;
use crate::theorem::{irregular_hodge_spectrum, raw_spectrum, verify, verify_with_gamma, VerificationReport};
use crate::weyl::katz_chain;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_DISAGREE: i32 = 2;

pub const PARALLELISM_ENV: &str = "HODGE_SWEEP_PARALLELISM";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Print the irregular Hodge spectrum.
    Spectrum,
    /// Compare the closed formula with the nearby-cycle pipeline.
    Verify,
    /// Print the operators H, H_mu, H_hat_mu, H_prime_mu and H_double_prime.
    Operators,
    /// Verify every entry of a JSON file, one report per line.
    Sweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Normalization {
    /// Shift so the smallest jump is 0.
    MinZero,
    /// Report ρ(k) as computed.
    Raw,
}

/// Irregular Hodge numbers of confluent hypergeometric equations.
///
/// Parameters are comma-separated rationals `p/q` or integers in [0,1).
/// An empty sequence is written as an empty string (`--beta ''`) or by
/// omitting the flag.
#[derive(Debug, Clone, Parser)]
#[command(name = "hodge", version)]
pub struct RunConfig {
    /// α_1,…,α_n, strictly increasing.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub alpha: String,
    /// β_1,…,β_m, strictly increasing; may be empty.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub beta: String,
    /// Defaults to `sweep` when --sweep is given, `spectrum` otherwise.
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[arg(long, value_enum, default_value_t = Normalization::MinZero)]
    pub normalize: Normalization,
    /// JSON array of {"alpha": [...], "beta": [...]} objects.
    #[arg(long, value_name = "FILE")]
    pub sweep: Option<PathBuf>,
    /// Force the shift γ used to reach strong non-resonance (verify and sweep).
    #[arg(long, value_name = "P/Q")]
    pub gamma_override: Option<String>,
}

impl RunConfig {
    pub fn mode(&self) -> Mode {
        self.mode.unwrap_or(if self.sweep.is_some() {
            Mode::Sweep
        } else {
            Mode::Spectrum
        })
    }
}

struct Failure(i32, String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(EXIT_INVALID, e.to_string())
    }
}

/// Parses arguments and runs; returns the exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(&config, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            code
        }
    }
}

pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(config, out) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn dispatch(config: &RunConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    let gamma = config
        .gamma_override
        .as_deref()
        .map(str::parse::<Rational>)
        .transpose()?;
    match config.mode() {
        Mode::Sweep => {
            let path = config
                .sweep
                .as_ref()
                .ok_or_else(|| Failure(EXIT_INVALID, "sweep mode requires --sweep <FILE>".into()))?;
            let text =
                std::fs::read_to_string(path).map_err(|e| Failure(EXIT_INVALID, format!("{}: {e}", path.display())))?;
            let workers = sweep_parallelism()?;
            sweep(&text, gamma.as_ref(), workers, out)
        }
        mode => {
            if config.sweep.is_some() {
                return Err(Failure(EXIT_INVALID, "--sweep is only valid with --mode sweep".into()));
            }
            let params = validate(parse_list(&config.alpha)?, parse_list(&config.beta)?)?;
            match mode {
                Mode::Spectrum => {
                    let spectrum = match config.normalize {
                        Normalization::MinZero => irregular_hodge_spectrum(&params),
                        Normalization::Raw => raw_spectrum(&params),
                    };
                    write_spectrum(&spectrum, config.format, out)?;
                    Ok(EXIT_OK)
                }
                Mode::Verify => {
                    let report = run_verify(&params, gamma.as_ref())?;
                    write_report(&report, config.format, out)?;
                    Ok(if report.agrees { EXIT_OK } else { EXIT_DISAGREE })
                }
                Mode::Operators => {
                    write_operators(&params, config.format, out)?;
                    Ok(EXIT_OK)
                }
                Mode::Sweep => unreachable!(),
            }
        }
    }
}

fn run_verify(params: &HypergeomParams, gamma: Option<&Rational>) -> Result<VerificationReport, Failure> {
    Ok(match gamma {
        Some(g) => verify_with_gamma(params, g)?,
        None => verify(params)?,
    })
}

pub fn write_spectrum(spectrum: &HodgeSpectrum, format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(spectrum)?),
        Format::Csv => {
            writeln!(out, "jump,mult")?;
            for (jump, mult) in spectrum.entries() {
                writeln!(out, "{jump},{mult}")?;
            }
            Ok(())
        }
        Format::Table => {
            let width = spectrum
                .entries()
                .map(|(j, _)| j.to_string().len())
                .max()
                .unwrap_or(0)
                .max(4);
            writeln!(out, "{:<width$}  mult", "jump")?;
            for (jump, mult) in spectrum.entries() {
                writeln!(out, "{:<width$}  {mult}", jump.to_string())?;
            }
            Ok(())
        }
    }
}

fn list(seq: &[Rational], sep: &str) -> String {
    seq.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn write_report(report: &VerificationReport, format: Format, out: &mut dyn Write) -> io::Result<()> {
    let raw_shift = report
        .raw_shift
        .as_ref()
        .map_or_else(|| "none".to_owned(), ToString::to_string);
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(report)?),
        Format::Csv => {
            writeln!(out, "alpha,beta,mu,gamma,agrees,raw_shift")?;
            writeln!(
                out,
                "{},{},{},{},{},{}",
                list(report.params.alpha().as_slice(), ";"),
                list(report.params.beta().as_slice(), ";"),
                report.params.mu(),
                report.gamma_used,
                report.agrees,
                raw_shift
            )
        }
        Format::Table => {
            writeln!(out, "alpha         [{}]", list(report.params.alpha().as_slice(), ", "))?;
            writeln!(out, "beta          [{}]", list(report.params.beta().as_slice(), ", "))?;
            writeln!(out, "mu            {}", report.params.mu())?;
            writeln!(out, "gamma         {}", report.gamma_used)?;
            writeln!(out, "theorem       {}", report.theorem_spectrum)?;
            writeln!(out, "oracle        {}", report.oracle_spectrum)?;
            writeln!(out, "intermediate  {}", report.intermediate)?;
            writeln!(out, "raw_shift     {raw_shift}")?;
            writeln!(out, "agrees        {}", report.agrees)
        }
    }
}

fn write_operators(params: &HypergeomParams, format: Format, out: &mut dyn Write) -> Result<(), Failure> {
    let chain = katz_chain(params)?;
    let ops = chain.displayed();
    match format {
        Format::Table => {
            for (name, op) in &ops {
                writeln!(out, "{name:<15} {op}")?;
            }
        }
        Format::Csv => {
            writeln!(out, "name,operator")?;
            for (name, op) in &ops {
                writeln!(out, "{name},{op}")?;
            }
        }
        Format::Json => {
            let map: serde_json::Map<String, serde_json::Value> = ops
                .iter()
                .map(|(name, op)| (name.to_string(), json!(op.to_string())))
                .collect();
            writeln!(out, "{}", serde_json::Value::Object(map))?;
        }
    }
    Ok(())
}

fn sweep_parallelism() -> Result<usize, Failure> {
    match std::env::var(PARALLELISM_ENV) {
        Err(std::env::VarError::NotPresent) => Ok(1),
        Err(e) => Err(Failure(EXIT_INVALID, format!("{PARALLELISM_ENV}: {e}"))),
        Ok(v) => match v.parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(Failure(
                EXIT_INVALID,
                format!("{PARALLELISM_ENV} must be a positive integer, got {v:?}"),
            )),
        },
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct SweepEntry {
    #[serde(default)]
    pub alpha: Vec<String>,
    #[serde(default)]
    pub beta: Vec<String>,
}

enum SweepOutcome {
    Report(Box<VerificationReport>),
    Invalid(String),
}

fn sweep_one(entry: &SweepEntry, gamma: Option<&Rational>) -> SweepOutcome {
    let parse = |v: &Vec<String>| v.iter().map(|s| s.parse::<Rational>()).collect::<Result<Vec<_>, _>>();
    let result = (|| -> Result<VerificationReport, Failure> {
        let params = validate(parse(&entry.alpha)?, parse(&entry.beta)?)?;
        run_verify(&params, gamma)
    })();
    match result {
        Ok(r) => SweepOutcome::Report(Box::new(r)),
        Err(Failure(_, msg)) => SweepOutcome::Invalid(msg),
    }
}

/// Verifies each entry of a JSON array, writing one JSON line per entry in input order.
fn sweep(text: &str, gamma: Option<&Rational>, workers: usize, out: &mut dyn Write) -> Result<i32, Failure> {
    let entries: Vec<SweepEntry> = serde_json::from_str(text)?;
    let outcomes: Vec<SweepOutcome> = if workers <= 1 || entries.len() <= 1 {
        entries.iter().map(|e| sweep_one(e, gamma)).collect()
    } else {
        let chunk = entries.len().div_ceil(workers);
        std::thread::scope(|scope| {
            let handles: Vec<_> = entries
                .chunks(chunk)
                .map(|part| scope.spawn(move || part.iter().map(|e| sweep_one(e, gamma)).collect::<Vec<_>>()))
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("sweep worker panicked"))
                .collect()
        })
    };

    let mut code = EXIT_OK;
    for (entry, outcome) in entries.iter().zip(outcomes) {
        match outcome {
            SweepOutcome::Report(report) => {
                if !report.agrees {
                    code = EXIT_DISAGREE;
                }
                writeln!(out, "{}", serde_json::to_string(&report)?)?;
            }
            SweepOutcome::Invalid(msg) => {
                if code == EXIT_OK {
                    code = EXIT_INVALID;
                }
                writeln!(
                    out,
                    "{}",
                    json!({"alpha": entry.alpha, "beta": entry.beta, "error": msg})
                )?;
            }
        }
    }
    Ok(code)
}
