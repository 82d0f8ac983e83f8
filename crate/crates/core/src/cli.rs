//! `cv-entangle` command line: `eval`, `scan` and `verify`.
//!
//! Machine output goes to standard output (JSON) or to `--out` (CSV); diagnostics go
//! to standard error. Exit codes: 0 success, 2 invalid input, 3 numeric failure,
//! 4 I/O failure, 5 verification breach.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::error::Error;
use crate::quadrature::QuadratureConfig;
use crate::scan::{to_csv, write_atomic, Axis, ScanSpec};
use crate::state::{evaluate, EvalOptions, Family, Quantity, StateDescriptor};
use crate::verify::run_verify;
use crate::witness::WitnessParams;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;
pub const EXIT_IO: i32 = 4;
pub const EXIT_VERIFY: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "cv-entangle", version, about = "Continuous-variable entanglement witnesses, realignment and bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one quantity for one state and print a JSON record.
    Eval(EvalArgs),
    /// Evaluate a quantity over a two-parameter grid and write CSV.
    Scan(ScanArgs),
    /// Compare the Fock-space oracle with the analytic engines.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct WitnessArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    mu1: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    mu2: f64,
    /// Fock cutoff for quantities evaluated on the oracle.
    #[arg(long, default_value_t = 25)]
    cutoff: usize,
}

impl WitnessArgs {
    fn options(&self) -> crate::Result<EvalOptions> {
        Ok(EvalOptions {
            mu: WitnessParams::new(self.mu1, self.mu2)?,
            cutoff: self.cutoff,
            quadrature: QuadratureConfig::default(),
        })
    }
}

#[derive(Debug, Args)]
struct EvalArgs {
    /// Inline JSON descriptor or path to a JSON file.
    #[arg(long)]
    state: String,
    #[arg(long, value_enum)]
    quantity: Quantity,
    #[command(flatten)]
    witness: WitnessArgs,
}

#[derive(Debug, Args)]
struct ScanArgs {
    /// Base state; scanned parameters are overridden per cell.
    #[arg(long, conflicts_with = "family", required_unless_present = "family")]
    state: Option<String>,
    /// Start from the family's default parameters.
    #[arg(long)]
    family: Option<String>,
    #[arg(long, value_enum)]
    quantity: Quantity,
    /// Two axes, each `name:min:max:steps`; the first one is the outer (row) index.
    #[arg(long, num_args = 1..=2, required = true, allow_negative_numbers = true)]
    axes: Vec<String>,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, env = "CV_ENTANGLE_WORKERS")]
    workers: Option<usize>,
    #[command(flatten)]
    witness: WitnessArgs,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 40)]
    cutoff: usize,
    #[arg(long = "r-max", default_value_t = 0.6)]
    r_max: f64,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidArgument(_) | Error::Json(_) => EXIT_INVALID,
        Error::Io(_) => EXIT_IO,
        Error::SingularInput(_)
        | Error::NumericDomain(_)
        | Error::SingularLimit(_)
        | Error::SpectralDomain(_)
        | Error::Convergence(_)
        | Error::TruncationInsufficient(_)
        | Error::Inconsistent(_) => EXIT_NUMERIC,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    let out = std::io::stdout();
    let mut out = out.lock();
    let result = match cli.command {
        Command::Eval(a) => cmd_eval(&a, &mut out),
        Command::Scan(a) => cmd_scan(&a, &mut out),
        Command::Verify(a) => cmd_verify(&a, &mut out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn print_json(out: &mut impl Write, v: &serde_json::Value) -> crate::Result<()> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)?;
    Ok(())
}

fn cmd_eval(a: &EvalArgs, out: &mut impl Write) -> crate::Result<i32> {
    let state = StateDescriptor::load(&a.state)?;
    let ev = evaluate(&state, a.quantity, &a.witness.options()?)?;
    let mut record = ev.record;
    record["quantity"] = serde_json::to_value(a.quantity)?;
    print_json(out, &record)?;
    Ok(EXIT_OK)
}

fn cmd_scan(a: &ScanArgs, out: &mut impl Write) -> crate::Result<i32> {
    let base = match (&a.state, &a.family) {
        (Some(s), _) => StateDescriptor::load(s)?,
        (None, Some(f)) => f.parse::<Family>()?.default_state()?,
        (None, None) => return Err(Error::invalid("scan needs --state or --family")),
    };
    let [x, y] = a.axes.as_slice() else {
        return Err(Error::invalid(format!("scan needs exactly two --axes (got {})", a.axes.len())));
    };
    let workers = match a.workers {
        Some(w) => w,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let spec = ScanSpec {
        base,
        axes: [x.parse::<Axis>()?, y.parse::<Axis>()?],
        quantity: a.quantity,
        workers,
        options: a.witness.options()?,
    };
    let cells = spec.run()?;
    let csv = to_csv(&cells);
    match &a.out {
        Some(path) => {
            write_atomic(path, csv.as_bytes())?;
            let invalid = cells.iter().filter(|c| c.verdict == "invalid").count();
            if invalid > 0 {
                eprintln!("warning: {invalid} cells could not be evaluated");
            }
            print_json(
                out,
                &json!({"out": path, "rows": spec.axes[0].steps, "cols": spec.axes[1].steps,
                        "cells": cells.len(), "invalid_cells": invalid}),
            )?;
        }
        None => out.write_all(csv.as_bytes())?,
    }
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, out: &mut impl Write) -> crate::Result<i32> {
    let report = run_verify(a.cutoff, a.r_max)?;
    print_json(out, &serde_json::to_value(&report)?)?;
    if report.pass {
        return Ok(EXIT_OK);
    }
    for c in report.checks.iter().filter(|c| !c.pass) {
        match (&c.error, c.deviation) {
            (Some(e), _) => eprintln!("FAILED {}:{}: {e}", c.case, c.quantity),
            (None, Some(d)) => eprintln!("FAILED {}:{}: deviation {d:e} > {:e}", c.case, c.quantity, report.tolerance),
            (None, None) => eprintln!("FAILED {}:{}", c.case, c.quantity),
        }
    }
    Ok(EXIT_VERIFY)
}
