use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use noisy_teleport::amplitude::{make_state, parse_amplitude, parse_state_list};
use noisy_teleport::analytic::PolynomialTable;
use noisy_teleport::plot::curves_svg;
use noisy_teleport::sweep::{default_states, sweep_csv, Columns, SweepConfig};
use noisy_teleport::teleport::run_stages;
use noisy_teleport::verify::verify_all_with;
use noisy_teleport::{Complex64, InputState, NoiseKind, TeleportConfig};

/// Noisy three-qubit teleportation: fidelity sweeps, stage traces, exact
/// verification of the closed forms, and SVG curves.
#[derive(Parser)]
#[command(name = "noisy-teleport", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fidelity against p as CSV.
    Sweep(SweepArgs),
    /// Every intermediate density matrix for one input and noise level.
    Trace(TraceArgs),
    /// Exact comparison of derived and published polynomials. Exits 1 on any mismatch.
    Verify(VerifyArgs),
    /// Fidelity curves as SVG.
    Curves(SweepArgs),
}

#[derive(Args)]
struct StateArgs {
    /// Amplitude of |0>, e.g. 0.6 or 0.6+0.8i.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// Amplitude of |1>.
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    /// Rescale the input to unit norm instead of rejecting it.
    #[arg(long)]
    normalize: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value = "depolarizing")]
    noise: NoiseKind,
    #[command(flatten)]
    state: StateArgs,
    /// Comma-separated alpha:beta pairs, e.g. 1:0,0.6:0.8i.
    #[arg(long, conflicts_with_all = ["alpha", "beta"], allow_hyphen_values = true)]
    states: Option<String>,
    #[arg(long, default_value_t = 0.0)]
    p_start: f64,
    #[arg(long, default_value_t = 1.0)]
    p_end: f64,
    #[arg(long, default_value_t = SweepConfig::DEFAULT_STEPS)]
    steps: usize,
    /// Subset of numeric,analytic,linear.
    #[arg(long, default_value = "numeric,analytic,linear")]
    columns: Columns,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TraceArgs {
    #[arg(long, default_value = "depolarizing")]
    noise: NoiseKind,
    #[command(flatten)]
    state: StateArgs,
    /// Noise probability.
    #[arg(long, default_value_t = 0.1)]
    p: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Writes PREFIX.txt and PREFIX.tsv; prints the text report when absent.
    #[arg(long, value_name = "PREFIX")]
    out: Option<PathBuf>,
    /// Lines like `u6: 1, -16, 112` replacing entries of the published table.
    #[arg(long, value_name = "PATH")]
    table: Option<PathBuf>,
}

fn single_state(args: &StateArgs) -> Result<Option<InputState<Complex64>>> {
    match (&args.alpha, &args.beta) {
        (None, None) => Ok(None),
        (Some(a), Some(b)) => Ok(Some(make_state(
            parse_amplitude(a)?,
            parse_amplitude(b)?,
            args.normalize,
        )?)),
        _ => bail!("--alpha and --beta must be given together"),
    }
}

fn sweep_config(args: &SweepArgs) -> Result<SweepConfig> {
    let states = match (&args.states, single_state(&args.state)?) {
        (Some(list), _) => parse_state_list(list, args.state.normalize)?,
        (None, Some(state)) => vec![state],
        (None, None) => default_states(),
    };
    Ok(SweepConfig::new(
        args.noise,
        states,
        args.p_start,
        args.p_end,
        args.steps,
        args.columns,
    )?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
        }
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .context("cannot write to stdout"),
    }
}

fn cmd_trace(args: &TraceArgs) -> Result<()> {
    let input = single_state(&args.state)?.context("trace needs --alpha and --beta")?;
    let trace = run_stages(&TeleportConfig::float(input, args.noise, args.p)?)?;
    emit(args.out.as_deref(), &trace.render())
}

fn cmd_verify(args: &VerifyArgs) -> Result<bool> {
    let mut table = PolynomialTable::published();
    if let Some(path) = &args.table {
        let text =
            fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        table = table.with_overrides(&text)?;
    }
    let report = verify_all_with(&table)?;
    match &args.out {
        Some(prefix) => {
            emit(Some(&prefix.with_extension("txt")), &report.to_text())?;
            emit(Some(&prefix.with_extension("tsv")), &report.to_tsv())?;
        }
        None => emit(None, &report.to_text())?,
    }
    Ok(!report.has_mismatch())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Sweep(args) => emit(args.out.as_deref(), &sweep_csv(&sweep_config(&args)?)?)?,
        Command::Curves(args) => emit(args.out.as_deref(), &curves_svg(&sweep_config(&args)?)?)?,
        Command::Trace(args) => cmd_trace(&args)?,
        Command::Verify(args) => {
            if !cmd_verify(&args)? {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
