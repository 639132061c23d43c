#![allow(clippy::neg_cmp_op_on_partial_ord)]
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mixent::config::{split_assignment, Config};
use mixent::csv::{self, Table};
use mixent::params::{parse_scheme, ParamSet, ALL_NAMES};
use mixent::sweep::{default_tolerance, run_sweep, SweepAxis, SweepSpec};
use mixent::{presets, validate, CliError, Result};
use mixent_core::Transcription;

#[derive(Parser)]
#[command(
    name = "mixent",
    version,
    about = "NPT of locally projected mixed-state entanglers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep one parameter of a scheme and write CSV
    Sweep(SweepArgs),
    /// Compare closed forms with the brute-force oracles on a fixed grid
    Validate {
        /// jc-grid, kerr-grid, bs-grid, tt-grid, direct-grid or all
        grid: String,
        /// Override the per-grid tolerance
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Figure presets
    #[command(subcommand)]
    Preset(PresetCommand),
}

#[derive(Subcommand)]
enum PresetCommand {
    /// List the available presets
    List,
    /// Run a preset and write CSV
    Run {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also run the oracle at every point
        #[arg(long, num_args = 0..=1, require_equals = true, value_name = "TOL")]
        validate: Option<Option<f64>>,
    },
}

#[derive(Args)]
struct SweepArgs {
    /// jc, kerr_micro_thermal, bs, tt or direct_kerr
    #[arg(long)]
    scheme: Option<String>,
    /// Fixed parameter, e.g. --set gamma=2 (repeatable)
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Swept parameter as name:start:stop:count
    #[arg(long)]
    sweep: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run the oracle at every point; fail above TOL
    #[arg(long, num_args = 0..=1, require_equals = true, value_name = "TOL")]
    validate: Option<Option<f64>>,
    /// Flat key=value file; command-line flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
    /// Use the matrices as printed instead of the derived ones
    #[arg(long)]
    printed: bool,
}

fn write_output(table: &Table, out: Option<&Path>) -> Result<()> {
    let text = table.render();
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

fn parse_tolerance(text: &str) -> Result<f64> {
    text.parse::<f64>()
        .ok()
        .filter(|t| *t > 0.0)
        .ok_or_else(|| {
            CliError::usage(format!("tolerance must be a positive number, got {text:?}"))
        })
}

fn build_sweep(args: &SweepArgs) -> Result<(SweepSpec, Option<PathBuf>)> {
    let config = match &args.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let scheme = args
        .scheme
        .as_deref()
        .or(config.get("scheme"))
        .ok_or_else(|| CliError::usage("--scheme is required"))?;
    let mut params = ParamSet::new(parse_scheme(scheme)?);
    for (k, v) in &config.entries {
        if ALL_NAMES.contains(&k.as_str()) {
            params.set_text(k, v)?;
        } else if !["scheme", "sweep", "out", "validate", "transcription"].contains(&k.as_str()) {
            return Err(CliError::usage(format!("unknown config key {k:?}")));
        }
    }
    for s in &args.set {
        let (k, v) = split_assignment(s)?;
        params.set_text(k, v)?;
    }
    let axis = args
        .sweep
        .as_deref()
        .or(config.get("sweep"))
        .ok_or_else(|| CliError::usage("--sweep name:start:stop:count is required"))?;
    let mut spec = SweepSpec::new(params, SweepAxis::parse(axis)?)?;
    spec.validate = match (&args.validate, config.get("validate")) {
        (Some(Some(t)), _) => Some(*t),
        (Some(None), _) => Some(default_tolerance(spec.params.scheme())),
        (None, Some("true")) => Some(default_tolerance(spec.params.scheme())),
        (None, Some("false")) | (None, None) => None,
        (None, Some(t)) => Some(parse_tolerance(t)?),
    };
    if let Some(t) = spec.validate {
        if !(t > 0.0) {
            return Err(CliError::usage(format!(
                "tolerance must be positive, got {t}"
            )));
        }
    }
    spec.form = match (args.printed, config.get("transcription")) {
        (true, _) | (false, Some("printed")) => Transcription::Printed,
        (false, None) | (false, Some("derived")) => Transcription::Derived,
        (false, Some(t)) => {
            return Err(CliError::usage(format!(
                "transcription must be derived or printed, got {t:?}"
            )))
        }
    };
    let out = args
        .out
        .clone()
        .or_else(|| config.get("out").map(PathBuf::from));
    Ok((spec, out))
}

fn report_failures(rows: &[(String, f64, f64)], tol: f64) -> Result<()> {
    if rows.is_empty() {
        return Ok(());
    }
    for (what, x, dev) in rows {
        eprintln!(
            "oracle deviation {dev:e} > {tol:e} at {what}={}",
            csv::float(*x)
        );
    }
    Err(CliError::Validation(format!(
        "{} row(s) above tolerance {tol:e}",
        rows.len()
    )))
}

fn sweep(args: SweepArgs) -> Result<()> {
    let (spec, out) = build_sweep(&args)?;
    let output = run_sweep(&spec)?;
    write_output(&output.table(), out.as_deref())?;
    if let Some(path) = &out {
        println!("{} rows -> {}", output.rows.len(), path.display());
    }
    let failures: Vec<_> = output
        .failures()
        .into_iter()
        .map(|r| {
            (
                spec.axis.name.clone(),
                r.x,
                r.check.map_or(f64::NAN, |c| c.max_deviation),
            )
        })
        .collect();
    report_failures(&failures, spec.validate.unwrap_or(0.0))
}

fn validate_grids(grid: &str, tol: Option<f64>) -> Result<()> {
    let reports = validate::run_validation(grid, tol)?;
    for r in &reports {
        println!("{}", r.line());
    }
    let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).collect();
    if failed.is_empty() {
        println!("all grids within tolerance");
        Ok(())
    } else {
        let worst: Vec<_> = failed
            .iter()
            .map(|r| format!("{}: {}", r.name, r.worst))
            .collect();
        Err(CliError::Validation(worst.join("; ")))
    }
}

fn preset(cmd: PresetCommand) -> Result<()> {
    match cmd {
        PresetCommand::List => {
            for p in presets::all() {
                println!("{}", p.summary());
            }
            Ok(())
        }
        PresetCommand::Run {
            name,
            out,
            validate,
        } => {
            let preset = presets::find(&name)?;
            let mut specs = preset.specs()?;
            let tol = validate.map(|t| t.unwrap_or(default_tolerance(preset.scheme)));
            for s in &mut specs {
                s.validate = tol;
            }
            let outputs = specs.iter().map(run_sweep).collect::<Result<Vec<_>>>()?;
            write_output(&preset.table(&outputs), out.as_deref())?;
            if let Some(path) = &out {
                let rows: usize = outputs.iter().map(|o| o.rows.len()).sum();
                println!("{}: {rows} rows -> {}", preset.name, path.display());
            }
            let failures: Vec<_> = outputs
                .iter()
                .zip(&preset.series.1)
                .flat_map(|(o, s)| {
                    o.failures().into_iter().map(move |r| {
                        (
                            format!("{}={s} {}", preset.series.0, preset.axis.0),
                            r.x,
                            r.check.map_or(f64::NAN, |c| c.max_deviation),
                        )
                    })
                })
                .collect();
            report_failures(&failures, tol.unwrap_or(0.0))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sweep(args) => sweep(args),
        Command::Validate { grid, tol } => validate_grids(&grid, tol),
        Command::Preset(cmd) => preset(cmd),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mixent: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
