#![allow(clippy::neg_cmp_op_on_partial_ord)]
//! `renyi`: sweeps, endpoint tables, mixture dumps and the bound audit.
//!
//! Exit codes: 0 success, 1 a certified claim failed, 2 usage or config error.

mod commands;
mod config;
mod error;
mod output;

use clap::{Parser, Subcommand, ValueEnum};
use commands::{MixtureKind, Report};
use config::ConfigArgs;
use error::CliError;
use renyi_core::audit::AuditConfig;
use std::process::ExitCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "renyi",
    version,
    about = "Minimax Rényi redundancy sweeps and bound audits"
)]
struct Cli {
    /// What goes to stdout; files named in the config are always written.
    #[arg(long, value_enum, default_value = "csv", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Certified lower/upper brackets per (n, λ).
    Redundancy(ConfigArgs),
    /// Z-channel closed forms against the solver, per λ.
    Zchannel(ConfigArgs),
    /// Run the full inequality audit battery.
    Audit {
        #[command(flatten)]
        config: ConfigArgs,
        /// Perturb a bound constant, e.g. `c1=0.1`, to check that the audit catches it.
        #[arg(long, value_parser = commands::parse_fault)]
        inject_fault: Option<AuditConfig>,
    },
    /// Shannon capacity, Rényi brackets and Shtarkov regret per n.
    Endpoints(ConfigArgs),
    /// Per-type log probabilities of a mixture.
    MixtureDump {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long, value_enum, default_value = "jeffreys")]
        kind: MixtureKind,
    },
}

fn emit_table(report: &Report, cfg: &config::SweepConfig, format: Format) -> Result<(), CliError> {
    let csv = report.table.to_csv();
    let json = report.table.to_json();
    if let Some(p) = &cfg.csv_out {
        output::write_file(p, &csv)?;
    }
    if let Some(p) = &cfg.json_out {
        output::write_file(p, &json)?;
    }
    output::write_stdout(match format {
        Format::Csv => &csv,
        Format::Json => &json,
    })?;
    Ok(())
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let table_cmd = |args: &ConfigArgs, f: fn(&config::SweepConfig) -> Result<Report, CliError>| {
        let cfg = args.resolve()?;
        let report = f(&cfg)?;
        emit_table(&report, &cfg, cli.format)?;
        Ok(report.ok)
    };
    match &cli.command {
        Command::Redundancy(a) => table_cmd(a, commands::redundancy),
        Command::Zchannel(a) => table_cmd(a, commands::zchannel),
        Command::Endpoints(a) => table_cmd(a, commands::endpoints),
        Command::MixtureDump { config, kind } => {
            let cfg = config.resolve()?;
            let report = commands::mixture_dump(&cfg, *kind)?;
            emit_table(&report, &cfg, cli.format)?;
            Ok(true)
        }
        Command::Audit {
            config,
            inject_fault,
        } => {
            let cfg = config.resolve()?;
            let summary = commands::audit(&inject_fault.unwrap_or_default())?;
            let json = commands::audit_json(&summary);
            if let Some(p) = &cfg.json_out {
                output::write_file(p, &json)?;
            }
            output::write_stdout(&match cli.format {
                Format::Csv => commands::audit_table(&summary),
                Format::Json => json,
            })?;
            for r in summary.reports.iter().filter(|r| !r.satisfied()) {
                eprintln!(
                    "violation in {}: {} at witness {:?}",
                    r.name, r.max_violation, r.witness
                );
            }
            Ok(summary.all_satisfied)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("renyi: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
