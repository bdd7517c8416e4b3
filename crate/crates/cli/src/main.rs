use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gupab::commands::{cmd_dispersion, cmd_phase, cmd_sweep, phase_json, write_dispersion_csv, write_sweep_csv};
use gupab::verify::{run_verify, Level, VerifyOptions};
use gupab::{load_config, CliError, CliResult};

#[derive(Parser)]
#[command(name = "gupab", version, about = "GUP-corrected Aharonov-Bohm phase calculator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Standard phase, GUP correction and total for one configuration (JSON)
    Phase {
        #[arg(short, long)]
        config: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Evaluate the configured sweep (CSV)
    Sweep {
        #[arg(short, long)]
        config: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the algebra self-checks (JSON report)
    Verify {
        #[arg(long, value_enum, default_value = "fast")]
        level: Level,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Deformed dispersion of the positive branch over a momentum range (CSV)
    Dispersion {
        #[arg(short, long)]
        config: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        pmin: f64,
        #[arg(long)]
        pmax: f64,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn sink(output: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Phase { config, output } => {
            let run = load_config(&config)?;
            let result = cmd_phase(&run)?;
            let mut out = sink(output.as_deref())?;
            out.write_all(phase_json(&result).as_bytes())?;
            out.flush()?;
        }
        Command::Sweep { config, output } => {
            let run = load_config(&config)?;
            let table = cmd_sweep(&run)?;
            write_sweep_csv(sink(output.as_deref())?, &table)?;
        }
        Command::Verify { level, inject_fault } => {
            let report = run_verify(level, VerifyOptions { inject_fault })?;
            let mut out = io::stdout().lock();
            serde_json::to_writer_pretty(&mut out, &report).map_err(io::Error::from)?;
            writeln!(out)?;
            if !report.passed {
                let failed: Vec<String> = report
                    .failures()
                    .map(|c| format!("{} {:?}", c.name, c.measured))
                    .collect();
                return Err(CliError::Verify(failed.join("; ")));
            }
        }
        Command::Dispersion {
            config,
            pmin,
            pmax,
            steps,
            output,
        } => {
            let run = load_config(&config)?;
            let rows = cmd_dispersion(&run, pmin, pmax, steps)?;
            write_dispersion_csv(sink(output.as_deref())?, &rows)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gupab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
