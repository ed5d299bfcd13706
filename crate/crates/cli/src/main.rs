use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qel_cli::error::{CliError, Result};
use qel_cli::input::{channel_arg, state_arg};
use qel_cli::scan::{self, EnergyRange, Normalization, SweepSpec};
use qel_cli::verify::{self, Suite};
use qel_core::optimize::maximize;
use qel_core::work::WorkReport;
use serde_json::json;

/// Work extraction through bosonic Gaussian channels.
#[derive(Parser)]
#[command(name = "qel", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Energy, entropy, ergotropy, total ergotropy and free energy of a state
    /// and, with --channel, of its image.
    Functionals {
        /// State JSON (inline or file).
        #[arg(long)]
        state: String,
        /// Channel JSON (inline or file).
        #[arg(long)]
        channel: Option<String>,
        /// Inverse temperatures for the free energy.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        beta: Vec<f64>,
    },
    /// Optimal Gaussian input for one energy.
    Maximize {
        #[arg(long)]
        channel: String,
        #[arg(long)]
        energy: f64,
        /// Symplectic eigenvalue of the input (1 = pure).
        #[arg(long, default_value_t = 1.0)]
        nu: f64,
    },
    /// Maximal output ergotropy over an energy grid, as CSV.
    Scan(ScanArgs),
    /// Run a seeded verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    channel: String,
    /// Comma-separated energies.
    #[arg(long, value_delimiter = ',', conflicts_with = "energy_range", required_unless_present = "energy_range")]
    energy: Vec<f64>,
    /// lo:hi:n:log|lin
    #[arg(long)]
    energy_range: Option<EnergyRange>,
    #[arg(long, default_value_t = 1.0)]
    nu: f64,
    #[arg(long, value_enum, default_value = "input")]
    normalization: Normalization,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn print_json(value: &serde_json::Value) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value).map_err(|e| CliError::Usage(e.to_string()))?;
    writeln!(out).map_err(|source| CliError::Io { context: "stdout".into(), source })
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Functionals { state, channel, beta } => {
            let input = state_arg(&state)?;
            let mut doc = json!({ "input": WorkReport::evaluate(&input, &beta)? });
            if let Some(ch) = channel {
                let output = channel_arg(&ch)?.apply(&input)?;
                doc["output"] = serde_json::to_value(WorkReport::evaluate(&output, &beta)?)
                    .map_err(|e| CliError::Usage(e.to_string()))?;
            }
            print_json(&doc)
        }
        Command::Maximize { channel, energy, nu } => {
            let r = maximize(&channel_arg(&channel)?, energy, nu)?;
            print_json(&serde_json::to_value(&r).map_err(|e| CliError::Usage(e.to_string()))?)
        }
        Command::Scan(args) => {
            let energies = match args.energy_range {
                Some(r) => r.points(),
                None => args.energy,
            };
            let spec = SweepSpec::new(channel_arg(&args.channel)?, energies, args.nu, args.normalization)?;
            let rows = scan::run(&spec)?;
            match &args.out {
                Some(path) => {
                    let io_err = |source| CliError::Io { context: format!("writing {}", path.display()), source };
                    let file = File::create(path).map_err(io_err)?;
                    scan::write_csv(&rows, BufWriter::new(file)).map_err(io_err)
                }
                None => scan::write_csv(&rows, io::stdout().lock())
                    .map_err(|source| CliError::Io { context: "stdout".into(), source }),
            }
        }
        Command::Verify { suite, seed, json } => {
            let report = verify::run(suite, seed)?;
            if json {
                print_json(&serde_json::to_value(&report).map_err(|e| CliError::Usage(e.to_string()))?)?;
            } else {
                println!("{report}");
            }
            match report.failures() {
                0 => Ok(()),
                n => Err(CliError::ChecksFailed(n)),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
