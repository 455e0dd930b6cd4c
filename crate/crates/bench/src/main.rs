use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use branchsim_bench::{
    emit_csv, frontier_table, parse_csv, report, run_experiment, ExperimentConfig, Figure,
};

#[derive(Parser)]
#[command(
    name = "branchbench",
    about = "Run message-transfer benchmark sweeps and aggregate their results",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment config and write its results CSV.
    Run {
        /// Path to a TOML experiment config.
        config: PathBuf,
        /// Output directory for <experiment-id>.csv.
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
        /// Override the config's master seed.
        #[arg(long)]
        master_seed: Option<u64>,
        /// Override the config's shots per circuit.
        #[arg(long)]
        shots: Option<u64>,
        /// Override the statevector qubit capacity.
        #[arg(long)]
        sv_limit: Option<usize>,
        /// Append the per-row wall-clock column (breaks byte determinism).
        #[arg(long)]
        timing: bool,
    },
    /// Aggregate a results CSV into plot data for one figure.
    Report {
        /// Results CSV produced by `run`.
        rows: PathBuf,
        /// One of: transfer_vs_n, erasure_pilot, mi_vs_n, seed_spread,
        /// cousins_delta, amplitude.
        figure: String,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the frontier table (largest n with mean p_all >= 0.1).
    Frontier {
        /// Results CSV produced by `run`.
        rows: PathBuf,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<(), String> {
    match cli.command {
        Command::Run {
            config,
            out_dir,
            master_seed,
            shots,
            sv_limit,
            timing,
        } => {
            let mut cfg =
                ExperimentConfig::from_toml_file(&config).map_err(|e| e.to_string())?;
            if let Some(seed) = master_seed {
                cfg.master_seed = seed;
            }
            if let Some(shots) = shots {
                cfg.shots = shots;
            }
            if let Some(limit) = sv_limit {
                cfg.sv_limit = limit;
            }
            let rows = run_experiment(&cfg).map_err(|e| e.to_string())?;
            std::fs::create_dir_all(&out_dir).map_err(|e| e.to_string())?;
            let path = out_dir.join(format!("{}.csv", cfg.id));
            std::fs::write(&path, emit_csv(&rows, timing)).map_err(|e| e.to_string())?;
            let failed = rows.iter().filter(|r| r.status != "ok").count();
            eprintln!(
                "wrote {} rows to {} ({failed} failed)",
                rows.len(),
                path.display()
            );
            Ok(())
        }
        Command::Report { rows, figure, out } => {
            let figure = Figure::parse(&figure).ok_or_else(|| {
                format!(
                    "unknown figure `{figure}`; expected one of {}",
                    Figure::ALL.map(|f| f.name()).join(", ")
                )
            })?;
            let text = std::fs::read_to_string(&rows).map_err(|e| e.to_string())?;
            let rows = parse_csv(&text).map_err(|e| e.to_string())?;
            let data = report(&rows, figure).map_err(|e| e.to_string())?;
            write_out(out, &data)
        }
        Command::Frontier { rows, out } => {
            let text = std::fs::read_to_string(&rows).map_err(|e| e.to_string())?;
            let rows = parse_csv(&text).map_err(|e| e.to_string())?;
            let data = frontier_table(&rows).map_err(|e| e.to_string())?;
            write_out(out, &data)
        }
    }
}

fn write_out(path: Option<PathBuf>, data: &str) -> Result<(), String> {
    match path {
        Some(path) => std::fs::write(&path, data).map_err(|e| e.to_string()),
        None => {
            print!("{data}");
            Ok(())
        }
    }
}
