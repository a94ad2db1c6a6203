use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use superlumen::run::default_workers;
use superlumen::{load_scenario, parse_values, preset, run_batch, run_scenario, sweep, NoisePreset, PresetOptions};

#[derive(Parser)]
#[command(name = "superlumen", version, about = "Run superluminal qubit and mirror scenarios")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario file.
    Run {
        scenario: PathBuf,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Run a built-in scenario set.
    Preset {
        #[arg(value_parser = ["fig1", "fig2"])]
        name: String,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(long)]
        workers: Option<usize>,
        /// Qubit decoherence rates for fig1.
        #[arg(long, default_value = "caption", value_parser = ["caption", "text"])]
        noise: String,
        /// Two-mode reduction for fig2.
        #[arg(long, default_value = "dicke-form", value_parser = ["dicke-form", "literal"])]
        variant: String,
        /// Print the normalized scenarios instead of running them.
        #[arg(long)]
        dump: bool,
    },
    /// Vary one numeric field of a scenario and tabulate the results.
    Sweep {
        scenario: PathBuf,
        /// Dotted field path, for example `trajectory.omega`.
        #[arg(long)]
        axis: String,
        /// `a,b,c` or `start:stop:count`.
        #[arg(long, allow_hyphen_values = true)]
        values: String,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Check a scenario file and print its normalized form.
    Validate { scenario: PathBuf },
}

fn execute(cli: Cli) -> superlumen::Result<()> {
    match cli.command {
        Command::Run { scenario, out, workers } => {
            let s = load_scenario(&scenario)?;
            println!("[run] {} ({}, {} solver)", s.name, s.model.kind().as_str(), s.solver().as_str());
            let summary = run_scenario(&s, &out, workers.unwrap_or_else(default_workers))?;
            for f in &summary.files {
                println!("[run] wrote {}", out.join(f).display());
            }
        }
        Command::Preset { name, out, workers, noise, variant, dump } => {
            let variant = if variant == "literal" { "literal" } else { "dicke-form" };
            let scenarios = preset(&name, PresetOptions { noise: NoisePreset::parse(&noise)?, variant })?;
            if dump {
                for s in &scenarios {
                    println!("# --- {} ---\n{}", s.name, s.to_toml());
                }
                return Ok(());
            }
            let workers = workers.unwrap_or_else(default_workers);
            println!("[preset] {name}: {} runs on {workers} workers", scenarios.len());
            let summary = run_batch(&scenarios, &out, workers)?;
            println!("[preset] wrote {} track files to {}", summary.files.len(), out.display());
        }
        Command::Sweep { scenario, axis, values, out, workers } => {
            let s = load_scenario(&scenario)?;
            let values = parse_values(&values)?;
            let result = sweep(&s, &axis, &values, workers.unwrap_or_else(default_workers))?;
            print!("{}", result.to_csv());
            println!("[sweep] wrote {}", result.write(&out)?.display());
        }
        Command::Validate { scenario } => {
            let s = load_scenario(&scenario)?;
            print!("{}", s.to_toml());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
