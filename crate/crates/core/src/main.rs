use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gad_entropy::harness::{
    emit_csv, emit_metadata, emit_summary, run_property_suite, run_sweep, Overrides, Scenario, SweepConfig,
};
use gad_entropy::Error;

const EXIT_USAGE: u8 = 1;
const EXIT_CHECK_FAILED: u8 = 2;
const EXIT_IO: u8 = 3;

/// Entropy production of a qubit in a generalized amplitude damping channel.
#[derive(Parser)]
#[command(name = "gad-entropy", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Three bath temperatures, maximally coherent input.
    Fig2(RunArgs),
    /// One bath temperature, three initial coherences.
    Fig3(RunArgs),
    /// Sweep described by a key = value config file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run the built-in property suite.
    Check,
}

#[derive(Args)]
struct RunArgs {
    /// Shots per measurement basis.
    #[arg(long)]
    shots: Option<u64>,
    /// Bootstrap replicates per reconstruction.
    #[arg(long)]
    bootstrap: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output CSV path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Number of evenly spaced r values on [0, 1].
    #[arg(long)]
    r_points: Option<usize>,
}

impl RunArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            shots: self.shots,
            n_bootstrap: self.bootstrap,
            seed: self.seed,
            output_path: self.out.clone(),
            r_points: self.r_points,
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Io { .. } => EXIT_IO,
        _ => EXIT_USAGE,
    }
}

fn sweep(mut config: SweepConfig, args: &RunArgs) -> Result<(), Error> {
    config.apply_overrides(&args.overrides());
    config.validate()?;
    let rows = run_sweep(&config)?;
    emit_csv(&rows, &config.output_path)?;
    emit_metadata(&config, &config.output_path)?;
    print!("{}", emit_summary(&rows)?);
    println!("wrote {}", config.output_path.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };

    let result = match &cli.command {
        Command::Fig2(args) => sweep(SweepConfig::for_scenario(Scenario::Fig2), args),
        Command::Fig3(args) => sweep(SweepConfig::for_scenario(Scenario::Fig3), args),
        Command::Sweep { config, run } => SweepConfig::from_file(config).and_then(|c| sweep(c, run)),
        Command::Check => {
            let report = run_property_suite();
            print!("{report}");
            return if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_CHECK_FAILED)
            };
        }
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
