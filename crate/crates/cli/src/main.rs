use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use mannheim_cli::commands::{self, OffsetArgs};
use mannheim_cli::export::Format;
use mannheim_cli::exit;
use mannheim_core::lab::DEFAULT_SEED;
use mannheim_core::offset::OffsetPairing;

#[derive(Parser)]
#[command(name = "mannheim", version, about = "Ruled surfaces and Mannheim offsets in Minkowski 3-space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Pairing {
    /// M1- base, M1+ offset
    Eq11,
    /// M1- base, M1- offset
    Eq12,
    /// M1+ base, M2+ offset
    Eq13,
}

#[derive(Subcommand)]
enum Command {
    /// Print the surface type, signs, developability and kappa range
    Classify { file: PathBuf },
    /// Export the Frenet frame, kappa and drall on a grid
    Frame {
        file: PathBuf,
        /// Number of grid points (defaults to the file's `samples`)
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        grid: Option<u64>,
        #[arg(long, value_enum, default_value = "csv")]
        out: OutFormat,
        /// Write to this file instead of stdout
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Build a Mannheim offset and print a verification summary
    Offset {
        file: PathBuf,
        /// Offset distance R(s)
        #[arg(long = "R", alias = "r", allow_hyphen_values = true)]
        r: String,
        /// Angle theta(s)
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        #[arg(long, value_enum)]
        pairing: Pairing,
        /// Sampled offset rulings (s, c*, q*); `.json` selects JSON, anything else CSV
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the theorem suite
    Theorems {
        /// Case ids to run (comma separated or repeated)
        #[arg(long, value_delimiter = ',')]
        filter: Vec<String>,
        /// Write a JSON report here
        #[arg(long)]
        report: Option<PathBuf>,
        /// RNG seed; MANNHEIM_SEED overrides it
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Tabulate s against arc length of the base curve k
    Reparam {
        file: PathBuf,
        #[arg(long, default_value_t = 101)]
        points: usize,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = match &cli.command {
        Command::Classify { file } => commands::classify(file, &mut out),
        Command::Frame { file, grid, out: fmt, output } => {
            let fmt = match fmt {
                OutFormat::Csv => Format::Csv,
                OutFormat::Json => Format::Json,
            };
            commands::frame(file, grid.map(|g| g as usize), fmt, output.as_deref(), &mut out)
        }
        Command::Offset { file, r, theta, pairing, out: output } => {
            let pairing = match pairing {
                Pairing::Eq11 => OffsetPairing::M1mToM1p,
                Pairing::Eq12 => OffsetPairing::M1mToM1m,
                Pairing::Eq13 => OffsetPairing::M1pToM2p,
            };
            commands::offset(file, &OffsetArgs { r, theta, pairing, output: output.as_deref() }, &mut out)
        }
        Command::Theorems { filter, report, seed } => match std::env::var("MANNHEIM_SEED") {
            Ok(v) => match v.trim().parse::<u64>() {
                Ok(seed) => commands::theorems(filter, report.as_deref(), seed, &mut out),
                Err(_) => Err(mannheim_cli::CliError::usage(format!("MANNHEIM_SEED must be an unsigned integer, got `{v}`"))),
            },
            Err(_) => commands::theorems(filter, report.as_deref(), *seed, &mut out),
        },
        Command::Reparam { file, points, output } => commands::reparam(file, *points, output.as_deref(), &mut out),
    };
    let _ = out.flush();
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
