mod builtins;
mod commands;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use report::{CliError, CommandReport, EXIT_MALFORMED};

#[derive(Parser)]
#[command(name = "bell-frt", version, about = "Exact Yang-Baxter, FRT and representation checks for the Bell matrix")]
struct Cli {
    /// Print the full report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized steps (decomposition retries).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Degree bound for ideal membership.
    #[arg(long, global = true)]
    bound: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the braid or spectral Yang-Baxter equation.
    Ybe {
        #[arg(long)]
        builtin: Option<String>,
        /// Matrix JSON file.
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long)]
        spectral: bool,
        /// Spectral parameter name for --matrix --spectral.
        #[arg(long, default_value = "x")]
        param: String,
    },
    /// Derive the RTT relations of a 4x4 matrix.
    Frt {
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long)]
        matrix: Option<String>,
        /// Two-copy relations T (x) T' and T' (x) T.
        #[arg(long)]
        mixed: bool,
        /// Write the relation text here and the JSON next to it (`.json` appended).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bounded-degree two-sided ideal membership.
    Ideal {
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        /// Builtin relation set or a text file with one relation per line.
        #[arg(long, default_value = "A-1-six")]
        relations: String,
    },
    /// Build and analyse a representation.
    Rep {
        #[arg(long, conflicts_with_all = ["coproduct", "file"])]
        family: Option<String>,
        /// `name=value` pairs separated by commas.
        #[arg(long, allow_hyphen_values = true, requires = "family")]
        params: Option<String>,
        /// Two factors `family:v1,v2,...`.
        #[arg(long, num_args = 1..=2, conflicts_with = "file")]
        coproduct: Vec<String>,
        /// Representation JSON file.
        #[arg(long)]
        file: Option<String>,
        #[arg(long, value_enum, default_value_t = Analysis::Verify)]
        analyze: Analysis,
        /// Generator whose eigenvectors `entangle` inspects.
        #[arg(long, default_value = "d")]
        generator: String,
    },
    /// Evolve a product ket under the Bell-matrix Hamiltonian.
    Evolve {
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        sign: String,
        #[arg(long, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phi: f64,
        #[arg(long, default_value = "00")]
        ket: String,
    },
    /// Images of the product kets under B+ and B-.
    BellTable,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Analysis {
    Verify,
    Series,
    Decompose,
    Entangle,
}

fn command_name(c: &Cmd) -> &'static str {
    match c {
        Cmd::Ybe { .. } => "ybe",
        Cmd::Frt { .. } => "frt",
        Cmd::Ideal { .. } => "ideal",
        Cmd::Rep { .. } => "rep",
        Cmd::Evolve { .. } => "evolve",
        Cmd::BellTable => "bell-table",
    }
}

fn dispatch(cli: &Cli) -> Result<report::Outcome, CliError> {
    match &cli.cmd {
        Cmd::Ybe { builtin, matrix, spectral, param } => commands::ybe(builtin.as_deref(), matrix.as_deref(), *spectral, param),
        Cmd::Frt { builtin, matrix, mixed, out } => commands::frt(builtin.as_deref(), matrix.as_deref(), *mixed, out.as_deref()),
        Cmd::Ideal { target, relations } => commands::ideal(target, relations, cli.bound),
        Cmd::Rep { family, params, coproduct, file, analyze, generator } => {
            let source = commands::RepSource::from_args(family.as_deref(), params.as_deref(), coproduct, file.as_deref())?;
            commands::rep(&source, *analyze, generator, cli.seed)
        }
        Cmd::Evolve { sign, theta, phi, ket } => commands::evolve(sign, *theta, *phi, ket),
        Cmd::BellTable => commands::bell_table(),
    }
}

fn emit(report: &CommandReport, text: &str, json: bool) {
    let mut out = std::io::stdout().lock();
    if json {
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(report).expect("serializable report"));
    } else if let Some(s) = report.status {
        let _ = writeln!(out, "{}: {}", report.command, serde_json::to_value(s).expect("status").as_str().unwrap_or("?"));
        if !text.is_empty() {
            let _ = writeln!(out, "{text}");
        }
    }
}

fn run(args: Vec<OsString>) -> i32 {
    let wants_json = args.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return 0;
        }
        Err(e) => {
            if wants_json {
                emit(&CliError::Usage(e.kind().to_string()).into_report("?"), "", true);
            }
            let _ = e.print();
            return EXIT_MALFORMED;
        }
    };
    let name = command_name(&cli.cmd);
    match dispatch(&cli) {
        Ok(outcome) => {
            let (report, text) = outcome.into_report(name);
            emit(&report, &text, cli.json);
            report.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            let report = e.into_report(name);
            if cli.json {
                emit(&report, "", true);
            }
            report.exit_code
        }
    }
}

fn main() {
    std::process::exit(run(std::env::args_os().collect()));
}
