use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cli::{run, Command, DiskCache, InputError, Options};

#[derive(Parser)]
#[command(name = "llc-verify", about = "Exact checks for disconnected tori, twisted signs and projective characters")]
struct Args {
    #[command(subcommand)]
    command: Cmd,
    /// Case file (JSON).
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Report destination, stdout when absent.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    suite_size: Option<usize>,
    /// Directory for cached character tables.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Only run checks whose id matches this glob.
    #[arg(long, global = true)]
    check_filter: Option<String>,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Tate groups, cup products, coinflation.
    Cohomology,
    /// Tate-Nakayama duality and the hypercohomology pairing.
    Pairing,
    /// Twisted Kottwitz signs.
    Sign,
    /// Projective characters of the component group.
    Projirr,
    /// The full torus check: extension identity, packet, character identity.
    ToriVerify,
    /// Generated torus cases.
    RandomSuite,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

fn input_error(e: InputError) -> ExitCode {
    eprintln!("input error: {e}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cmd = match args.command {
        Cmd::Cohomology => Command::Cohomology,
        Cmd::Pairing => Command::Pairing,
        Cmd::Sign => Command::Sign,
        Cmd::Projirr => Command::Projirr,
        Cmd::ToriVerify => Command::ToriVerify,
        Cmd::RandomSuite => Command::RandomSuite,
    };
    let filter = match args.check_filter.as_deref().map(glob::Pattern::new).transpose() {
        Ok(f) => f,
        Err(e) => return input_error(InputError::new("--check-filter", e.to_string())),
    };
    let bytes = match &args.input {
        Some(p) => match fs::read(p) {
            Ok(b) => Some(b),
            Err(e) => return input_error(InputError::new(p.display().to_string(), e.to_string())),
        },
        None => None,
    };
    let cache = match &args.cache_dir {
        Some(d) => match DiskCache::open(d) {
            Ok(c) => c,
            Err(e) => return input_error(InputError::new("--cache-dir", e.to_string())),
        },
        None => DiskCache::in_memory(),
    };
    let opts = Options {
        seed: args.seed,
        suite_size: args.suite_size,
        filter,
    };
    let report = match run(cmd, bytes.as_deref(), &opts, &cache) {
        Ok(r) => r,
        Err(e) => return input_error(e),
    };
    let text = match args.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    let written = match &args.output {
        Some(p) => fs::write(p, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("cannot write report: {e}");
        return ExitCode::from(2);
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
