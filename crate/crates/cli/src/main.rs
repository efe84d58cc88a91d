//! `perfect-sums`: even perfect numbers as sums of their proper divisors.
//!
//! Every invocation writes exactly one JSON envelope (or, with `--plain`, a
//! short summary) to standard output.
//!
//! Exit codes:
//! - 0: success
//! - 1: domain or range error; the envelope is still printed
//! - 2: usage error

use std::process;

use clap::Parser;
use perfect_sums_cli::commands::Config;
use perfect_sums_cli::{execute, plain, Cli};

fn main() {
    let cli = Cli::parse();
    let envelope = execute(&cli.command, Config::from_env());
    if let Err(e) = &envelope.outcome {
        eprintln!("perfect-sums {}: {}", envelope.command, e.message);
    }
    if cli.plain {
        println!("{}", plain::summary(&envelope));
    } else {
        println!("{}", envelope.to_json());
    }
    process::exit(envelope.exit_code());
}
