//! Argument handling and structured output for the `perfect-sums` binary.

pub mod commands;
pub mod envelope;
pub mod plain;
pub mod verify;

use std::collections::BTreeMap;

use clap::{Parser, Subcommand};

use commands::Config;
use envelope::Envelope;

#[derive(Debug, Parser)]
#[command(name = "perfect-sums", version, about = "Sums of distinct proper divisors of perfect numbers")]
pub struct Cli {
    /// Print a short human-readable summary instead of JSON
    #[arg(long, global = true)]
    pub plain: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List Mersenne exponents p <= max-p with their perfect numbers
    Perfect {
        #[arg(long = "max-p")]
        max_p: u32,
    },
    /// Canonical decomposition of m into distinct proper divisors
    Decompose {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        m: String,
    },
    /// Count (and optionally list) every representation of m
    Count {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        m: String,
        #[arg(long)]
        enumerate: bool,
    },
    /// Check whether every m <= n is a sum of distinct proper divisors of n
    Check {
        #[arg(long)]
        n: String,
    },
    /// Run the decomposition and counting checks for one exponent
    Verify {
        #[arg(long)]
        p: u32,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Perfect { .. } => "perfect",
            Command::Decompose { .. } => "decompose",
            Command::Count { .. } => "count",
            Command::Check { .. } => "check",
            Command::Verify { .. } => "verify",
        }
    }

    fn inputs(&self) -> BTreeMap<String, String> {
        let pairs: Vec<(&str, String)> = match self {
            Command::Perfect { max_p } => vec![("max_p", max_p.to_string())],
            Command::Decompose { p, m } => vec![("p", p.to_string()), ("m", m.clone())],
            Command::Count { p, m, enumerate } => vec![
                ("p", p.to_string()),
                ("m", m.clone()),
                ("enumerate", enumerate.to_string()),
            ],
            Command::Check { n } => vec![("n", n.clone())],
            Command::Verify { p } => vec![("p", p.to_string())],
        };
        pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
    }
}

/// Executes one parsed command against an already-resolved configuration.
pub fn execute(command: &Command, config: Result<Config, envelope::CommandError>) -> Envelope {
    let outcome = config.and_then(|config| match command {
        Command::Perfect { max_p } => commands::perfect(*max_p),
        Command::Decompose { p, m } => {
            commands::decompose_cmd(*p, &commands::parse_natural("m", m)?)
        }
        Command::Count { p, m, enumerate } => {
            commands::count(*p, &commands::parse_natural("m", m)?, *enumerate, &config)
        }
        Command::Check { n } => commands::check(&commands::parse_natural("n", n)?, &config),
        Command::Verify { p } => verify::verify(*p, &config),
    });
    Envelope {
        command: command.name().to_string(),
        inputs: command.inputs(),
        outcome,
    }
}
