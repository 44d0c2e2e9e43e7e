//! `quantsoc` — batch driver for the analyses in `quantsoc-core`.
//!
//! Every run emits a JSON report with deterministic field order; stochastic
//! subcommands take an explicit `--seed`. Exit codes: 0 success, 1 usage
//! error, 2 when a theory gate (a checked inequality) fails.

mod commands;
mod report;

use clap::Parser;
use commands::Cli;

fn main() {
    env_logger::init();
    let cli = Cli::parse();
    std::process::exit(commands::run(cli));
}
