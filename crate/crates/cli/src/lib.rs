//! Command line front end: argument parsing, JSON reports and SVG figures.

pub mod args;
pub mod commands;
pub mod error;
pub mod input;
pub mod json;
pub mod svg;

use args::{Cli, Command};
use commands::Output;
use error::CliError;

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Classify(a) => commands::classify_cmd(a),
        Command::Plot(a) => commands::plot_cmd(a),
        Command::Compare(a) => commands::compare_cmd(a),
        Command::Member(a) => commands::member_cmd(a),
        Command::Sample(a) => commands::sample_cmd(a),
    }
}

/// The `--output` path of whichever subcommand ran.
pub fn output_path(cli: &Cli) -> Option<&std::path::Path> {
    let out = match &cli.command {
        Command::Classify(a) => &a.output,
        Command::Plot(a) => &a.output,
        Command::Compare(a) => &a.output,
        Command::Member(a) => &a.output,
        Command::Sample(a) => &a.output,
    };
    out.output.as_deref()
}
