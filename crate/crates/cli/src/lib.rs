//! Command-line layer for `mtangle`: argument definitions, the state file
//! format, and the subcommands.

pub mod angle;
pub mod args;
pub mod commands;
pub mod error;
pub mod statefile;
pub mod verify;

use std::io::Write;

pub use args::{Cli, Command};
pub use error::{CliError, CliResult};

/// Dispatches a parsed command line.
pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult<()> {
    match &cli.command {
        Command::Generate(a) => commands::generate(a, out),
        Command::Compute(a) => commands::compute(a, out),
        Command::Verify(a) => verify::verify(a, out),
        Command::Sweep(a) => commands::sweep(a, out),
        Command::PovmCheck(a) => commands::povm_check(a, out),
    }
}
