//! Command-line front end for `qspeckle`: configuration, subcommands and the
//! CSV/JSON output formats.

pub mod commands;
pub mod config;
pub mod output;

pub use commands::{render, run, CliError};
pub use config::{parse_config, RunConfig};

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Errors are reported on standard error.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    use clap::Parser;

    let cli = match config::Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let (sub, flags) = match &cli.command {
        config::Command::Predict(f) => (config::Subcommand::Predict, f),
        config::Command::Simulate(f) => (config::Subcommand::Simulate, f),
        config::Command::Oracle(f) => (config::Subcommand::Oracle, f),
        config::Command::Figure(f) => (config::Subcommand::Figure, f),
    };
    let result = config::resolve(sub, flags)
        .map_err(CliError::from)
        .and_then(|c| run(&c));
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("qspeckle: {e}");
            e.exit_code()
        }
    }
}
