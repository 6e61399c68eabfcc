//! Command-line front end for the landscape toolkit: closed-form theory
//! tables, direct glass simulations, regularized training runs, and static
//! SVG plots.
//!
//! Every command writes its data files plus a flat `key = value` manifest
//! recording the command line, resolved configuration, seeds, output paths,
//! and duration. `replay --manifest <path>` re-runs the recorded command;
//! data outputs reproduce byte for byte on the same build.
//!
//! Exit codes: 0 success, 2 usage or configuration error, 3 resource bound,
//! 4 numerical failure (a diverged or rejected run; partial CSVs are
//! retained).

pub mod args;
pub mod cmd_glass;
pub mod cmd_plot;
pub mod cmd_theory;
pub mod cmd_train;
pub mod csvio;
pub mod error;
pub mod manifest;
pub mod mixture;
pub mod svg;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use error::CliError;

/// Parses and runs one command line (without the program name). Replay
/// re-enters here with the recorded argv.
pub fn dispatch(argv: &[String]) -> Result<(), CliError> {
    let with_name = std::iter::once("glass-anneal".to_string()).chain(argv.iter().cloned());
    let cli = match Cli::try_parse_from(with_name) {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                ErrorKind::DisplayHelp
                    | ErrorKind::DisplayVersion
                    | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            ) =>
        {
            print!("{e}");
            return Ok(());
        }
        Err(e) => return Err(CliError::Usage(e.to_string())),
    };
    match cli.command {
        Command::Theory(args) => cmd_theory::run(&args, argv),
        Command::Glass(sub) => cmd_glass::run(&sub, argv),
        Command::Train(args) => cmd_train::run(&args, argv),
        Command::Plot(args) => cmd_plot::run(&args, argv),
        Command::Replay(args) => {
            let entries = manifest::read_manifest(&args.manifest)?;
            let inner = manifest::manifest_argv(&entries)?;
            if inner.first().map(String::as_str) == Some("replay") {
                return Err(CliError::Usage(
                    "manifest records a replay command; nothing to re-run".to_string(),
                ));
            }
            dispatch(&inner)
        }
    }
}

/// Applies the GLASS_ANNEAL_THREADS cap to the global worker pool. Called
/// once at startup, before any parallel work.
pub fn configure_thread_cap() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("GLASS_ANNEAL_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.parse().map_err(|_| {
        CliError::Usage(format!(
            "GLASS_ANNEAL_THREADS must be a positive integer, got {raw:?}"
        ))
    })?;
    if threads == 0 {
        return Err(CliError::Usage(
            "GLASS_ANNEAL_THREADS must be at least 1".to_string(),
        ));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot configure the thread pool: {e}")))
}
