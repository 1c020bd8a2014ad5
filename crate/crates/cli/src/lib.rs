//! Command-line front end for `nphoton-core`: reproduces the published
//! curves and surface as CSV, prints width and dispersion reports, runs the
//! verification suites, and records every run in a JSON manifest.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain, validation or I/O
//! error, 3 verification failure.

pub mod args;
pub mod commands;
pub mod error;
pub mod manifest;
pub mod presets;
pub mod setup;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use commands::Context;
pub use commands::Outcome;
pub use error::CliError;
use manifest::RunManifest;

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Result<Outcome, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(err)
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) =>
        {
            return Ok(Outcome {
                stdout: err.render().to_string(),
                code: 0,
            });
        }
        Err(err) => return Err(CliError::Usage(err.render().to_string())),
    };

    if let Command::Replay(replay) = &cli.command {
        let manifest = RunManifest::load(&replay.manifest)?;
        if manifest.argv.first().map(String::as_str) == Some("replay") {
            return Err(CliError::usage("a manifest cannot replay another replay"));
        }
        let mut replayed: Vec<OsString> = vec!["nphoton".into()];
        replayed.extend(manifest.argv.iter().map(OsString::from));
        replayed.push("--out-dir".into());
        replayed.push(cli.output.out_dir.clone().into());
        return run(replayed);
    }

    let ctx = Context {
        out_dir: cli.output.out_dir.clone(),
        format: cli.output.format,
        argv: recorded_argv(&argv),
    };
    commands::dispatch(&cli.command, &ctx)
}

/// Arguments after the program name with `--out-dir` removed, so a replay
/// can choose its own output directory.
fn recorded_argv(argv: &[OsString]) -> Vec<String> {
    let mut out = Vec::new();
    let mut iter = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned());
    while let Some(arg) = iter.next() {
        if arg == "--out-dir" {
            iter.next();
        } else if !arg.starts_with("--out-dir=") {
            out.push(arg);
        }
    }
    out
}
