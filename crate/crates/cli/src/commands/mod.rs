mod media;
mod scan;
mod surface;
mod transition;
mod verify;
mod width;

use std::fs;
use std::path::PathBuf;

use serde::Serialize;

use crate::args::{Command, Format};
use crate::error::CliError;
use crate::manifest::{Parameters, RunManifest};

pub use scan::log_spaced;
pub use verify::{VerifyCase, VerifyReport};

/// What a command prints and the status it exits with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn success(stdout: String) -> Self {
        Self { stdout, code: 0 }
    }
}

pub struct Context {
    pub out_dir: PathBuf,
    pub format: Format,
    pub argv: Vec<String>,
}

impl Context {
    fn prepare(&self) -> Result<(), CliError> {
        fs::create_dir_all(&self.out_dir).map_err(|e| CliError::io(&self.out_dir, e))
    }

    fn write_json<T: Serialize>(&self, file: &str, value: &T) -> Result<String, CliError> {
        self.prepare()?;
        let path = self.out_dir.join(file);
        let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::io(&path, e))?;
        text.push('\n');
        fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
        Ok(path.display().to_string())
    }

    fn write_csv(
        &self,
        file: &str,
        header: &[&str],
        rows: &[Vec<String>],
    ) -> Result<String, CliError> {
        self.prepare()?;
        let path = self.out_dir.join(file);
        let mut writer = csv::Writer::from_path(&path).map_err(|e| CliError::io(&path, e))?;
        writer
            .write_record(header)
            .map_err(|e| CliError::io(&path, e))?;
        for row in rows {
            writer
                .write_record(row)
                .map_err(|e| CliError::io(&path, e))?;
        }
        writer.flush().map_err(|e| CliError::io(&path, e))?;
        Ok(path.display().to_string())
    }

    /// Writes `<command>.manifest.json` listing `outputs`.
    fn finish(
        &self,
        command: &str,
        params: Parameters,
        outputs: Vec<String>,
    ) -> Result<RunManifest, CliError> {
        let manifest = RunManifest::new(command, self.argv.clone(), params, outputs);
        self.write_json(&format!("{command}.manifest.json"), &manifest)?;
        Ok(manifest)
    }

    /// The report as JSON or as aligned `label  value` lines.
    fn render<T: Serialize>(
        &self,
        report: &T,
        lines: &[(&str, String)],
    ) -> Result<String, CliError> {
        match self.format {
            Format::Json => serde_json::to_string_pretty(report)
                .map(|s| s + "\n")
                .map_err(|e| CliError::io("<stdout>", e)),
            Format::Text => Ok(aligned(lines)),
        }
    }
}

pub fn aligned(lines: &[(&str, String)]) -> String {
    let width = lines
        .iter()
        .map(|(k, _)| k.chars().count())
        .max()
        .unwrap_or(0);
    lines
        .iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}

pub fn dispatch(command: &Command, ctx: &Context) -> Result<Outcome, CliError> {
    match command {
        Command::Width(args) => width::run(args, ctx),
        Command::Scan(args) => scan::run(args, ctx),
        Command::Surface(args) => surface::run(args, ctx),
        Command::Transition(args) => transition::run(args, ctx),
        Command::Verify(args) => verify::run(args, ctx),
        Command::Media(args) => media::run(args, ctx),
        Command::Replay(_) => unreachable!("replay is resolved before dispatch"),
    }
}
