//! Run manifests: what was run, with which parameters, producing which files.
//! The JSON layout is described by `schema/manifest.schema.json`.

use std::collections::BTreeMap;
use std::path::Path;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Parameter {
    pub value: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Parameters(pub BTreeMap<String, Parameter>);

impl Parameters {
    pub fn insert(&mut self, name: &str, value: impl Into<Value>, unit: &str) {
        self.0.insert(
            name.to_string(),
            Parameter {
                value: value.into(),
                unit: Some(unit.to_string()),
            },
        );
    }

    pub fn insert_plain(&mut self, name: &str, value: impl Into<Value>) {
        self.0.insert(
            name.to_string(),
            Parameter {
                value: value.into(),
                unit: None,
            },
        );
    }

    pub fn insert_list(&mut self, name: &str, values: Vec<String>) {
        self.insert_plain(name, Value::from(values));
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema_version: u32,
    pub command: String,
    /// Arguments after the program name, without `--out-dir`; `replay`
    /// feeds them back verbatim.
    pub argv: Vec<String>,
    pub parameters: Parameters,
    pub artifact_version: String,
    pub outputs: Vec<String>,
    pub timestamp: DateTime<Utc>,
}

impl RunManifest {
    pub fn new(
        command: &str,
        argv: Vec<String>,
        parameters: Parameters,
        outputs: Vec<String>,
    ) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            argv,
            parameters,
            artifact_version: env!("CARGO_PKG_VERSION").to_string(),
            outputs,
            timestamp: Utc::now(),
        }
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let manifest: Self = serde_json::from_str(&text).map_err(|e| CliError::io(path, e))?;
        if manifest.schema_version != SCHEMA_VERSION {
            return Err(CliError::usage(format!(
                "{}: manifest schema version {} is not supported (expected {SCHEMA_VERSION})",
                path.display(),
                manifest.schema_version
            )));
        }
        Ok(manifest)
    }
}
