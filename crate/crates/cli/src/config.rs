use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Contents of a `--config` file. Flags given on the command line win.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<String>,
    pub seed: Option<u64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub params: Option<Value>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Invalid(format!("cannot read config {}: {e}", path.display()))
        })?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Invalid(format!("config {}: {e}", path.display())))
    }
}

/// Resolved global settings shared by every subcommand.
#[derive(Debug)]
pub struct Context {
    pub seed: Option<u64>,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl Context {
    pub fn require_seed(&self, command: &str) -> Result<u64, CliError> {
        self.seed
            .ok_or_else(|| CliError::Invalid(format!("{command} is stochastic and needs --seed")))
    }
}

/// Overlays the flags that were given onto the config parameters and decodes the result.
pub fn merge_params<T: Serialize + DeserializeOwned>(
    flags: &T,
    params: Option<&Value>,
) -> Result<T, CliError> {
    let mut merged = match params {
        Some(Value::Object(map)) => map.clone(),
        Some(Value::Null) | None => serde_json::Map::new(),
        Some(other) => {
            return Err(CliError::Invalid(format!(
                "config params must be an object, got {other}"
            )))
        }
    };
    let given = serde_json::to_value(flags).map_err(|e| CliError::Invalid(e.to_string()))?;
    if let Value::Object(map) = given {
        merged.extend(map);
    }
    serde_json::from_value(Value::Object(merged))
        .map_err(|e| CliError::Invalid(format!("parameters: {e}")))
}

pub fn is_false(b: &bool) -> bool {
    !*b
}
