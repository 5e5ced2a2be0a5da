//! Versioned JSON schema for experiment definitions.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "name": "table2",
//!   "title": "Rejection frequencies under TAR models",
//!   "kind": "size",
//!   "replications": 2000,
//!   "sample_sizes": [100, 250, 500],
//!   "level": 0.05,
//!   "base_seed": 20260101,
//!   "arch_lag": 1,
//!   "models": ["AR(2)", "T2(2)", "T3(2)", "NPpl(2)", "NPcv(2)"],
//!   "dgps": ["DGP2-1", "DGP2-2"]
//! }
//! ```
//!
//! `kind` is `size`, `power` or `size_corrected_power`; the power kinds also
//! take `"gamma1": [0.1, 0.3]`. A run manifest is accepted in place of a
//! config, in which case its `config` member is used.

use std::path::Path;

use anyhow::{bail, Context};
use robarch::{ExperimentConfig, MeanModelSpec, NamedDgp};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Size,
    Power,
    SizeCorrectedPower,
}

fn default_level() -> f64 {
    0.05
}

fn default_arch_lag() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub title: Option<String>,
    pub kind: Kind,
    pub replications: usize,
    pub sample_sizes: Vec<usize>,
    #[serde(default = "default_level")]
    pub level: f64,
    pub base_seed: u64,
    #[serde(default = "default_arch_lag")]
    pub arch_lag: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gamma1: Vec<f64>,
    pub models: Vec<MeanModelSpec>,
    pub dgps: Vec<String>,
}

impl RunConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config {}", path.display()))?;
        let mut value: serde_json::Value = serde_json::from_str(&text)
            .with_context(|| format!("{} is not valid JSON", path.display()))?;
        if value.get("tool").and_then(|t| t.as_str()) == Some(crate::experiment::TOOL) {
            if let Some(inner) = value.get_mut("config").map(serde_json::Value::take) {
                value = inner;
            }
        }
        let config: RunConfig = serde_json::from_value(value)
            .with_context(|| format!("{} does not match the config schema", path.display()))?;
        config.check()?;
        Ok(config)
    }

    fn check(&self) -> anyhow::Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            bail!(
                "schema_version {} is not supported (expected {SCHEMA_VERSION})",
                self.schema_version
            );
        }
        if self.name.is_empty()
            || !self
                .name
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
        {
            bail!(
                "name {:?} must be nonempty and use only [A-Za-z0-9_-]",
                self.name
            );
        }
        match self.kind {
            Kind::Size if !self.gamma1.is_empty() => {
                bail!("size runs take no gamma1 values")
            }
            Kind::Power | Kind::SizeCorrectedPower if self.gamma1.is_empty() => {
                bail!("power runs need at least one gamma1 value")
            }
            _ => {}
        }
        if let Some(g) = self.gamma1.iter().find(|g| !(**g > 0.0 && **g < 1.0)) {
            bail!("gamma1 = {g} must lie in (0, 1)");
        }
        Ok(())
    }

    pub fn experiment(&self, workers: Option<usize>) -> anyhow::Result<ExperimentConfig> {
        let dgps = self
            .dgps
            .iter()
            .map(|d| NamedDgp::preset(d))
            .collect::<Result<Vec<_>, _>>()?;
        let mut c = ExperimentConfig::new(
            self.replications,
            self.sample_sizes.clone(),
            self.models.clone(),
            dgps,
        );
        c.level = self.level;
        c.base_seed = self.base_seed;
        c.arch_lag = self.arch_lag;
        c.workers = workers;
        c.validate()?;
        Ok(c)
    }
}
