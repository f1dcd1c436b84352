//! Run reports: everything a command produced, re-checkable from the
//! embedded graph6 strings.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::Context;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use neumaier::iso::IsoClass;
use neumaier::reproduce::{Artifact, RunOutcome};

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(name: impl Into<String>, bytes: &[u8]) -> Self {
        InputDigest {
            name: name.into(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Outputs {
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub measurements: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub artifacts: Vec<Artifact>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub classes: Vec<IsoClass>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub runs: Vec<RunOutcome>,
}

impl Outputs {
    pub fn measure(&mut self, key: &str, v: impl Serialize) {
        self.measurements.insert(
            key.into(),
            serde_json::to_value(v).expect("measurements serialize"),
        );
    }

    /// Every graph6 string in the outputs, in report order.
    pub fn graph6_lines(&self) -> Vec<&str> {
        self.artifacts
            .iter()
            .chain(self.runs.iter().flat_map(|r| &r.artifacts))
            .map(|a| a.graph6.as_str())
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub version: String,
    pub inputs: Vec<InputDigest>,
    pub outputs: Outputs,
    /// The only field that varies between identical runs.
    pub wall_clock_ms: u128,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Writes `report.json` and `graphs.g6` into `dir`.
    pub fn write_to(&self, dir: &Path) -> anyhow::Result<()> {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        std::fs::write(dir.join("report.json"), self.to_json() + "\n")?;
        let mut g6 = self.outputs.graph6_lines().join("\n");
        if !g6.is_empty() {
            g6.push('\n');
        }
        std::fs::write(dir.join("graphs.g6"), g6)?;
        Ok(())
    }
}
