//! Run reports: a deterministic body plus segregated timing.

use std::collections::BTreeMap;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// One input of a run, identified by content hash.
#[derive(Debug, Clone, Serialize)]
pub struct Input {
    pub role: &'static str,
    /// File path, or the literal text for inline inputs.
    pub source: String,
    pub sha256: String,
}

impl Input {
    pub fn file(role: &'static str, path: &str, bytes: &[u8]) -> Self {
        Input {
            role,
            source: path.to_string(),
            sha256: sha256(bytes),
        }
    }

    pub fn inline(role: &'static str, text: &str) -> Self {
        Input {
            role,
            source: text.to_string(),
            sha256: sha256(text.as_bytes()),
        }
    }
}

pub fn sha256(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Everything a command reports. Apart from `timing`, identical inputs and
/// version give identical reports.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub version: &'static str,
    pub inputs: Vec<Input>,
    pub outcome: Value,
    pub statistics: Value,
    /// Wall-clock seconds per phase.
    pub timing: BTreeMap<String, f64>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION"),
            inputs: Vec::new(),
            outcome: Value::Null,
            statistics: Value::Null,
            timing: BTreeMap::new(),
        }
    }

    pub fn time(&mut self, phase: &str, d: Duration) {
        self.timing.insert(phase.to_string(), d.as_secs_f64());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// What a command hands back to `main`: the report, its human-readable
/// rendering, and the exit code.
pub struct Finished {
    pub report: RunReport,
    pub text: String,
    pub exit: u8,
}
