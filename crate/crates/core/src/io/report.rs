use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::error::Result;

/// Output of one command. Everything except `timings` is a function of the
/// inputs and the seed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub config: Value,
    pub results: Value,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub timings: BTreeMap<String, f64>,
    pub seed: Option<u64>,
}

impl RunReport {
    pub fn new(command: &str, config: impl Serialize, results: impl Serialize, seed: Option<u64>) -> Result<Self> {
        Ok(RunReport {
            command: command.to_owned(),
            config: serde_json::to_value(config)?,
            results: serde_json::to_value(results)?,
            timings: BTreeMap::new(),
            seed,
        })
    }

    pub fn with_timing(mut self, stage: &str, seconds: f64) -> Self {
        self.timings.insert(stage.to_owned(), seconds);
        self
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// The report with timings dropped, for byte comparisons between runs.
    pub fn deterministic_json(&self) -> Result<String> {
        let mut copy = self.clone();
        copy.timings.clear();
        copy.to_json()
    }
}
