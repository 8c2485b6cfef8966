//! Run configurations and the reports they produce.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use sarith_core::slgroups::SamplerCfg;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Picard,
    Units,
    Cusps,
    CongruenceCusps,
    Stabilizer,
    TorsionCheck,
    Counterexample,
    Acceptance,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Tsv,
}

/// Everything a command reads. Echoed into every report so the report can
/// be replayed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub places: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    pub sampler: SamplerCfg,
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub quick: bool,
}

impl RunConfig {
    pub fn new(command: CommandKind) -> RunConfig {
        RunConfig {
            command,
            curve: None,
            places: Vec::new(),
            n: None,
            q: None,
            modulus: None,
            samples: None,
            sampler: SamplerCfg::default(),
            format: Format::Json,
            quick: false,
        }
    }
}

/// A plain table for TSV output.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Table {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub json: Value,
    pub table: Table,
    /// Set when the command ran but a checked property failed.
    pub failed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub seed: u64,
    pub config: RunConfig,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn new(config: &RunConfig, result: Value, elapsed_ms: Option<u64>) -> Report {
        Report {
            tool: "sarith",
            version: env!("CARGO_PKG_VERSION"),
            seed: config.sampler.seed,
            config: config.clone(),
            result,
            elapsed_ms,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// TSV with the config echo in `#` comment lines on top.
    pub fn to_tsv(&self, table: &Table) -> String {
        let mut s = format!("# {} {}\n", self.tool, self.version);
        s += &format!("# config: {}\n", serde_json::to_string(&self.config).expect("config serializes"));
        if let Some(ms) = self.elapsed_ms {
            s += &format!("# elapsed_ms: {ms}\n");
        }
        s += &table.header.join("\t");
        s.push('\n');
        for r in &table.rows {
            s += &r.join("\t");
            s.push('\n');
        }
        s
    }
}
