//! Versioned JSON run reports shared by every command.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Format tag written into every report.
pub const REPORT_FORMAT: &str = "signpat-run-report/1";

/// The schema every serialized [`RunReport`] validates against.
pub const REPORT_SCHEMA: &str = include_str!("../schema/run-report.schema.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ItemStatus {
    Pass,
    Fail,
    /// Not run, e.g. a long-running check without `--long-run`.
    Skipped,
    /// Informational result with no pass/fail meaning.
    Info,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportItem {
    pub name: String,
    pub status: ItemStatus,
    pub summary: String,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub data: Value,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub total_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub format: String,
    pub command: Vec<String>,
    pub items: Vec<ReportItem>,
    pub timing: Timing,
    /// Some search or enumeration stopped at its budget.
    pub truncated: bool,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> Self {
        RunReport {
            format: REPORT_FORMAT.to_owned(),
            command,
            items: Vec::new(),
            timing: Timing { total_ms: 0.0 },
            truncated: false,
        }
    }

    pub fn push(&mut self, item: ReportItem) {
        self.timing.total_ms += item.elapsed_ms;
        self.items.push(item);
    }

    /// Runs `check` and records its outcome with the elapsed time.
    pub fn run<F>(&mut self, name: &str, check: F)
    where
        F: FnOnce() -> (ItemStatus, String, Value),
    {
        let start = Instant::now();
        let (status, summary, data) = check();
        self.push(ReportItem {
            name: name.to_owned(),
            status,
            summary,
            data,
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        });
    }

    /// True when no item failed; skipped items do not count against it.
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.status != ItemStatus::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}
