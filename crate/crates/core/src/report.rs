//! Check records and the report document.

use serde::Serialize;
use serde_json::Value;

use crate::sampling::{DEFAULT_PRIME_RANGE, DEFAULT_SAMPLES, DEFAULT_SEED};

pub const SCHEMA_VERSION: u32 = 1;

/// Ordered so that the worst status of a set is its maximum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    Inconclusive,
    Refuted,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Inconclusive => "inconclusive",
            Status::Refuted => "refuted",
        }
    }

    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Verified
        } else {
            Status::Refuted
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exact,
    Modular,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Modular => "modular",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub anchor: String,
    pub mode: Mode,
    pub status: Status,
    pub witnesses: Vec<Value>,
    pub detail: Value,
    pub seed: Option<u64>,
    pub timing_ms: Option<u64>,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, anchor: impl Into<String>, mode: Mode, status: Status) -> Self {
        CheckRecord {
            name: name.into(),
            anchor: anchor.into(),
            mode,
            status,
            witnesses: Vec::new(),
            detail: Value::Null,
            seed: None,
            timing_ms: None,
        }
    }

    pub fn with_detail(mut self, detail: Value) -> Self {
        self.detail = detail;
        self
    }

    pub fn with_witnesses(mut self, witnesses: Vec<Value>) -> Self {
        self.witnesses = witnesses;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

/// Settings shared by every command, echoed into each report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub mode: Mode,
    pub samples: usize,
    pub prime_range: (u64, u64),
    pub seed: u64,
    pub n: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            mode: Mode::Exact,
            samples: DEFAULT_SAMPLES,
            prime_range: DEFAULT_PRIME_RANGE,
            seed: DEFAULT_SEED,
            n: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub config: RunConfig,
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn new(command: impl Into<String>, config: RunConfig, mut records: Vec<CheckRecord>) -> Self {
        records.sort_by(|a, b| a.name.cmp(&b.name));
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            config,
            records,
        }
    }

    pub fn status(&self) -> Status {
        self.records
            .iter()
            .map(|r| r.status)
            .max()
            .unwrap_or(Status::Verified)
    }

    /// 0 all verified, 2 something refuted, 3 otherwise inconclusive.
    pub fn exit_code(&self) -> i32 {
        match self.status() {
            Status::Verified => 0,
            Status::Refuted => 2,
            Status::Inconclusive => 3,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let width = self.records.iter().map(|r| r.name.len()).max().unwrap_or(0);
        for r in &self.records {
            out.push_str(&format!(
                "{:<12} {:<width$}  {:<7}  [{}]",
                r.status.as_str(),
                r.name,
                r.mode.as_str(),
                r.anchor,
            ));
            if let Some(summary) = summarize(&r.detail) {
                out.push_str("  ");
                out.push_str(&summary);
            }
            out.push('\n');
        }
        let counts = [Status::Verified, Status::Inconclusive, Status::Refuted]
            .map(|s| self.records.iter().filter(|r| r.status == s).count());
        out.push_str(&format!(
            "{} checks: {} verified, {} inconclusive, {} refuted (seed {})\n",
            self.records.len(),
            counts[0],
            counts[1],
            counts[2],
            self.config.seed
        ));
        out
    }
}

fn summarize(detail: &Value) -> Option<String> {
    match detail {
        Value::Null => None,
        Value::Object(m) => m.get("summary").and_then(|s| s.as_str()).map(str::to_string),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_sort_and_exit_codes() {
        let recs = vec![
            CheckRecord::new("b", "x", Mode::Exact, Status::Verified),
            CheckRecord::new("a", "x", Mode::Exact, Status::Inconclusive),
        ];
        let r = Report::new("test", RunConfig::default(), recs);
        assert_eq!(r.records[0].name, "a");
        assert_eq!(r.exit_code(), 3);
        let mut recs = r.records.clone();
        recs.push(CheckRecord::new("c", "x", Mode::Modular, Status::Refuted));
        assert_eq!(Report::new("t", RunConfig::default(), recs).exit_code(), 2);
        assert_eq!(Report::new("t", RunConfig::default(), vec![]).exit_code(), 0);
    }

    #[test]
    fn json_is_stable() {
        let r = Report::new(
            "t",
            RunConfig::default(),
            vec![CheckRecord::new("a", "Lemma 5", Mode::Exact, Status::Verified)],
        );
        assert_eq!(r.to_json(), r.clone().to_json());
        assert!(r.to_json().contains("\"anchor\": \"Lemma 5\""));
        assert!(r.to_json().contains("\"timing_ms\": null"));
    }
}
