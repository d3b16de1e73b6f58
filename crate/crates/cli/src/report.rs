//! Deterministic report assembly: per-check records with pass/fail/skip
//! status, witnesses for failures, and JSON/CSV serialization.
//!
//! Reports are byte-identical across runs with the same config and seed:
//! records are sorted by key, maps are ordered, and wall-clock timings are
//! emitted only when explicitly requested.

use std::collections::BTreeMap;

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// One verification record. A failing record always carries a witness with
/// enough data to replay the failure through library calls.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub subject: String,
    pub check: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

impl CheckRecord {
    pub fn pass(subject: &str, check: &str, detail: impl Into<Option<String>>) -> Self {
        CheckRecord {
            subject: subject.to_string(),
            check: check.to_string(),
            status: Status::Pass,
            detail: detail.into(),
            witness: None,
        }
    }

    pub fn fail(
        subject: &str,
        check: &str,
        detail: String,
        witness: serde_json::Value,
    ) -> Self {
        CheckRecord {
            subject: subject.to_string(),
            check: check.to_string(),
            status: Status::Fail,
            detail: Some(detail),
            witness: Some(witness),
        }
    }

    pub fn skip(subject: &str, check: &str, detail: String) -> Self {
        CheckRecord {
            subject: subject.to_string(),
            check: check.to_string(),
            status: Status::Skip,
            detail: Some(detail),
            witness: None,
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config: serde_json::Value,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u128>>,
}

impl Report {
    pub fn new(command: &str, config: serde_json::Value, mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by(|a, b| (&a.subject, &a.check).cmp(&(&b.subject, &b.check)));
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Skip => summary.skip += 1,
            }
        }
        Report {
            schema: SCHEMA_VERSION,
            tool: "biplab".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            config,
            checks,
            summary,
        timings_ms: None,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0
    }

    /// 0 when every check passed, 1 when any mathematical check failed.
    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("subject,check,status,detail,witness\n");
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
                Status::Skip => "skip",
            };
            let witness = c
                .witness
                .as_ref()
                .map(|w| w.to_string())
                .unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                csv_field(&c.subject),
                csv_field(&c.check),
                status,
                csv_field(c.detail.as_deref().unwrap_or("")),
                csv_field(&witness),
            ));
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_are_sorted_and_counted() {
        let report = Report::new(
            "verify-structure",
            serde_json::json!({}),
            vec![
                CheckRecord::pass("w=3412", "lattice", None),
                CheckRecord::fail(
                    "w=1234",
                    "hasse",
                    "detail".into(),
                    serde_json::json!({"edge": ["a", "b"]}),
                ),
                CheckRecord::skip("w=2143", "betti", "over cap".into()),
            ],
        );
        assert_eq!(report.summary.pass, 1);
        assert_eq!(report.summary.fail, 1);
        assert_eq!(report.summary.skip, 1);
        assert_eq!(report.checks[0].subject, "w=1234");
        assert_eq!(report.exit_code(), 1);
    }

    #[test]
    fn csv_escapes_fields() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("q\"q"), "\"q\"\"q\"");
    }
}
