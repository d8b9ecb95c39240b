//! Machine-readable check reports shared by the verification suites and the
//! command-line front end.

use crate::arith::Rational;
use serde_json::{json, Map, Value};
use std::fmt;
use std::str::FromStr;
use std::time::Duration;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The check's divisibility hypotheses were not met.
    Skipped(String),
}

/// Result of one executed check. A `Fail` always carries a witness (the
/// exact offending rational); constructors enforce that.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub check_id: String,
    pub params: Vec<(String, String)>,
    pub status: CheckStatus,
    pub witness: Option<Rational>,
    pub elapsed: Duration,
}

impl CheckReport {
    pub fn pass(
        check_id: impl Into<String>,
        params: Vec<(String, String)>,
        witness: Option<Rational>,
    ) -> Self {
        CheckReport {
            check_id: check_id.into(),
            params,
            status: CheckStatus::Pass,
            witness,
            elapsed: Duration::ZERO,
        }
    }

    pub fn fail(
        check_id: impl Into<String>,
        params: Vec<(String, String)>,
        witness: Rational,
    ) -> Self {
        CheckReport {
            check_id: check_id.into(),
            params,
            status: CheckStatus::Fail,
            witness: Some(witness),
            elapsed: Duration::ZERO,
        }
    }

    pub fn from_bool(
        check_id: impl Into<String>,
        params: Vec<(String, String)>,
        ok: bool,
        witness: Rational,
    ) -> Self {
        if ok {
            Self::pass(check_id, params, Some(witness))
        } else {
            Self::fail(check_id, params, witness)
        }
    }

    pub fn skipped(
        check_id: impl Into<String>,
        params: Vec<(String, String)>,
        reason: impl Into<String>,
    ) -> Self {
        CheckReport {
            check_id: check_id.into(),
            params,
            status: CheckStatus::Skipped(reason.into()),
            witness: None,
            elapsed: Duration::ZERO,
        }
    }

    pub fn with_elapsed(mut self, elapsed: Duration) -> Self {
        self.elapsed = elapsed;
        self
    }

    pub fn is_fail(&self) -> bool {
        matches!(self.status, CheckStatus::Fail)
    }

    /// `PASS prop61 p=5 u=2 witness=19/48`
    pub fn text_line(&self) -> String {
        let mut line = String::new();
        let status = match &self.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped(_) => "SKIPPED",
        };
        line.push_str(status);
        line.push(' ');
        line.push_str(&self.check_id);
        for (k, v) in &self.params {
            line.push(' ');
            if v.contains(' ') {
                line.push_str(&format!("{k}={v:?}"));
            } else {
                line.push_str(&format!("{k}={v}"));
            }
        }
        if let Some(w) = &self.witness {
            line.push_str(&format!(" witness={w}"));
        }
        if let CheckStatus::Skipped(reason) = &self.status {
            line.push_str(&format!(" reason={reason:?}"));
        }
        line
    }

    /// One JSON object with fields in fixed order: check_id, params, status,
    /// witness_num, witness_den, elapsed_ms. Witness components are decimal
    /// integer strings (null when there is no witness).
    pub fn jsonl_line(&self) -> String {
        let mut params = Map::new();
        for (k, v) in &self.params {
            params.insert(k.clone(), Value::String(v.clone()));
        }
        if let CheckStatus::Skipped(reason) = &self.status {
            params.insert("reason".into(), Value::String(reason.clone()));
        }
        let (num, den) = match &self.witness {
            Some(w) => (
                Value::String(w.numer().to_string()),
                Value::String(w.denom().to_string()),
            ),
            None => (Value::Null, Value::Null),
        };
        let status = match &self.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped(_) => "SKIPPED",
        };
        let obj = json!({
            "check_id": self.check_id,
            "params": Value::Object(params),
            "status": status,
            "witness_num": num,
            "witness_den": den,
            "elapsed_ms": self.elapsed.as_millis() as u64,
        });
        obj.to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Jsonl,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "jsonl" => Ok(ReportFormat::Jsonl),
            other => Err(format!("unknown format {other:?} (expected text or jsonl)")),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReportFormat::Text => write!(f, "text"),
            ReportFormat::Jsonl => write!(f, "jsonl"),
        }
    }
}

/// Orders reports lexicographically (check id, then rendered parameters) so
/// output is diffable regardless of execution order.
pub fn sort_reports(reports: &mut [CheckReport]) {
    reports.sort_by(|a, b| (&a.check_id, &a.params).cmp(&(&b.check_id, &b.params)));
}

pub fn render_reports(reports: &[CheckReport], format: ReportFormat) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&match format {
            ReportFormat::Text => r.text_line(),
            ReportFormat::Jsonl => r.jsonl_line(),
        });
        out.push('\n');
    }
    out
}

/// Process exit code for a report set: 0 iff no FAIL lines.
pub fn exit_code(reports: &[CheckReport]) -> i32 {
    if reports.iter().any(CheckReport::is_fail) {
        1
    } else {
        0
    }
}
