//! Structured check records shared by the verification suites and the CLI.
//!
//! Exact values always travel as strings; floats appear only in fields
//! whose names end in `_display` or that are documented as approximate.

use std::fmt::Display;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

pub(crate) fn as_string<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub(crate) fn as_strings<T: Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

/// Outcome of one check.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// One named check with its parameters, verdict, optional failure witness
/// and a JSON payload of details.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub params: serde_json::Value,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
    pub details: serde_json::Value,
}

fn to_value(v: impl Serialize) -> serde_json::Value {
    serde_json::to_value(v).unwrap_or(serde_json::Value::Null)
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, verdict: Verdict, details: impl Serialize) -> Self {
        CheckRecord {
            name: name.into(),
            params: serde_json::Value::Null,
            verdict,
            witness: None,
            details: to_value(details),
        }
    }

    /// A pass/fail record from a boolean.
    pub fn check(name: impl Into<String>, ok: bool, details: impl Serialize) -> Self {
        Self::new(name, Verdict::from_bool(ok), details)
    }

    /// A record for a check that could not run.
    pub fn error(name: impl Into<String>, err: impl Display) -> Self {
        CheckRecord {
            name: name.into(),
            params: serde_json::Value::Null,
            verdict: Verdict::Fail,
            witness: Some(serde_json::Value::String(err.to_string())),
            details: serde_json::Value::Null,
        }
    }

    pub fn with_params(mut self, params: impl Serialize) -> Self {
        self.params = to_value(params);
        self
    }

    pub fn with_witness(mut self, witness: impl Serialize) -> Self {
        self.witness = Some(to_value(witness));
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

/// A batch of checks.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
    pub wall_time_ms: u64,
}

impl Report {
    pub fn new(suite: impl Into<String>, checks: Vec<CheckRecord>, wall_time_ms: u64) -> Self {
        let mut summary = Summary::default();
        for c in &checks {
            match c.verdict {
                Verdict::Pass => summary.pass += 1,
                Verdict::Fail => summary.fail += 1,
                Verdict::Inconclusive => summary.inconclusive += 1,
            }
        }
        Report {
            suite: suite.into(),
            checks,
            summary,
            wall_time_ms,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0 && self.summary.inconclusive == 0
    }

    pub fn any_failed(&self) -> bool {
        self.summary.fail > 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_counts() {
        let r = Report::new(
            "demo",
            vec![
                CheckRecord::new("a", Verdict::Pass, ()),
                CheckRecord::new("b", Verdict::Fail, ()),
                CheckRecord::error("c", "boom"),
                CheckRecord::new("d", Verdict::Inconclusive, ()),
            ],
            3,
        );
        assert_eq!(r.summary, Summary { pass: 1, fail: 2, inconclusive: 1 });
        assert!(r.any_failed());
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"verdict\":\"fail\""));
        assert!(json.contains("\"witness\":\"boom\""));
    }
}
