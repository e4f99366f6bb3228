//! Verification outcomes and the report records emitted by the CLI.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// Result of one exact verification: pass/fail, a witness on failure and
/// whatever measured quantities the check produced (ranks, dimensions, ...).
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub passed: bool,
    pub witness: Option<Value>,
    pub data: Value,
}

impl Outcome {
    pub fn pass(data: Value) -> Self {
        Outcome { passed: true, witness: None, data }
    }

    pub fn fail(witness: Value, data: Value) -> Self {
        Outcome { passed: false, witness: Some(witness), data }
    }

    /// Passes iff `ok`; `witness` is only evaluated on failure.
    pub fn check(ok: bool, data: Value, witness: impl FnOnce() -> Value) -> Self {
        if ok {
            Self::pass(data)
        } else {
            Self::fail(witness(), data)
        }
    }

    /// Conjunction of several outcomes; the first failure supplies the witness.
    pub fn all<S: Into<String>>(parts: Vec<(S, Outcome)>) -> Self {
        let mut data = serde_json::Map::new();
        let mut witness = None;
        for (name, o) in parts {
            let name: String = name.into();
            if !o.passed && witness.is_none() {
                witness = Some(json!({ "check": name, "witness": o.witness }));
            }
            data.insert(name, json!({ "passed": o.passed, "data": o.data }));
        }
        Outcome { passed: witness.is_none(), witness, data: Value::Object(data) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

/// One line of the report stream.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub claim: String,
    pub parameters: BTreeMap<String, Value>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Value::is_null", default)]
    pub data: Value,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn from_outcome(claim: &str, parameters: BTreeMap<String, Value>, outcome: Outcome, elapsed_ms: u64) -> Self {
        let status = if outcome.passed { Status::Pass } else { Status::Fail };
        let witness = match (status, outcome.witness) {
            (Status::Fail, None) => Some(Value::String("unspecified".into())),
            (_, w) => w,
        };
        Report { claim: claim.to_string(), parameters, status, witness, data: outcome.data, elapsed_ms }
    }

    pub fn skipped(claim: &str, parameters: BTreeMap<String, Value>, reason: &str) -> Self {
        Report {
            claim: claim.to_string(),
            parameters,
            status: Status::Skipped,
            witness: None,
            data: json!({ "reason": reason }),
            elapsed_ms: 0,
        }
    }

    /// An error raised while running a check counts as a failure whose witness
    /// is the error message.
    pub fn from_error(claim: &str, parameters: BTreeMap<String, Value>, err: &crate::Error) -> Self {
        Report {
            claim: claim.to_string(),
            parameters,
            status: Status::Fail,
            witness: Some(json!({ "error": err.to_string() })),
            data: Value::Null,
            elapsed_ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// Runs `f`, returning the report; `timing` controls whether wall-clock time
/// is recorded (otherwise `elapsed_ms` is 0 so output is reproducible).
pub fn timed(
    claim: &str,
    parameters: BTreeMap<String, Value>,
    timing: bool,
    f: impl FnOnce() -> crate::Result<Outcome>,
) -> Report {
    let start = Instant::now();
    let result = f();
    let elapsed = if timing { start.elapsed().as_millis() as u64 } else { 0 };
    match result {
        Ok(o) => Report::from_outcome(claim, parameters, o, elapsed),
        Err(e) => {
            let mut r = Report::from_error(claim, parameters, &e);
            r.elapsed_ms = elapsed;
            r
        }
    }
}

/// Builds a parameter map from `(name, value)` pairs.
pub fn params<const N: usize>(pairs: [(&str, Value); N]) -> BTreeMap<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Plain-text table: one row per report.
pub fn render_text(reports: &[Report]) -> String {
    let width = reports.iter().map(|r| r.claim.len()).max().unwrap_or(5).max(5);
    let mut out = format!("{:<width$}  {:<7}  {:>8}  parameters\n", "claim", "status", "ms");
    for r in reports {
        let params: Vec<String> = r.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str(&format!(
            "{:<width$}  {:<7}  {:>8}  {}\n",
            r.claim,
            r.status.to_string(),
            r.elapsed_ms,
            params.join(" ")
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failure_always_has_witness() {
        let r =
            Report::from_outcome("x", BTreeMap::new(), Outcome { passed: false, witness: None, data: Value::Null }, 0);
        assert_eq!(r.status, Status::Fail);
        assert!(r.witness.is_some());
    }

    #[test]
    fn conjunction_reports_first_failure() {
        let o = Outcome::all(vec![
            ("a", Outcome::pass(json!(1))),
            ("b", Outcome::fail(json!("bad"), json!(2))),
            ("c", Outcome::fail(json!("worse"), json!(3))),
        ]);
        assert!(!o.passed);
        assert_eq!(o.witness.unwrap()["check"], "b");
    }

    #[test]
    fn json_shape() {
        let r = Report::from_outcome("claim", params([("p", json!(3))]), Outcome::pass(Value::Null), 0);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"claim":"claim","parameters":{"p":3},"status":"pass","elapsed_ms":0}"#);
    }
}
