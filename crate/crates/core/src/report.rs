//! Machine-readable verdicts shared by every checker and by the CLI.

use std::fmt;

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::search::{SolutionCount, Solutions};

pub const SCHEMA_VERSION: &str = "1";

/// The first violated condition, with its lexicographically least witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct Violation {
    pub condition: String,
    pub witness: Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails(Violation),
}

impl Verdict {
    pub fn fails(condition: impl Into<String>, witness: impl Serialize) -> Self {
        Verdict::Fails(Violation {
            condition: condition.into(),
            witness: serde_json::to_value(witness).unwrap_or(Value::Null),
        })
    }

    /// `Holds` when `witness` is `None`.
    pub fn from_witness<W: Serialize>(condition: &str, witness: Option<W>) -> Self {
        match witness {
            None => Verdict::Holds,
            Some(w) => Verdict::fails(condition, w),
        }
    }

    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(v) => Some(v),
        }
    }

    /// Keeps the first failure.
    pub fn and(self, other: impl FnOnce() -> Verdict) -> Verdict {
        match self {
            Verdict::Holds => other(),
            failed => failed,
        }
    }
}

/// One named condition and its verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct Detail {
    pub condition: String,
    pub verdict: Outcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Detail {
    pub fn new(condition: impl Into<String>, verdict: Verdict) -> Self {
        let (verdict, witness) = match verdict {
            Verdict::Holds => (Outcome::Holds, None),
            Verdict::Fails(v) => (Outcome::Fails, Some(v.witness)),
        };
        Detail { condition: condition.into(), verdict, witness }
    }

    /// A detail that carries a remark rather than a check.
    pub fn note(condition: impl Into<String>, verdict: Outcome) -> Self {
        Detail { condition: condition.into(), verdict, witness: None }
    }

    pub fn holds(&self) -> bool {
        self.verdict != Outcome::Fails
    }
}

/// The first failing detail, if any.
pub fn first_failure(details: &[Detail]) -> Option<Violation> {
    details.iter().find(|d| !d.holds()).map(|d| Violation {
        condition: d.condition.clone(),
        witness: d.witness.clone().unwrap_or(Value::Null),
    })
}

/// Overall outcome of a command. Serialised as `"holds"`, `"fails"`,
/// `"count:<k>"` or `"inconclusive"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(into = "String", try_from = "String")]
pub enum Outcome {
    Holds,
    Fails,
    Count(SolutionCount),
    Inconclusive,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Holds => f.write_str("holds"),
            Outcome::Fails => f.write_str("fails"),
            Outcome::Count(c) => write!(f, "count:{c}"),
            Outcome::Inconclusive => f.write_str("inconclusive"),
        }
    }
}

impl From<Outcome> for String {
    fn from(o: Outcome) -> String {
        o.to_string()
    }
}

impl TryFrom<String> for Outcome {
    type Error = String;

    fn try_from(s: String) -> Result<Self, String> {
        match s.as_str() {
            "holds" => Ok(Outcome::Holds),
            "fails" => Ok(Outcome::Fails),
            "inconclusive" => Ok(Outcome::Inconclusive),
            other => {
                let n = other
                    .strip_prefix("count:")
                    .ok_or_else(|| format!("unknown verdict {other:?}"))?;
                let count = match n.strip_prefix(">=") {
                    Some(lb) => SolutionCount::AtLeast(lb.parse().map_err(|e| format!("{e}"))?),
                    None => SolutionCount::Exact(n.parse().map_err(|e| format!("{e}"))?),
                };
                Ok(Outcome::Count(count))
            }
        }
    }
}

/// The JSON document every CLI command prints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct Report {
    pub version: String,
    pub command: String,
    pub verdict: Outcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(default)]
    pub details: Vec<Detail>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solutions: Option<Vec<Vec<usize>>>,
    /// A structure bundle produced by a constructor; `validate` accepts it back.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>, verdict: Outcome) -> Self {
        Report {
            version: SCHEMA_VERSION.to_string(),
            command: command.into(),
            verdict,
            witness: None,
            details: Vec::new(),
            labels: None,
            count: None,
            solutions: None,
            structure: None,
            notes: Vec::new(),
        }
    }

    /// `holds` when every detail holds, else `fails` with the first witness.
    pub fn from_details(command: impl Into<String>, details: Vec<Detail>) -> Self {
        let failure = first_failure(&details);
        let mut r = Report::new(
            command,
            if failure.is_some() { Outcome::Fails } else { Outcome::Holds },
        );
        if let Some(v) = failure {
            r.witness = Some(serde_json::json!({ "condition": v.condition, "element": v.witness }));
        }
        r.details = details;
        r
    }

    pub fn from_solutions(command: impl Into<String>, sols: &Solutions) -> Self {
        let mut r = Report::new(command, Outcome::Count(sols.count));
        r.count = Some(sols.count.to_string());
        r.solutions = Some(sols.maps.iter().map(|m| m.table().to_vec()).collect());
        r
    }

    pub fn with_labels(mut self, labels: impl Serialize) -> Self {
        self.labels = serde_json::to_value(labels).ok();
        self
    }

    pub fn with_structure(mut self, structure: impl Serialize) -> Self {
        self.structure = serde_json::to_value(structure).ok();
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}
