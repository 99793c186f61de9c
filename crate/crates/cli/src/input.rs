//! Reading input files and mapping library errors to exit codes.

use std::fs;
use std::io::Read;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Deserialize;

use kite_core::internal::ReflexiveGraph;
use kite_core::report::{Detail, Outcome, Report, Verdict};
use kite_core::{Error, FinMap};

pub enum Failure {
    /// Exit 2: unreadable or malformed input.
    Usage(String),
    /// Exit 1: a definite negative answer.
    Negative(Box<Report>),
    /// Exit 3: a budget ran out.
    Inconclusive(Box<Report>),
}

/// Violated mathematical preconditions are answers; shape errors are not.
pub fn is_negative(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidSplitting { .. }
            | Error::CompatibilityViolation(_)
            | Error::HypothesisViolation(_)
            | Error::NonCommutingSquare { .. }
            | Error::NoSolution { .. }
            | Error::MultipleSolutions { .. }
            | Error::NotAHomomorphism(_)
    )
}

impl Failure {
    pub fn from_error(command: &str, e: Error) -> Failure {
        match e {
            Error::BudgetExceeded { .. } => {
                Failure::Inconclusive(Box::new(Report::new(command, Outcome::Inconclusive).with_note(e.to_string())))
            }
            e if is_negative(&e) => {
                let msg = e.to_string();
                let witness = match &e {
                    Error::NoSolution { a, b, c } | Error::MultipleSolutions { a, b, c } => serde_json::json!([a, b, c]),
                    _ => serde_json::json!(msg),
                };
                let mut r = Report::from_details(command, vec![Detail::new(msg.clone(), Verdict::fails(msg, witness))]);
                r.command = command.to_string();
                Failure::Negative(Box::new(r))
            }
            e => Failure::Usage(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    let mut s = String::new();
    let res = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| s = t)
    };
    res.map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(s)
}

/// Parses a file, naming the offending field on failure.
pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = read(path)?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let at = e.path().to_string();
        Failure::Usage(format!("{}: at `{at}`: {}", path.display(), e.into_inner()))
    })
}

pub fn from_value<T: DeserializeOwned>(path: &Path, v: serde_json::Value) -> Result<T, Failure> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let at = e.path().to_string();
        Failure::Usage(format!("{}: at `{at}`: {}", path.display(), e.into_inner()))
    })
}

/// A reflexive graph with a multiplication on its composable pairs.
#[derive(Deserialize)]
pub struct GraphWithM {
    pub graph: ReflexiveGraph,
    pub m: FinMap,
}
