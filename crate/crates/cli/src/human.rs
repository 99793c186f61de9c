//! Plain-text rendering of reports.

use std::fmt::Write;

use kite_core::report::Report;

pub fn render(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}: {}", r.command, r.verdict);
    if let Some(w) = &r.witness {
        let _ = writeln!(out, "witness: {w}");
    }
    if !r.details.is_empty() {
        let width = r.details.iter().map(|d| d.condition.len()).max().unwrap_or(0);
        for d in &r.details {
            let mark = if d.holds() { "ok" } else { "FAIL" };
            let _ = write!(out, "  {:<width$}  {mark}", d.condition);
            if let Some(w) = &d.witness {
                let _ = write!(out, "  at {w}");
            }
            out.push('\n');
        }
    }
    if let Some(c) = &r.count {
        let _ = writeln!(out, "count: {c}");
    }
    if let Some(sols) = &r.solutions {
        for (i, s) in sols.iter().enumerate() {
            let row: Vec<String> = s.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "  solution {i}: {}", row.join(" "));
        }
    }
    if let Some(serde_json::Value::Array(labels)) = &r.labels {
        let cells: Vec<String> = labels.iter().enumerate().map(|(i, l)| format!("{i}={l}")).collect();
        let _ = writeln!(out, "labels: {}", cells.join(" "));
    }
    if let Some(s) = &r.structure {
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(s).unwrap_or_default());
    }
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    out
}
