//! The machine-readable report every subcommand produces.
//!
//! `--json` prints the report verbatim; table mode renders the same fields
//! as aligned text. The exit code is a pure function of the status.

use elwlab::catalog::{LemmaCheck, Outcome};
use serde::Serialize;
use serde_json::Value;
use std::io::IsTerminal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Violation,
    Vacuous,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DetailOutcome {
    Pass,
    Fail,
    Vacuous,
}

#[derive(Debug, Clone, Serialize)]
pub struct Detail {
    pub check: String,
    pub outcome: DetailOutcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Detail {
    pub fn pass(check: impl Into<String>) -> Self {
        Detail {
            check: check.into(),
            outcome: DetailOutcome::Pass,
            witness: None,
        }
    }

    pub fn fail(check: impl Into<String>, witness: impl Into<String>) -> Self {
        Detail {
            check: check.into(),
            outcome: DetailOutcome::Fail,
            witness: Some(witness.into()),
        }
    }

    pub fn vacuous(check: impl Into<String>, reason: impl Into<String>) -> Self {
        Detail {
            check: check.into(),
            outcome: DetailOutcome::Vacuous,
            witness: Some(reason.into()),
        }
    }

    /// Adapts a library check, optionally renaming it (e.g. to tag the prime).
    pub fn from_check(check: &LemmaCheck, rename: Option<String>) -> Self {
        Detail {
            check: rename.unwrap_or_else(|| check.name.clone()),
            outcome: match check.outcome {
                Outcome::Verified => DetailOutcome::Pass,
                Outcome::Vacuous => DetailOutcome::Vacuous,
                Outcome::Violated => DetailOutcome::Fail,
            },
            witness: check.witness.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub details: Vec<Detail>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub payload: Option<Value>,
}

impl Report {
    /// Status is derived, never set by hand: any failed detail makes the
    /// report a violation, all-vacuous details make it vacuous.
    pub fn new(command: impl Into<String>, details: Vec<Detail>, payload: Option<Value>) -> Self {
        let status = if details.iter().any(|d| d.outcome == DetailOutcome::Fail) {
            Status::Violation
        } else if !details.is_empty() && details.iter().all(|d| d.outcome == DetailOutcome::Vacuous)
        {
            Status::Vacuous
        } else {
            Status::Ok
        };
        Report {
            command: command.into(),
            status,
            details,
            payload,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self.status {
            Status::Ok | Status::Vacuous => 0,
            Status::Violation => 1,
        }
    }
}

pub fn color_enabled() -> bool {
    match std::env::var("ELWLAB_COLOR").as_deref() {
        Ok("0") => false,
        Ok("1") => true,
        _ => std::io::stdout().is_terminal(),
    }
}

fn paint(text: &str, code: &str, color: bool) -> String {
    if color {
        format!("\x1b[{code}m{text}\x1b[0m")
    } else {
        text.to_string()
    }
}

fn outcome_word(o: DetailOutcome, color: bool) -> String {
    match o {
        DetailOutcome::Pass => paint("pass", "32", color),
        DetailOutcome::Fail => paint("FAIL", "31", color),
        DetailOutcome::Vacuous => paint("vacuous", "33", color),
    }
}

fn status_word(s: Status, color: bool) -> String {
    match s {
        Status::Ok => paint("ok", "32", color),
        Status::Violation => paint("violation", "31", color),
        Status::Vacuous => paint("vacuous", "33", color),
    }
}

/// Renders the payload value of one known key as a display line.
fn payload_line(payload: &Value, key: &str) -> Option<String> {
    let value = payload.get(key)?;
    let rendered = match value {
        Value::String(s) => s.clone(),
        Value::Array(items) => items
            .iter()
            .map(|v| match v {
                Value::String(s) => format!("({s})"),
                other => format!("({other})"),
            })
            .collect::<Vec<_>>()
            .join(","),
        other => other.to_string(),
    };
    Some(format!("{key}: {rendered}"))
}

/// Aligned-table rendering of the same report content `--json` emits.
pub fn print_table(report: &Report, color: bool) {
    let payload = report.payload.as_ref();

    // calculator-style commands print their single result bare
    match report.command.as_str() {
        "mu-td" => {
            if let Some(p) = payload {
                if let Some(f) = p.get("factored").and_then(Value::as_str) {
                    println!("{f}");
                } else if let Some(line) = payload_line(p, "value") {
                    println!("{}", line.trim_start_matches("value: "));
                }
            }
            return;
        }
        "enumerate" => {
            if let Some(seqs) = payload
                .and_then(|p| p.get("sequences"))
                .and_then(Value::as_array)
            {
                for s in seqs {
                    if let Value::Array(entries) = s {
                        let line = entries
                            .iter()
                            .map(|e| match e {
                                Value::String(s) => s.clone(),
                                other => other.to_string(),
                            })
                            .collect::<Vec<_>>()
                            .join(",");
                        println!("{line}");
                    }
                }
            }
            return;
        }
        _ => {}
    }

    println!("status: {}", status_word(report.status, color));
    if let Some(p) = payload {
        for key in [
            "name",
            "catalog",
            "source",
            "target",
            "kind",
            "dimension",
            "degree",
            "level",
            "seq_x",
            "seq_y",
            "sequence",
            "expected_sequence",
            "residue",
            "chi",
            "m",
            "count",
        ] {
            if let Some(line) = payload_line(p, key) {
                println!("{line}");
            }
        }
    }
    if !report.details.is_empty() {
        let width = report
            .details
            .iter()
            .map(|d| d.check.len())
            .max()
            .unwrap_or(0)
            + 2;
        println!("checks:");
        for d in &report.details {
            let witness = d.witness.as_deref().unwrap_or("");
            println!(
                "  {:<width$} {:<9} {}",
                d.check,
                outcome_word(d.outcome, color),
                witness,
                width = width
            );
        }
    }
}
