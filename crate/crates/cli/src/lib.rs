//! Scenario runner for the `tyang` verification pipelines.
//!
//! A scenario names one pipeline and supplies its inputs. Running it yields a
//! [`Report`] with one record per check, sorted by check id.

mod inputs;
mod pipelines;
mod report;

pub use inputs::InputError;
pub use pipelines::{Pipeline, PIPELINES};
pub use report::{CheckRecord, Outcome, Report, Status, REPORT_SCHEMA};

use serde_json::Value;
use std::path::Path;

pub const SCENARIO_SCHEMA: &str = "tyang-scenario/1";

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub only: Option<String>,
    pub max_dim: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            only: None,
            max_dim: 64,
        }
    }
}

/// Parses scenario text, reporting syntax errors as `line:column`.
pub fn parse_scenario(text: &str) -> Result<Value, InputError> {
    serde_json::from_str(text).map_err(|e| {
        InputError::new(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })
}

pub fn run_scenario_value(v: &Value, opts: &RunOptions) -> Result<Report, InputError> {
    if !v.is_object() {
        return Err(InputError::new("/", "scenario must be an object"));
    }
    if let Some(s) = v.get("schema") {
        if s.as_str() != Some(SCENARIO_SCHEMA) {
            return Err(InputError::new(
                "/schema",
                format!("expected \"{SCENARIO_SCHEMA}\""),
            ));
        }
    }
    let name = inputs::string(inputs::field(v, "", "name")?, "/name")?.to_string();
    let pid = inputs::string(inputs::field(v, "", "pipeline")?, "/pipeline")?;
    let pipeline = pipelines::find(pid)
        .ok_or_else(|| InputError::new("/pipeline", format!("unknown pipeline \"{pid}\"")))?;
    let expected =
        match v.get("expect").and_then(|e| e.get("status")) {
            None => None,
            Some(s) => Some(s.as_str().and_then(Status::parse).ok_or_else(|| {
                InputError::new("/expect/status", "expected \"pass\" or \"fail\"")
            })?),
        };
    let builder = inputs::Builder {
        max_dim: opts.max_dim,
    };
    let mut jobs = (pipeline.build)(inputs::field(v, "", "inputs")?, &builder)?;
    if let Some(only) = &opts.only {
        jobs.retain(|j| &j.id == only);
        if jobs.is_empty() {
            return Err(InputError::new(
                "--only",
                format!("pipeline {pid} has no check \"{only}\""),
            ));
        }
    }
    let outcomes = tyang::par::map(&jobs, |j| (j.run)());
    let mut checks: Vec<CheckRecord> = jobs
        .iter()
        .zip(outcomes)
        .map(|(j, outcome)| CheckRecord {
            id: j.id.clone(),
            anchor: j.anchor.to_string(),
            outcome,
        })
        .collect();
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(Report {
        scenario: name,
        pipeline: pid.to_string(),
        checks,
        expected,
    })
}

pub fn run_scenario_str(text: &str, opts: &RunOptions) -> Result<Report, InputError> {
    run_scenario_value(&parse_scenario(text)?, opts)
}

pub fn run_scenario(path: &Path, opts: &RunOptions) -> Result<Report, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError::new(path.display().to_string(), e.to_string()))?;
    run_scenario_str(&text, opts)
}
