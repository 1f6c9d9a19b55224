//! Report records and their JSON form.

use serde_json::{json, Map, Value};
use tyang::serial::{qmat_to_json, rat_to_json};
use tyang::superlinalg::{Grid2Witness, GridOutcome};

pub const REPORT_SCHEMA: &str = "tyang-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }

    pub fn parse(s: &str) -> Option<Status> {
        match s {
            "pass" => Some(Status::Pass),
            "fail" => Some(Status::Fail),
            _ => None,
        }
    }
}

/// Result of one check, before it is tagged with its id and anchor.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub status: Status,
    pub witness: Option<Value>,
    pub data: Option<Value>,
}

impl Outcome {
    pub fn pass() -> Outcome {
        Outcome {
            status: Status::Pass,
            witness: None,
            data: None,
        }
    }

    pub fn fail(witness: Value) -> Outcome {
        Outcome {
            status: Status::Fail,
            witness: Some(witness),
            data: None,
        }
    }

    pub fn error(e: &tyang::Error) -> Outcome {
        Outcome::fail(json!({"kind": "error", "message": e.to_string()}))
    }

    pub fn grid(g: &GridOutcome) -> Outcome {
        match g {
            GridOutcome::Pass { points } => Outcome::pass().with_data(json!({"points": points})),
            GridOutcome::Fail(w) => Outcome::fail(grid_witness(w)),
        }
    }

    pub fn with_data(mut self, data: Value) -> Outcome {
        self.data = Some(data);
        self
    }
}

pub fn grid_witness(w: &Grid2Witness) -> Value {
    json!({
        "kind": "grid2",
        "u0": rat_to_json(&w.u0),
        "v0": rat_to_json(&w.v0),
        "entry": [w.entry.0 + 1, w.entry.1 + 1],
        "lhs": qmat_to_json(&w.lhs),
        "rhs": qmat_to_json(&w.rhs),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub scenario: String,
    pub pipeline: String,
    /// Sorted by id.
    pub checks: Vec<CheckRecord>,
    pub expected: Option<Status>,
}

impl Report {
    pub fn status(&self) -> Status {
        Status::from_bool(self.checks.iter().all(|c| c.outcome.status == Status::Pass))
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                let mut m = Map::new();
                m.insert("id".into(), json!(c.id));
                m.insert("anchor".into(), json!(c.anchor));
                m.insert("status".into(), json!(c.outcome.status.as_str()));
                if let Some(w) = &c.outcome.witness {
                    m.insert("witness".into(), w.clone());
                }
                if let Some(d) = &c.outcome.data {
                    m.insert("data".into(), d.clone());
                }
                Value::Object(m)
            })
            .collect();
        let mut m = Map::new();
        m.insert("schema".into(), json!(REPORT_SCHEMA));
        m.insert("scenario".into(), json!(self.scenario));
        m.insert("pipeline".into(), json!(self.pipeline));
        m.insert("status".into(), json!(self.status().as_str()));
        m.insert("checks".into(), Value::Array(checks));
        if let Some(e) = self.expected {
            m.insert("expected_status".into(), json!(e.as_str()));
            m.insert("matches_expectation".into(), json!(e == self.status()));
        }
        Value::Object(m)
    }

    /// Pretty JSON with a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
        s.push('\n');
        s
    }
}
