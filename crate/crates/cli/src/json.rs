//! JSON shapes of reports and traces.

use serde::Serialize;

use mumu_core::harness::CheckReport;
use mumu_core::{RedexInfo, Trace};

#[derive(Serialize)]
pub struct BoundJson {
    pub depth: usize,
    pub states: usize,
}

#[derive(Serialize)]
pub struct StepJson<'a> {
    pub rule: &'a str,
    pub linear: bool,
    pub term: &'a str,
}

/// Exactly the keys `name`, `status`, `bound_used`, `subject`, `witness`.
#[derive(Serialize)]
pub struct ReportJson<'a> {
    pub name: &'a str,
    pub status: &'a str,
    pub bound_used: BoundJson,
    pub subject: &'a str,
    pub witness: Vec<StepJson<'a>>,
}

impl<'a> From<&'a CheckReport> for ReportJson<'a> {
    fn from(r: &'a CheckReport) -> Self {
        ReportJson {
            name: &r.name,
            status: r.status.name(),
            bound_used: BoundJson {
                depth: r.bound_used.depth,
                states: r.bound_used.states,
            },
            subject: &r.subject,
            witness: r
                .witness
                .iter()
                .map(|w| StepJson {
                    rule: &w.rule,
                    linear: w.linear,
                    term: &w.term,
                })
                .collect(),
        }
    }
}

pub fn report(r: &CheckReport) -> String {
    serde_json::to_string(&ReportJson::from(r)).expect("serialisable")
}

#[derive(Serialize)]
pub struct TraceStepJson {
    pub step: usize,
    pub rule: String,
    pub linear: bool,
    pub position: Vec<usize>,
    pub term: String,
}

#[derive(Serialize)]
pub struct ReductionJson {
    pub start: String,
    pub steps: Vec<TraceStepJson>,
    pub result: String,
    pub normal_form: bool,
}

pub fn trace_steps<R: ToString, S: ToString>(trace: &Trace<R, S>) -> Vec<TraceStepJson> {
    trace
        .steps
        .iter()
        .enumerate()
        .map(|(i, r): (usize, &RedexInfo<R, S>)| TraceStepJson {
            step: i + 1,
            rule: r.rule.to_string(),
            linear: r.linear,
            position: r.position.clone(),
            term: r.result.to_string(),
        })
        .collect()
}
