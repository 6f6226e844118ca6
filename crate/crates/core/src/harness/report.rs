//! Outcome of a property check.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::search::{LinearAudit, SearchStats};
use crate::redex::Trace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Holds,
    /// Only when a search bound ran out before an answer was found.
    Inconclusive,
    Falsified,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Falsified => "falsified",
            Status::Inconclusive => "inconclusive",
        }
    }

    /// The worse of the two.
    pub fn combine(self, other: Status) -> Status {
        self.max(other)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Bound {
    pub depth: usize,
    pub states: usize,
}

/// One entry of a flattened witness. Each trace opens with a `start` entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessStep {
    pub rule: String,
    pub linear: bool,
    pub term: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub status: Status,
    pub bound_used: Bound,
    pub subject: String,
    pub witness: Vec<WitnessStep>,
    /// Linear steps seen by every search behind this report.
    pub audit: LinearAudit,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(name: &str, subject: impl ToString) -> Self {
        CheckReport {
            name: name.to_string(),
            status: Status::Holds,
            bound_used: Bound::default(),
            subject: subject.to_string(),
            witness: Vec::new(),
            audit: LinearAudit::default(),
            notes: Vec::new(),
        }
    }

    pub fn with_status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }

    pub fn fail(&mut self, status: Status, note: impl ToString) {
        self.status = self.status.combine(status);
        self.notes.push(note.to_string());
    }

    pub fn note(&mut self, note: impl ToString) {
        self.notes.push(note.to_string());
    }

    pub fn record_search(&mut self, stats: &SearchStats) {
        self.bound_used.depth = self.bound_used.depth.max(stats.depth);
        self.bound_used.states += stats.states;
        self.audit.merge(&stats.audit);
    }

    pub fn push_trace<R: fmt::Display, S: fmt::Display>(&mut self, trace: &Trace<R, S>) {
        self.witness.push(WitnessStep {
            rule: "start".into(),
            linear: true,
            term: trace.start.to_string(),
        });
        for r in &trace.steps {
            self.witness.push(WitnessStep {
                rule: r.rule.to_string(),
                linear: r.linear,
                term: r.result.to_string(),
            });
        }
    }

    /// Fold a sub-report (same check, other piece) into this one.
    pub fn absorb(&mut self, other: CheckReport) {
        self.status = self.status.combine(other.status);
        self.bound_used.depth = self.bound_used.depth.max(other.bound_used.depth);
        self.bound_used.states += other.bound_used.states;
        self.witness.extend(other.witness);
        self.audit.merge(&other.audit);
        self.notes.extend(other.notes);
    }
}

/// Counts per status over a batch.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub holds: usize,
    pub falsified: usize,
    pub inconclusive: usize,
    pub audit: LinearAudit,
}

impl Summary {
    pub fn of<'a>(reports: impl IntoIterator<Item = &'a CheckReport>) -> Self {
        let mut s = Summary::default();
        for r in reports {
            match r.status {
                Status::Holds => s.holds += 1,
                Status::Falsified => s.falsified += 1,
                Status::Inconclusive => s.inconclusive += 1,
            }
            s.audit.merge(&r.audit);
        }
        s
    }

    pub fn total(&self) -> usize {
        self.holds + self.falsified + self.inconclusive
    }

    pub fn status(&self) -> Status {
        if self.falsified > 0 {
            Status::Falsified
        } else if self.inconclusive > 0 {
            Status::Inconclusive
        } else {
            Status::Holds
        }
    }
}
