//! Vocabulary shared by both reduction engines.

use alloc::vec::Vec;

/// Root-to-redex path of child indices.
pub type Position = Vec<usize>;

/// A located one-step reduction opportunity together with its outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RedexInfo<R, S> {
    pub rule: R,
    pub position: Position,
    pub linear: bool,
    /// The whole subject after firing.
    pub result: S,
}

/// Order used by the `reduce` drivers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReduceOrder {
    LeftmostOutermost,
    /// Breadth-first over every redex; stops at the first normal form found.
    AllPathsBfs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    NormalForm,
    StepBound,
}

/// A start subject and the steps fired from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace<R, S> {
    pub start: S,
    pub steps: Vec<RedexInfo<R, S>>,
}

impl<R, S> Trace<R, S> {
    pub fn new(start: S) -> Self {
        Trace {
            start,
            steps: Vec::new(),
        }
    }

    pub fn last(&self) -> &S {
        self.steps.last().map_or(&self.start, |r| &r.result)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction<R, S> {
    pub trace: Trace<R, S>,
    pub stopped: Termination,
}

/// Termination measure for linear steps: node count first, then a
/// calculus-specific tie-breaker compared lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Measure {
    pub nodes: usize,
    pub secondary: Vec<usize>,
}
