//! Breadth-first exploration of reduction graphs, keyed by α-canonical
//! forms, with parent pointers for witness traces.

use alloc::collections::{BTreeMap, BTreeSet, BinaryHeap, VecDeque};
use core::cmp::Reverse;
use alloc::vec::Vec;
use core::fmt;

use crate::error::KernelError;
use crate::lm::{LmRule, LmStrategy, LmSubject};
use crate::lmm::{LbMode, LbRule, LbSubject};
use crate::redex::{Measure, RedexInfo, Trace};

/// What the search needs from a calculus.
pub trait Calculus {
    type Subject: Clone + Ord + fmt::Display + fmt::Debug;
    type Rule: Copy + Eq + fmt::Display + fmt::Debug;
    type Mode: Copy + fmt::Debug;

    fn redexes(s: &Self::Subject, mode: Self::Mode) -> Vec<RedexInfo<Self::Rule, Self::Subject>>;
    fn step(
        s: &Self::Subject,
        r: &RedexInfo<Self::Rule, Self::Subject>,
    ) -> Result<Self::Subject, KernelError>;
    /// With `junk`, free reserved covariables are identified.
    fn canonical(s: &Self::Subject, junk: bool) -> Self::Subject;
    fn measure(s: &Self::Subject) -> Measure;
}

#[derive(Clone, Copy, Debug)]
pub struct Lm;

#[derive(Clone, Copy, Debug)]
pub struct Lmm;

impl Calculus for Lm {
    type Subject = LmSubject;
    type Rule = LmRule;
    type Mode = LmStrategy;

    fn redexes(s: &LmSubject, mode: LmStrategy) -> Vec<RedexInfo<LmRule, LmSubject>> {
        s.redexes(mode)
    }

    fn step(s: &LmSubject, r: &RedexInfo<LmRule, LmSubject>) -> Result<LmSubject, KernelError> {
        s.step(r)
    }

    fn canonical(s: &LmSubject, junk: bool) -> LmSubject {
        s.canonical(junk)
    }

    fn measure(s: &LmSubject) -> Measure {
        s.measure()
    }
}

impl Calculus for Lmm {
    type Subject = LbSubject;
    type Rule = LbRule;
    type Mode = LbMode;

    /// Fragment membership is checked once on the start subject by the
    /// callers; the strategies preserve it.
    fn redexes(s: &LbSubject, mode: LbMode) -> Vec<RedexInfo<LbRule, LbSubject>> {
        s.redexes_unchecked(mode)
    }

    fn step(s: &LbSubject, r: &RedexInfo<LbRule, LbSubject>) -> Result<LbSubject, KernelError> {
        s.step(r)
    }

    fn canonical(s: &LbSubject, junk: bool) -> LbSubject {
        s.canonical(junk)
    }

    fn measure(s: &LbSubject) -> Measure {
        s.measure()
    }
}

/// A reduction relation: a strategy, optionally restricted to linear steps.
#[derive(Clone, Copy, Debug)]
pub struct Relation<M> {
    pub mode: M,
    pub linear_only: bool,
}

impl<M> Relation<M> {
    pub fn full(mode: M) -> Self {
        Relation {
            mode,
            linear_only: false,
        }
    }

    pub fn linear(mode: M) -> Self {
        Relation {
            mode,
            linear_only: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// `None` explores until the graph is exhausted (or `max_states`).
    pub max_depth: Option<usize>,
    pub max_states: usize,
}

impl Limits {
    pub fn depth(max_depth: usize) -> Self {
        Limits {
            max_depth: Some(max_depth),
            max_states: 20_000,
        }
    }

    /// For linear relations, which always terminate.
    pub fn unbounded() -> Self {
        Limits {
            max_depth: None,
            max_states: 200_000,
        }
    }

    pub fn doubled(self) -> Self {
        Limits {
            max_depth: self.max_depth.map(|d| d * 2),
            max_states: self.max_states * 2,
        }
    }
}

/// Every linear step fired during a search is checked against the
/// termination measure.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LinearAudit {
    pub steps: usize,
    /// Linear steps that did not shrink the node count.
    pub node_ties: usize,
    /// Linear steps that did not decrease the full measure; always a bug.
    pub violations: usize,
}

impl LinearAudit {
    pub fn merge(&mut self, other: &LinearAudit) {
        self.steps += other.steps;
        self.node_ties += other.node_ties;
        self.violations += other.violations;
    }

    pub fn record(&mut self, before: &Measure, after: &Measure) {
        self.steps += 1;
        if after.nodes >= before.nodes {
            self.node_ties += 1;
        }
        if after >= before {
            self.violations += 1;
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub states: usize,
    pub depth: usize,
    /// Some state was left unexpanded because of a limit.
    pub truncated: bool,
    pub audit: LinearAudit,
}

impl SearchStats {
    pub fn merge(&mut self, other: &SearchStats) {
        self.states += other.states;
        self.depth = self.depth.max(other.depth);
        self.truncated |= other.truncated;
        self.audit.merge(&other.audit);
    }
}

type Edge<C> = (<C as Calculus>::Subject, RedexInfo<<C as Calculus>::Rule, <C as Calculus>::Subject>);
type PathOf<C> = Trace<<C as Calculus>::Rule, <C as Calculus>::Subject>;

struct Node<C: Calculus> {
    subject: C::Subject,
    parent: Option<Edge<C>>,
}

/// The explored part of a reduction graph.
pub struct Explored<C: Calculus> {
    nodes: BTreeMap<C::Subject, Node<C>>,
    start: C::Subject,
    junk: bool,
    pub stats: SearchStats,
}

impl<C: Calculus> Explored<C> {
    pub fn contains(&self, s: &C::Subject) -> bool {
        self.nodes.contains_key(&C::canonical(s, self.junk))
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// The concrete subjects reached, in canonical order.
    pub fn subjects(&self) -> impl Iterator<Item = &C::Subject> {
        self.nodes.values().map(|n| &n.subject)
    }

    fn keys(&self) -> BTreeSet<&C::Subject> {
        self.nodes.keys().collect()
    }

    /// The path from the start to the state with canonical form `key`.
    fn trace_to(&self, key: &C::Subject) -> Trace<C::Rule, C::Subject> {
        let mut steps = Vec::new();
        let mut k = key;
        while let Some(Node {
            parent: Some((p, r)),
            ..
        }) = self.nodes.get(k)
        {
            steps.push(r.clone());
            k = p;
        }
        steps.reverse();
        Trace {
            start: self.start.clone(),
            steps,
        }
    }

    pub fn trace_to_subject(&self, s: &C::Subject) -> Option<Trace<C::Rule, C::Subject>> {
        let key = C::canonical(s, self.junk);
        self.nodes.contains_key(&key).then(|| self.trace_to(&key))
    }
}

/// Breadth-first search from `start`; stops early as soon as `stop` accepts
/// the canonical form of a discovered state, returning that key.
pub fn explore<C: Calculus>(
    start: &C::Subject,
    rel: Relation<C::Mode>,
    limits: Limits,
    junk: bool,
    stop: impl FnMut(&C::Subject) -> bool,
) -> (Explored<C>, Option<C::Subject>) {
    explore_pruned::<C>(start, rel, limits, junk, stop, |_| true, false)
}

/// Pending states: first in, first out, or smallest measure first.
enum Frontier<S> {
    Fifo(VecDeque<(S, usize)>),
    Lowest(BinaryHeap<Reverse<(Measure, S, usize)>>),
}

impl<S: Ord> Frontier<S> {
    fn pop(&mut self) -> Option<(S, usize)> {
        match self {
            Frontier::Fifo(q) => q.pop_front(),
            Frontier::Lowest(h) => h.pop().map(|Reverse((_, k, d))| (k, d)),
        }
    }

    fn push(&mut self, measure: Option<Measure>, key: S, depth: usize) {
        match self {
            Frontier::Fifo(q) => q.push_back((key, depth)),
            Frontier::Lowest(h) => h.push(Reverse((measure.expect("measured"), key, depth))),
        }
    }
}

/// As [`explore`], discarding reducts that fail `viable`.
fn explore_pruned<C: Calculus>(
    start: &C::Subject,
    rel: Relation<C::Mode>,
    limits: Limits,
    junk: bool,
    mut stop: impl FnMut(&C::Subject) -> bool,
    viable: impl Fn(&C::Subject) -> bool,
    best_first: bool,
) -> (Explored<C>, Option<C::Subject>) {
    let mut ex = Explored {
        nodes: BTreeMap::new(),
        start: start.clone(),
        junk,
        stats: SearchStats::default(),
    };
    let key = C::canonical(start, junk);
    ex.nodes.insert(
        key.clone(),
        Node {
            subject: start.clone(),
            parent: None,
        },
    );
    ex.stats.states = 1;
    if stop(&key) {
        return (ex, Some(key));
    }
    let mut queue = if best_first {
        Frontier::Lowest(BinaryHeap::new())
    } else {
        Frontier::Fifo(VecDeque::new())
    };
    queue.push(best_first.then(|| C::measure(start)), key, 0);
    while let Some((key, depth)) = queue.pop() {
        let subject = ex.nodes[&key].subject.clone();
        let mut redexes = C::redexes(&subject, rel.mode);
        if rel.linear_only {
            redexes.retain(|r| r.linear);
        }
        if redexes.is_empty() {
            continue;
        }
        if limits.max_depth.is_some_and(|d| depth >= d) || ex.nodes.len() >= limits.max_states {
            ex.stats.truncated = true;
            continue;
        }
        let before = redexes.iter().any(|r| r.linear).then(|| C::measure(&subject));
        for r in redexes {
            if let (true, Some(before)) = (r.linear, &before) {
                ex.stats.audit.record(before, &C::measure(&r.result));
            }
            let k = C::canonical(&r.result, junk);
            if ex.nodes.contains_key(&k) || !viable(&r.result) {
                continue;
            }
            let m = best_first.then(|| C::measure(&r.result));
            ex.nodes.insert(
                k.clone(),
                Node {
                    subject: r.result.clone(),
                    parent: Some((key.clone(), r)),
                },
            );
            ex.stats.states += 1;
            ex.stats.depth = ex.stats.depth.max(depth + 1);
            if stop(&k) {
                return (ex, Some(k));
            }
            queue.push(m, k, depth + 1);
        }
    }
    (ex, None)
}

pub struct PathSearch<C: Calculus> {
    pub trace: Option<Trace<C::Rule, C::Subject>>,
    pub stats: SearchStats,
}

/// A shortest path from `start` to (a canonical twin of) `target`.
pub fn find_path<C: Calculus>(
    start: &C::Subject,
    target: &C::Subject,
    rel: Relation<C::Mode>,
    limits: Limits,
    junk: bool,
) -> PathSearch<C> {
    let goal = C::canonical(target, junk);
    // linear steps strictly decrease the measure, so nothing below the
    // target's measure can lead back up to it
    let floor = C::measure(target);
    let linear = rel.linear_only;
    // and descending greedily towards it finds a path without visiting
    // every interleaving
    let (ex, found) = explore_pruned::<C>(
        start,
        rel,
        limits,
        junk,
        |k| *k == goal,
        |s| !linear || C::measure(s) >= floor,
        linear,
    );
    PathSearch {
        trace: found.map(|k| ex.trace_to(&k)),
        stats: ex.stats,
    }
}

/// Everything reachable from `start`.
pub fn closure<C: Calculus>(
    start: &C::Subject,
    rel: Relation<C::Mode>,
    limits: Limits,
    junk: bool,
) -> Explored<C> {
    explore::<C>(start, rel, limits, junk, |_| false).0
}

pub struct Meet<C: Calculus> {
    /// Paths from each side to the common reduct.
    pub traces: Option<(PathOf<C>, PathOf<C>)>,
    pub stats: SearchStats,
}

/// A common reduct of `a` (under `rel_a`) and `b` (under `rel_b`). The
/// `b` side is explored exhaustively first, so it should be the
/// terminating one.
pub fn meet<C: Calculus>(
    a: &C::Subject,
    rel_a: Relation<C::Mode>,
    b: &C::Subject,
    rel_b: Relation<C::Mode>,
    limits: Limits,
    junk: bool,
) -> Meet<C> {
    let right = closure::<C>(b, rel_b, Limits::unbounded(), junk);
    let keys = right.keys();
    let (left, found) = explore::<C>(a, rel_a, limits, junk, |k| keys.contains(k));
    let mut stats = left.stats;
    stats.merge(&right.stats);
    Meet {
        traces: found.map(|k| (left.trace_to(&k), right.trace_to(&k))),
        stats,
    }
}

/// Re-fire every step of `trace` through the kernel.
pub fn replay<C: Calculus>(trace: &Trace<C::Rule, C::Subject>) -> Result<C::Subject, KernelError> {
    let mut cur = trace.start.clone();
    for r in &trace.steps {
        cur = C::step(&cur, r)?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lm::{LmCommand, LmTerm};
    use crate::lmm::{LbCommand, LbContext, LbStrategy, LbTerm};

    #[test]
    fn normal_forms_are_their_own_closure() {
        let x = LmSubject::Term(LmTerm::var("x"));
        let ex = closure::<Lm>(&x, Relation::full(LmStrategy::Free), Limits::depth(5), false);
        assert_eq!(ex.len(), 1);
        assert!(!ex.stats.truncated);
    }

    #[test]
    fn linear_chain() {
        // μβ.[γ](μδ.[β](x y)) ⊸ρ μβ.[β](x y) ⊸θ x y
        let xy = LmTerm::app(LmTerm::var("x"), LmTerm::var("y"));
        let s = LmSubject::Term(LmTerm::mu(
            "b",
            LmCommand::named("g", LmTerm::mu("d", LmCommand::named("b", xy.clone()))),
        ));
        let ex = closure::<Lm>(&s, Relation::linear(LmStrategy::Free), Limits::unbounded(), false);
        assert!(ex.contains(&LmSubject::Term(LmTerm::mu("b", LmCommand::named("b", xy.clone())))));
        assert!(ex.contains(&LmSubject::Term(xy.clone())));
        let p = find_path::<Lm>(
            &s,
            &LmSubject::Term(xy.clone()),
            Relation::linear(LmStrategy::Free),
            Limits::unbounded(),
            false,
        );
        let trace = p.trace.unwrap();
        assert_eq!(trace.len(), 2);
        assert_eq!(replay::<Lm>(&trace).unwrap(), LmSubject::Term(xy));
        assert_eq!(p.stats.audit.violations, 0);
    }

    #[test]
    fn critical_pair_closure() {
        let s = LbSubject::Command(LbCommand::cut(
            LbTerm::mu("a", LbCommand::cut(LbTerm::var("x"), LbContext::cons(LbTerm::var("y"), LbContext::covar("a")))),
            LbContext::mu_tilde("x", LbCommand::cut(LbTerm::var("z"), LbContext::cons(LbTerm::var("x"), LbContext::covar("b")))),
        ));
        let ex = closure::<Lmm>(&s, Relation::full(LbMode::new(LbStrategy::Free)), Limits::depth(3), false);
        assert_eq!(ex.len(), 3);
        let normal: Vec<_> = ex
            .subjects()
            .filter(|s| Lmm::redexes(s, LbMode::new(LbStrategy::Free)).is_empty())
            .collect();
        assert_eq!(normal.len(), 2);
    }

    #[test]
    fn meeting_point() {
        // μβ.[β](x y) and x y meet at x y
        let xy = LmTerm::app(LmTerm::var("x"), LmTerm::var("y"));
        let a = LmSubject::Term(LmTerm::mu("b", LmCommand::named("b", xy.clone())));
        let b = LmSubject::Term(xy);
        let rel = Relation::linear(LmStrategy::Free);
        let m = meet::<Lm>(&a, rel, &b, rel, Limits::depth(4), false);
        let (ta, tb) = m.traces.unwrap();
        assert_eq!(ta.len(), 1);
        assert!(tb.is_empty());
    }
}
