//! One-step λμ reduction: redex enumeration under a strategy, firing, and
//! iterated reduction.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use super::{child, LmCommand, LmContext, LmRef, LmSubject, LmTerm};
use crate::error::KernelError;
use crate::name::{CoVarName, Fresh};
use crate::redex::{Position, RedexInfo, ReduceOrder, Reduction, Termination, Trace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LmRule {
    Beta,
    Mu,
    MuPrime,
    Rho,
    Theta,
}

impl LmRule {
    pub const ALL: [LmRule; 5] = [
        LmRule::Beta,
        LmRule::Mu,
        LmRule::MuPrime,
        LmRule::Rho,
        LmRule::Theta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LmRule::Beta => "beta",
            LmRule::Mu => "mu",
            LmRule::MuPrime => "mu-prime",
            LmRule::Rho => "rho",
            LmRule::Theta => "theta",
        }
    }
}

impl fmt::Display for LmRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LmStrategy {
    Free,
    /// Everything but μ'.
    Cbn,
    /// β and μ only against values.
    Cbv,
    /// β against values, μ' only from a value function.
    CbvOs,
}

impl LmStrategy {
    pub fn name(self) -> &'static str {
        match self {
            LmStrategy::Free => "free",
            LmStrategy::Cbn => "cbn",
            LmStrategy::Cbv => "cbv",
            LmStrategy::CbvOs => "cbv-os",
        }
    }

    fn allows(self, rule: LmRule, fun: &LmTerm, arg: &LmTerm) -> bool {
        use LmStrategy::*;
        match (self, rule) {
            (Free, _) | (_, LmRule::Rho) | (_, LmRule::Theta) => true,
            (Cbn, LmRule::MuPrime) => false,
            (Cbn, _) => true,
            (Cbv, LmRule::Beta) | (Cbv, LmRule::Mu) | (CbvOs, LmRule::Beta) => arg.is_value(),
            (Cbv, LmRule::MuPrime) | (CbvOs, LmRule::Mu) => true,
            (CbvOs, LmRule::MuPrime) => fun.is_value(),
        }
    }
}

impl fmt::Display for LmStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl core::str::FromStr for LmStrategy {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "free" => Ok(LmStrategy::Free),
            "cbn" => Ok(LmStrategy::Cbn),
            "cbv" => Ok(LmStrategy::Cbv),
            "cbv-os" => Ok(LmStrategy::CbvOs),
            _ => Err(()),
        }
    }
}

pub type LmRedex = RedexInfo<LmRule, LmSubject>;

/// A redex contracted in place: the rule, its linearity and the node that
/// replaces the redex.
struct Local {
    rule: LmRule,
    linear: bool,
    replacement: LmSubject,
}

/// A covariable binder that does not occur free in `avoid`, renaming the
/// command if `a` does.
fn unclash(a: &CoVarName, c: &LmCommand, avoid: &LmTerm) -> (CoVarName, LmCommand) {
    if !avoid.free_names().covars.contains(a) {
        return (a.clone(), c.clone());
    }
    let names = LmSubject::Command(c.clone())
        .all_names()
        .union(&LmSubject::Term(avoid.clone()).all_names());
    let mut fresh = Fresh::avoiding(&names);
    let a2 = fresh.covar(a.as_str());
    let renamed = c.subst_covar_with(a, &LmContext::CoVar(a2.clone()), &mut fresh);
    (a2, renamed)
}

fn local_redexes(node: LmRef<'_>, strategy: LmStrategy) -> Vec<Local> {
    let mut out = Vec::new();
    match node {
        LmRef::Term(LmTerm::App(fun, arg)) => {
            if let LmTerm::Lam(x, body) = &**fun {
                if strategy.allows(LmRule::Beta, fun, arg) {
                    out.push(Local {
                        rule: LmRule::Beta,
                        linear: matches!(**arg, LmTerm::Var(_)) || body.count_var(x) <= 1,
                        replacement: LmSubject::Term(body.subst_var(x, arg)),
                    });
                }
            }
            if let LmTerm::Mu(a, c) = &**fun {
                if strategy.allows(LmRule::Mu, fun, arg) {
                    let (a2, c2) = unclash(a, c, arg);
                    let e = LmContext::ArgStack(
                        Box::new(LmContext::CoVar(a2.clone())),
                        arg.clone(),
                    );
                    out.push(Local {
                        rule: LmRule::Mu,
                        linear: c.count_covar(a) <= 1,
                        replacement: LmSubject::Term(LmTerm::Mu(
                            a2.clone(),
                            Box::new(c2.subst_covar(&a2, &e)),
                        )),
                    });
                }
            }
            if let LmTerm::Mu(a, c) = &**arg {
                if strategy.allows(LmRule::MuPrime, fun, arg) {
                    let (a2, c2) = unclash(a, c, fun);
                    let e = LmContext::AppTo(fun.clone(), a2.clone());
                    out.push(Local {
                        rule: LmRule::MuPrime,
                        linear: c.count_covar(a) <= 1,
                        replacement: LmSubject::Term(LmTerm::Mu(
                            a2.clone(),
                            Box::new(c2.subst_covar(&a2, &e)),
                        )),
                    });
                }
            }
        }
        LmRef::Command(LmCommand { covar: b, body }) => {
            if let LmTerm::Mu(a, c) = &**body {
                out.push(Local {
                    rule: LmRule::Rho,
                    linear: true,
                    replacement: LmSubject::Command(
                        c.subst_covar(a, &LmContext::CoVar(b.clone())),
                    ),
                });
            }
        }
        LmRef::Term(LmTerm::Mu(d, c)) if c.covar == *d && c.body.count_covar(d) == 0 => {
            out.push(Local {
                rule: LmRule::Theta,
                linear: true,
                replacement: LmSubject::Term((*c.body).clone()),
            });
        }
        _ => {}
    }
    out
}

fn collect(
    root: &LmSubject,
    node: LmRef<'_>,
    path: &mut Position,
    strategy: LmStrategy,
    out: &mut Vec<LmRedex>,
) {
    for local in local_redexes(node, strategy) {
        let result = root
            .replace_at(path, local.replacement)
            .expect("redex position is valid");
        out.push(RedexInfo {
            rule: local.rule,
            position: path.clone(),
            linear: local.linear,
            result,
        });
    }
    for i in 0..2 {
        if let Some(c) = child(node, i) {
            path.push(i);
            collect(root, c, path, strategy, out);
            path.pop();
        }
    }
}

impl LmSubject {
    /// Every redex the strategy permits, outermost first, then left to
    /// right.
    pub fn redexes(&self, strategy: LmStrategy) -> Vec<LmRedex> {
        let mut out = Vec::new();
        collect(self, self.as_ref(), &mut Vec::new(), strategy, &mut out);
        out
    }

    pub fn is_normal(&self, strategy: LmStrategy) -> bool {
        self.redexes(strategy).is_empty()
    }

    /// Fire `redex` on `self`.
    pub fn step(&self, redex: &LmRedex) -> Result<LmSubject, KernelError> {
        let stale = || KernelError::StaleRedex {
            rule: redex.rule.name().to_string(),
            position: redex.position.clone(),
        };
        let mut node = self.as_ref();
        for &i in &redex.position {
            node = child(node, i).ok_or_else(stale)?;
        }
        let local = local_redexes(node, LmStrategy::Free)
            .into_iter()
            .find(|l| l.rule == redex.rule)
            .ok_or_else(stale)?;
        let result = self
            .replace_at(&redex.position, local.replacement)
            .ok_or_else(stale)?;
        if result == redex.result {
            Ok(result)
        } else {
            Err(stale())
        }
    }

    pub fn reduce(&self, strategy: LmStrategy, max_steps: usize, order: ReduceOrder) -> Reduction<LmRule, LmSubject> {
        match order {
            ReduceOrder::LeftmostOutermost => {
                let mut trace = Trace::new(self.clone());
                while trace.len() < max_steps {
                    match trace.last().redexes(strategy).into_iter().next() {
                        Some(r) => trace.steps.push(r),
                        None => {
                            return Reduction {
                                trace,
                                stopped: Termination::NormalForm,
                            }
                        }
                    }
                }
                let stopped = if trace.last().is_normal(strategy) {
                    Termination::NormalForm
                } else {
                    Termination::StepBound
                };
                Reduction { trace, stopped }
            }
            ReduceOrder::AllPathsBfs => bfs_to_normal_form(self, strategy, max_steps),
        }
    }
}

fn bfs_to_normal_form(
    start: &LmSubject,
    strategy: LmStrategy,
    max_steps: usize,
) -> Reduction<LmRule, LmSubject> {
    // canonical form -> (parent key, step that led here)
    let mut seen: BTreeMap<LmSubject, Option<(LmSubject, LmRedex)>> = BTreeMap::new();
    let mut queue = VecDeque::new();
    let key = start.canonical(false);
    seen.insert(key.clone(), None);
    queue.push_back((key, start.clone(), 0usize));
    let mut deepest = None;
    let mut last = None;
    while let Some((key, subject, depth)) = queue.pop_front() {
        last = Some(key.clone());
        let redexes = subject.redexes(strategy);
        if redexes.is_empty() {
            return Reduction {
                trace: rebuild(start, &seen, &key),
                stopped: Termination::NormalForm,
            };
        }
        if depth == max_steps {
            deepest.get_or_insert(key);
            continue;
        }
        for r in redexes {
            let k = r.result.canonical(false);
            if !seen.contains_key(&k) {
                seen.insert(k.clone(), Some((key.clone(), r.clone())));
                queue.push_back((k, r.result, depth + 1));
            }
        }
    }
    // No normal form: either the bound was hit or the reachable graph is a
    // finite set of cycles.
    let end = deepest.or(last).expect("the start state is always visited");
    Reduction {
        trace: rebuild(start, &seen, &end),
        stopped: Termination::StepBound,
    }
}

fn rebuild(
    start: &LmSubject,
    seen: &BTreeMap<LmSubject, Option<(LmSubject, LmRedex)>>,
    end: &LmSubject,
) -> Trace<LmRule, LmSubject> {
    let mut steps = Vec::new();
    let mut key = end;
    while let Some(Some((parent, r))) = seen.get(key) {
        steps.push(r.clone());
        key = parent;
    }
    steps.reverse();
    Trace {
        start: start.clone(),
        steps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn v(x: &str) -> LmTerm {
        LmTerm::var(x)
    }

    fn term(t: LmTerm) -> LmSubject {
        LmSubject::Term(t)
    }

    fn rules(s: &LmSubject, strategy: LmStrategy) -> Vec<LmRule> {
        s.redexes(strategy).into_iter().map(|r| r.rule).collect()
    }

    #[test]
    fn beta_on_variable_argument() {
        let s = term(LmTerm::app(LmTerm::lam("x", v("x")), v("y")));
        let rs = s.redexes(LmStrategy::Free);
        assert_eq!(rs.len(), 1);
        assert_eq!(rs[0].rule, LmRule::Beta);
        assert!(rs[0].position.is_empty());
        assert!(rs[0].linear);
        assert_eq!(rs[0].result, term(v("y")));
    }

    #[test]
    fn mu_prime_wraps_the_function() {
        let s = term(LmTerm::app(v("y"), LmTerm::mu("a", LmCommand::named("a", v("x")))));
        // the μ-abstraction is also a θ-redex on its own
        assert_eq!(rules(&s, LmStrategy::Free), [LmRule::MuPrime, LmRule::Theta]);
        let rs = s.redexes(LmStrategy::Free);
        assert_eq!(rs[0].result.to_string(), "mu 'a.['a]y x");
    }

    #[test]
    fn critical_pair_per_strategy() {
        let t = LmTerm::app(v("t"), v("t"));
        let d = LmCommand::named("g", v("z"));
        let s = term(LmTerm::app(LmTerm::lam("x", t), LmTerm::mu("b", d)));
        assert_eq!(rules(&s, LmStrategy::Free), [LmRule::Beta, LmRule::MuPrime]);
        assert_eq!(rules(&s, LmStrategy::Cbn), [LmRule::Beta]);
        assert_eq!(rules(&s, LmStrategy::Cbv), [LmRule::MuPrime]);
        assert_eq!(rules(&s, LmStrategy::CbvOs), [LmRule::MuPrime]);
    }

    #[test]
    fn cbv_os_restricts_mu_prime_to_values() {
        let m = LmTerm::mu("b", LmCommand::named("c", v("z")));
        let s = term(LmTerm::app(LmTerm::app(v("f"), v("g")), m));
        assert_eq!(rules(&s, LmStrategy::Cbv), [LmRule::MuPrime]);
        assert!(rules(&s, LmStrategy::CbvOs).is_empty());
    }

    #[test]
    fn rho_theta_and_mu() {
        let s = LmSubject::Command(LmCommand::named(
            "b",
            LmTerm::mu("a", LmCommand::named("a", v("x"))),
        ));
        let r = &s.redexes(LmStrategy::Free)[0];
        assert_eq!(r.rule, LmRule::Rho);
        assert_eq!(s.step(r).unwrap().to_string(), "['b]x");

        let s = term(LmTerm::mu("d", LmCommand::named("d", v("x"))));
        let r = &s.redexes(LmStrategy::Free)[0];
        assert_eq!(r.rule, LmRule::Theta);
        assert_eq!(s.step(r).unwrap(), term(v("x")));

        let s = term(LmTerm::app(LmTerm::mu("a", LmCommand::named("a", v("x"))), v("y")));
        let r = &s.redexes(LmStrategy::Free)[0];
        assert_eq!(r.rule, LmRule::Mu);
        assert_eq!(s.step(r).unwrap().to_string(), "mu 'a.['a]x y");
    }

    #[test]
    fn theta_side_condition() {
        let s = term(LmTerm::mu(
            "d",
            LmCommand::named("d", LmTerm::mu("e", LmCommand::named("d", v("x")))),
        ));
        assert!(!rules(&s, LmStrategy::Free).contains(&LmRule::Theta));
    }

    #[test]
    fn mu_renames_binder_free_in_argument() {
        // (μa.[a]x) (μb.[a]y): the argument mentions the outer 'a
        let arg = LmTerm::mu("b", LmCommand::named("a", v("y")));
        let s = term(LmTerm::app(LmTerm::mu("a", LmCommand::named("a", v("x"))), arg));
        let r = s
            .redexes(LmStrategy::Free)
            .into_iter()
            .find(|r| r.rule == LmRule::Mu)
            .unwrap();
        let LmSubject::Term(LmTerm::Mu(a2, _)) = &r.result else { panic!() };
        assert_ne!(a2.as_str(), "a");
        assert!(r.result.free_names().covars.contains(&CoVarName::from("a")));
    }

    #[test]
    fn stale_redex_is_rejected() {
        let s = term(LmTerm::app(LmTerm::lam("x", v("x")), v("y")));
        let r = s.redexes(LmStrategy::Free).remove(0);
        let other = term(v("z"));
        assert!(matches!(other.step(&r), Err(KernelError::StaleRedex { .. })));
    }

    #[test]
    fn reduce_examples() {
        let s = term(LmTerm::app(LmTerm::lam("x", v("x")), v("y")));
        for strategy in [LmStrategy::Free, LmStrategy::Cbn, LmStrategy::Cbv, LmStrategy::CbvOs] {
            let red = s.reduce(strategy, 10, ReduceOrder::LeftmostOutermost);
            assert_eq!(red.trace.len(), 1);
            assert_eq!(*red.trace.last(), term(v("y")));
            assert_eq!(red.stopped, Termination::NormalForm);
        }

        // θ sits at the root, so outermost order fires it before β
        let s = term(LmTerm::mu(
            "d",
            LmCommand::named("d", LmTerm::app(LmTerm::lam("x", v("x")), v("y"))),
        ));
        let red = s.reduce(LmStrategy::Free, 10, ReduceOrder::LeftmostOutermost);
        let fired: Vec<_> = red.trace.steps.iter().map(|r| r.rule).collect();
        assert_eq!(fired, [LmRule::Theta, LmRule::Beta]);
        assert_eq!(*red.trace.last(), term(v("y")));

        let red = term(v("x")).reduce(LmStrategy::Free, 10, ReduceOrder::LeftmostOutermost);
        assert!(red.trace.is_empty());
        assert_eq!(red.stopped, Termination::NormalForm);
    }

    #[test]
    fn step_bound_is_flagged() {
        // Ω
        let w = LmTerm::lam("x", LmTerm::app(v("x"), v("x")));
        let s = term(LmTerm::app(w.clone(), w));
        let red = s.reduce(LmStrategy::Free, 3, ReduceOrder::LeftmostOutermost);
        assert_eq!(red.trace.len(), 3);
        assert_eq!(red.stopped, Termination::StepBound);
        let red = s.reduce(LmStrategy::Free, 3, ReduceOrder::AllPathsBfs);
        assert_eq!(red.stopped, Termination::StepBound);
    }

    #[test]
    fn bfs_finds_a_normal_form() {
        // (λx.z) Ω: leftmost-outermost and BFS both normalise in one step
        let w = LmTerm::lam("x", LmTerm::app(v("x"), v("x")));
        let omega = LmTerm::app(w.clone(), w);
        let s = term(LmTerm::app(LmTerm::lam("y", v("z")), omega));
        let red = s.reduce(LmStrategy::Free, 5, ReduceOrder::AllPathsBfs);
        assert_eq!(red.stopped, Termination::NormalForm);
        assert_eq!(*red.trace.last(), term(v("z")));
    }
}
