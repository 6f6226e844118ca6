//! One-step λ̄μμ̃ reduction under the free, call-by-name and call-by-value
//! strategies, with the optional β' shortcut.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use super::{child, LbCommand, LbContext, LbRef, LbSubject, LbTerm};
use crate::error::KernelError;
use crate::name::Fresh;
use crate::redex::{Position, RedexInfo, ReduceOrder, Reduction, Termination, Trace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LbRule {
    Beta,
    BetaPrime,
    Mu,
    MuTilde,
    Theta,
}

impl LbRule {
    pub fn name(self) -> &'static str {
        match self {
            LbRule::Beta => "beta",
            LbRule::BetaPrime => "beta-prime",
            LbRule::Mu => "mu",
            LbRule::MuTilde => "mu-tilde",
            LbRule::Theta => "theta",
        }
    }
}

impl fmt::Display for LbRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LbStrategy {
    Free,
    /// μ only against stacks; subjects must lie in the T fragment.
    Cbn,
    /// μ̃ only against values; subjects must lie in the Q fragment.
    Cbv,
}

impl LbStrategy {
    pub fn name(self) -> &'static str {
        match self {
            LbStrategy::Free => "free",
            LbStrategy::Cbn => "cbn",
            LbStrategy::Cbv => "cbv",
        }
    }

    /// Is `subject` inside the fragment this strategy is defined on?
    pub fn admits(self, subject: &LbSubject) -> Result<(), KernelError> {
        match self {
            LbStrategy::Free => Ok(()),
            LbStrategy::Cbn if subject.in_t() => Ok(()),
            LbStrategy::Cbv if subject.in_q() => Ok(()),
            LbStrategy::Cbn => Err(KernelError::FragmentViolation {
                fragment: "T",
                strategy: "cbn",
            }),
            LbStrategy::Cbv => Err(KernelError::FragmentViolation {
                fragment: "Q",
                strategy: "cbv",
            }),
        }
    }
}

impl fmt::Display for LbStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl core::str::FromStr for LbStrategy {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "free" => Ok(LbStrategy::Free),
            "cbn" => Ok(LbStrategy::Cbn),
            "cbv" => Ok(LbStrategy::Cbv),
            _ => Err(()),
        }
    }
}

/// A strategy together with the β' toggle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LbMode {
    pub strategy: LbStrategy,
    pub beta_prime: bool,
}

impl LbMode {
    pub fn new(strategy: LbStrategy) -> Self {
        LbMode {
            strategy,
            beta_prime: false,
        }
    }

    pub fn with_beta_prime(strategy: LbStrategy) -> Self {
        LbMode {
            strategy,
            beta_prime: true,
        }
    }
}

impl From<LbStrategy> for LbMode {
    fn from(strategy: LbStrategy) -> Self {
        LbMode::new(strategy)
    }
}

pub type LbRedex = RedexInfo<LbRule, LbSubject>;

struct Local {
    rule: LbRule,
    linear: bool,
    replacement: LbSubject,
}

fn command(s: LbSubject) -> LbCommand {
    match s {
        LbSubject::Command(c) => c,
        _ => unreachable!("substitution preserves the sort"),
    }
}

fn local_redexes(node: LbRef<'_>, mode: LbMode) -> Vec<Local> {
    let mut out = Vec::new();
    match node {
        LbRef::Command(LbCommand { term, context }) => {
            if let (LbTerm::Lam(x, u), LbContext::Cons(v, e)) = (&**term, &**context) {
                // ⟨λx.u|v·e⟩ → ⟨v|μ̃x.⟨u|e⟩⟩, keeping e out of the scope of x
                let (x2, u2) = if e.count_var(x) > 0 {
                    let mut fresh = Fresh::avoiding(
                        &LbSubject::Term((**term).clone())
                            .all_names()
                            .union(&LbSubject::Context((**context).clone()).all_names()),
                    );
                    let x2 = fresh.var(x.as_str());
                    (x2.clone(), u.subst_var(x, &LbTerm::Var(x2)))
                } else {
                    (x.clone(), (**u).clone())
                };
                out.push(Local {
                    rule: LbRule::Beta,
                    linear: true,
                    replacement: LbSubject::Command(LbCommand::cut(
                        (**v).clone(),
                        LbContext::MuTilde(x2, Box::new(LbCommand::cut(u2, (**e).clone()))),
                    )),
                });
                if mode.beta_prime {
                    out.push(Local {
                        rule: LbRule::BetaPrime,
                        linear: matches!(**v, LbTerm::Var(_)) || u.count_var(x) <= 1,
                        replacement: LbSubject::Command(LbCommand::cut(
                            u.subst_var(x, v),
                            (**e).clone(),
                        )),
                    });
                }
            }
            if let LbTerm::Mu(a, c) = &**term {
                if mode.strategy != LbStrategy::Cbn || context.is_stack() {
                    out.push(Local {
                        rule: LbRule::Mu,
                        linear: matches!(**context, LbContext::CoVar(_)) || c.count_covar(a) <= 1,
                        replacement: LbSubject::Command(c.subst_covar(a, context)),
                    });
                }
            }
            if let LbContext::MuTilde(x, c) = &**context {
                if mode.strategy != LbStrategy::Cbv || term.is_value() {
                    out.push(Local {
                        rule: LbRule::MuTilde,
                        linear: matches!(**term, LbTerm::Var(_)) || c.count_var(x) <= 1,
                        replacement: LbSubject::Command(command(
                            LbSubject::Command((**c).clone()).subst_var(x, term),
                        )),
                    });
                }
            }
        }
        LbRef::Term(LbTerm::Mu(d, c)) if matches!(&*c.context, LbContext::CoVar(b) if b == d) && c.term.count_covar(d) == 0 => {
            out.push(Local {
                rule: LbRule::Theta,
                linear: true,
                replacement: LbSubject::Term((*c.term).clone()),
            });
        }
        _ => {}
    }
    out
}

fn collect(
    root: &LbSubject,
    node: LbRef<'_>,
    path: &mut Position,
    mode: LbMode,
    out: &mut Vec<LbRedex>,
) {
    for local in local_redexes(node, mode) {
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
            collect(root, c, path, mode, out);
            path.pop();
        }
    }
}

impl LbSubject {
    /// Every redex the mode permits, outermost first, then left to right.
    /// The call-by-name and call-by-value strategies reject subjects outside
    /// their fragment.
    pub fn redexes(&self, mode: impl Into<LbMode>) -> Result<Vec<LbRedex>, KernelError> {
        let mode = mode.into();
        mode.strategy.admits(self)?;
        Ok(self.redexes_unchecked(mode))
    }

    pub(crate) fn redexes_unchecked(&self, mode: LbMode) -> Vec<LbRedex> {
        let mut out = Vec::new();
        collect(self, self.as_ref(), &mut Vec::new(), mode, &mut out);
        out
    }

    pub fn step(&self, redex: &LbRedex) -> Result<LbSubject, KernelError> {
        let stale = || KernelError::StaleRedex {
            rule: redex.rule.name().to_string(),
            position: redex.position.clone(),
        };
        let mut node = self.as_ref();
        for &i in &redex.position {
            node = child(node, i).ok_or_else(stale)?;
        }
        let local = local_redexes(node, LbMode::with_beta_prime(LbStrategy::Free))
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

    pub fn reduce(
        &self,
        mode: impl Into<LbMode>,
        max_steps: usize,
        order: ReduceOrder,
    ) -> Result<Reduction<LbRule, LbSubject>, KernelError> {
        let mode = mode.into();
        mode.strategy.admits(self)?;
        Ok(match order {
            ReduceOrder::LeftmostOutermost => {
                let mut trace = Trace::new(self.clone());
                loop {
                    let next = trace.last().redexes_unchecked(mode).into_iter().next();
                    match next {
                        None => {
                            break Reduction {
                                trace,
                                stopped: Termination::NormalForm,
                            }
                        }
                        Some(_) if trace.len() == max_steps => {
                            break Reduction {
                                trace,
                                stopped: Termination::StepBound,
                            }
                        }
                        Some(r) => trace.steps.push(r),
                    }
                }
            }
            ReduceOrder::AllPathsBfs => bfs_to_normal_form(self, mode, max_steps),
        })
    }
}

fn bfs_to_normal_form(start: &LbSubject, mode: LbMode, max_steps: usize) -> Reduction<LbRule, LbSubject> {
    let mut seen: BTreeMap<LbSubject, Option<(LbSubject, LbRedex)>> = BTreeMap::new();
    let mut queue = VecDeque::new();
    let key = start.canonical(false);
    seen.insert(key.clone(), None);
    queue.push_back((key, start.clone(), 0usize));
    let mut deepest = None;
    let mut last = None;
    while let Some((key, subject, depth)) = queue.pop_front() {
        last = Some(key.clone());
        let redexes = subject.redexes_unchecked(mode);
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
    let end = deepest.or(last).expect("the start state is always visited");
    Reduction {
        trace: rebuild(start, &seen, &end),
        stopped: Termination::StepBound,
    }
}

fn rebuild(
    start: &LbSubject,
    seen: &BTreeMap<LbSubject, Option<(LbSubject, LbRedex)>>,
    end: &LbSubject,
) -> Trace<LbRule, LbSubject> {
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

    fn v(x: &str) -> LbTerm {
        LbTerm::var(x)
    }

    fn critical_pair() -> LbSubject {
        LbSubject::Command(LbCommand::cut(
            LbTerm::mu(
                "a",
                LbCommand::cut(v("x"), LbContext::cons(v("y"), LbContext::covar("a"))),
            ),
            LbContext::mu_tilde(
                "x",
                LbCommand::cut(v("z"), LbContext::cons(v("x"), LbContext::covar("b"))),
            ),
        ))
    }

    fn rules(s: &LbSubject, mode: impl Into<LbMode>) -> Vec<LbRule> {
        s.redexes(mode).unwrap().into_iter().map(|r| r.rule).collect()
    }

    #[test]
    fn critical_pair_per_strategy() {
        let s = critical_pair();
        assert_eq!(rules(&s, LbStrategy::Free), [LbRule::Mu, LbRule::MuTilde]);
        assert_eq!(rules(&s, LbStrategy::Cbn), [LbRule::MuTilde]);
        assert_eq!(rules(&s, LbStrategy::Cbv), [LbRule::Mu]);

        let rs = s.redexes(LbStrategy::Free).unwrap();
        assert_eq!(rs[0].result.to_string(), "<x|y*mt x.<z|x*'b>>");
        assert_eq!(rs[1].result.to_string(), "<z|mu 'a.<x|y*'a>*'b>");
    }

    #[test]
    fn beta_and_beta_prime() {
        let s = LbSubject::Command(LbCommand::cut(
            LbTerm::lam("x", v("x")),
            LbContext::cons(v("y"), LbContext::covar("a")),
        ));
        let rs = s.redexes(LbMode::with_beta_prime(LbStrategy::Free)).unwrap();
        assert_eq!(rs.len(), 2);
        assert_eq!((rs[0].rule, rs[0].result.to_string().as_str()), (LbRule::Beta, "<y|mt x.<x|'a>>"));
        assert_eq!((rs[1].rule, rs[1].result.to_string().as_str()), (LbRule::BetaPrime, "<y|'a>"));
        assert!(rs.iter().all(|r| r.linear));
        assert_eq!(rules(&s, LbStrategy::Free), [LbRule::Beta]);
    }

    #[test]
    fn beta_renames_the_binder_away_from_the_stack() {
        // ⟨λx.x|y·(μ̃z.⟨x|α⟩)⟩: the tail mentions a free x
        let tail = LbContext::mu_tilde("z", LbCommand::cut(v("x"), LbContext::covar("a")));
        let s = LbSubject::Command(LbCommand::cut(
            LbTerm::lam("x", v("x")),
            LbContext::cons(v("y"), tail),
        ));
        let r = &s.redexes(LbStrategy::Free).unwrap()[0];
        let fv = r.result.free_names();
        assert!(fv.vars.contains(&"x".into()));
        assert!(fv.vars.contains(&"y".into()));
    }

    #[test]
    fn fragment_violations_are_reported() {
        let m = LbTerm::mu("a", LbCommand::cut(v("x"), LbContext::covar("a")));
        let s = LbSubject::Command(LbCommand::cut(v("x"), LbContext::cons(m, LbContext::covar("b"))));
        assert!(matches!(
            s.redexes(LbStrategy::Cbv),
            Err(KernelError::FragmentViolation { fragment: "Q", .. })
        ));
        let e = LbContext::cons(
            v("y"),
            LbContext::mu_tilde("x", LbCommand::cut(v("x"), LbContext::covar("a"))),
        );
        let s = LbSubject::Command(LbCommand::cut(v("x"), e));
        assert!(matches!(
            s.redexes(LbStrategy::Cbn),
            Err(KernelError::FragmentViolation { fragment: "T", .. })
        ));
    }

    #[test]
    fn theta_and_mu_against_a_covariable() {
        let s = LbSubject::Term(LbTerm::mu("d", LbCommand::cut(v("x"), LbContext::covar("d"))));
        let r = &s.redexes(LbStrategy::Free).unwrap()[0];
        assert_eq!(r.rule, LbRule::Theta);
        assert_eq!(s.step(r).unwrap(), LbSubject::Term(v("x")));

        let c = LbCommand::cut(v("x"), LbContext::cons(v("y"), LbContext::covar("a")));
        let s = LbSubject::Command(LbCommand::cut(LbTerm::mu("a", c.clone()), LbContext::covar("b")));
        let r = &s.redexes(LbStrategy::Free).unwrap()[0];
        assert_eq!(r.rule, LbRule::Mu);
        assert_eq!(
            r.result,
            LbSubject::Command(c).subst_covar(&"a".into(), &LbContext::covar("b"))
        );
    }

    #[test]
    fn reduction_reports_fragment_and_bound() {
        let s = critical_pair();
        let red = s.reduce(LbStrategy::Cbn, 10, ReduceOrder::LeftmostOutermost).unwrap();
        assert_eq!(red.stopped, Termination::NormalForm);
        assert_eq!(red.trace.last().to_string(), "<z|mu 'a.<x|y*'a>*'b>");
        let red = s.reduce(LbStrategy::Cbv, 10, ReduceOrder::AllPathsBfs).unwrap();
        assert_eq!(red.trace.last().to_string(), "<x|y*mt x.<z|x*'b>>");
        let red = s.reduce(LbStrategy::Free, 0, ReduceOrder::LeftmostOutermost).unwrap();
        assert_eq!(red.stopped, Termination::StepBound);
    }
}
