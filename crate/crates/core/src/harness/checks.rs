//! The property checks. Each returns a report whose `holds` verdict carries
//! witness traces that have been replayed through the kernels.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::report::{CheckReport, Status};
use super::search::{closure, find_path, meet, replay, Calculus, Limits, Lm, Lmm, Relation};
use crate::error::KernelError;
use crate::lm::{LmCommand, LmContext, LmRule, LmStrategy, LmSubject, LmTerm};
use crate::lmm::{LbCommand, LbContext, LbMode, LbRule, LbStrategy, LbSubject, LbTerm};
use crate::name::{CoVarName, Fresh, NameSet, VarName};
use crate::redex::Trace;
use crate::translate::{circ, circ_with, dag, dag_with};
use crate::typing::{check_cut_rule, check_lm, check_lmm, infer_lm, infer_lmm, CutError, SimpleType, TypeError};

/// Depth bound for searches over the full (possibly non-terminating)
/// relation.
pub fn default_limits(size: usize) -> Limits {
    Limits::depth(2 * size + 8)
}

/// The λμ strategy matching a λ̄μμ̃ one.
pub fn lm_strategy(s: LbStrategy) -> LmStrategy {
    match s {
        LbStrategy::Free => LmStrategy::Free,
        LbStrategy::Cbn => LmStrategy::Cbn,
        LbStrategy::Cbv => LmStrategy::Cbv,
    }
}

/// The λ̄μμ̃ strategy simulating a λμ one; `None` for `cbv-os`.
pub fn lb_strategy(s: LmStrategy) -> Option<LbStrategy> {
    match s {
        LmStrategy::Free => Some(LbStrategy::Free),
        LmStrategy::Cbn => Some(LbStrategy::Cbn),
        LmStrategy::Cbv => Some(LbStrategy::Cbv),
        LmStrategy::CbvOs => None,
    }
}

/// Replay `trace` and confirm it ends on `target`.
fn verified<C: Calculus>(rep: &mut CheckReport, trace: &Trace<C::Rule, C::Subject>, target: &C::Subject, junk: bool) -> bool {
    match replay::<C>(trace) {
        Ok(end) if C::canonical(&end, junk) == C::canonical(target, junk) => true,
        Ok(end) => {
            rep.fail(Status::Falsified, format!("witness replays to {} instead", end));
            false
        }
        Err(e) => {
            rep.fail(Status::Falsified, format!("witness does not replay: {}", e));
            false
        }
    }
}

/// Path search with one retry at doubled bounds. A search that exhausts the
/// reachable set without finding `target` is a definite failure.
fn reach<C: Calculus>(
    rep: &mut CheckReport,
    start: &C::Subject,
    target: &C::Subject,
    rel: Relation<C::Mode>,
    limits: Limits,
    junk: bool,
) -> Option<Trace<C::Rule, C::Subject>> {
    let mut limits = limits;
    for retry in [true, false] {
        let found = find_path::<C>(start, target, rel, limits, junk);
        rep.record_search(&found.stats);
        if let Some(trace) = found.trace {
            if verified::<C>(rep, &trace, target, junk) {
                rep.push_trace(&trace);
                return Some(trace);
            }
            return None;
        }
        if !found.stats.truncated {
            rep.fail(
                Status::Falsified,
                format!("{} is unreachable ({} states explored)", target, found.stats.states),
            );
            return None;
        }
        if retry {
            limits = limits.doubled();
        }
    }
    rep.fail(
        Status::Inconclusive,
        format!("no path to {} within depth {:?}, {} states", target, limits.max_depth, limits.max_states),
    );
    None
}

fn exact(rep: &mut CheckReport, what: &str, lhs: &dyn core::fmt::Display, rhs: &dyn core::fmt::Display, equal: bool) {
    if equal {
        rep.note(format!("{}: {} = {}", what, lhs, rhs));
    } else {
        rep.fail(Status::Falsified, format!("{}: {} ≠ {}", what, lhs, rhs));
    }
}

// ---- the translations are inverse up to linear reduction ----

/// `circ(dag(t)) ⊸* t`.
pub fn check_thm1(t: &LmSubject) -> CheckReport {
    let mut rep = CheckReport::new("thm1", t);
    let back = circ(&dag(t));
    reach::<Lm>(&mut rep, &back, t, Relation::linear(LmStrategy::Free), Limits::unbounded(), false);
    rep
}

/// `dag(circ(t)) ⊸* t`.
pub fn check_thm2(t: &LbSubject) -> CheckReport {
    let mut rep = CheckReport::new("thm2", t);
    let back = dag(&circ(t));
    reach::<Lmm>(&mut rep, &back, t, Relation::linear(LbMode::new(LbStrategy::Free)), Limits::unbounded(), false);
    rep
}

/// `∃w. a ⊸* w ∧ b ⊸* w`, a sufficient condition for `a ≈ b`.
pub fn linear_convertible<C: Calculus>(a: &C::Subject, b: &C::Subject, mode: C::Mode, junk: bool) -> CheckReport {
    let mut rep = CheckReport::new("linear-convertible", format!("{} ~ {}", a, b));
    let found = meet::<C>(a, Relation::linear(mode), b, Relation::linear(mode), Limits::unbounded(), junk);
    rep.record_search(&found.stats);
    match found.traces {
        Some((left, right)) => {
            let ok = verified::<C>(&mut rep, &left, right.last(), junk) && verified::<C>(&mut rep, &right, left.last(), junk);
            if ok {
                rep.push_trace(&left);
                rep.push_trace(&right);
            }
        }
        // joinability is not necessary for convertibility
        None => rep.fail(Status::Inconclusive, "no common linear reduct"),
    }
    rep
}

// ---- simulations ----

/// Each one-step `strategy` reduct `t → v` is simulated: `dag(t) →* u`
/// under the matching λ̄μμ̃ strategy with `dag(v) ⊸* u`.
pub fn check_thm4(t: &LmSubject, strategy: LmStrategy) -> CheckReport {
    let mut rep = CheckReport::new("thm4", t);
    let Some(lb) = lb_strategy(strategy) else {
        rep.fail(Status::Falsified, format!("no λ̄μμ̃ counterpart for {}", strategy));
        return rep;
    };
    let mode = LbMode::new(lb);
    let fresh = Fresh::avoiding(&t.all_names());
    for r in t.redexes(strategy) {
        let mut f = fresh.clone();
        let a = dag_with(t, &mut f);
        let b = dag_with(&r.result, &mut f);
        let mut limits = default_limits(t.size());
        let mut sub = CheckReport::new("thm4", t);
        for retry in [true, false] {
            let found = meet::<Lmm>(&a, Relation::full(mode), &b, Relation::linear(mode), limits, false);
            sub.record_search(&found.stats);
            if let Some((left, right)) = found.traces {
                if right.steps.iter().any(|s| !s.linear) {
                    sub.fail(Status::Falsified, "the dag(v) side of the join is not linear");
                }
                let ok = verified::<Lmm>(&mut sub, &left, right.last(), false)
                    && verified::<Lmm>(&mut sub, &right, left.last(), false);
                if ok {
                    sub.push_trace(&left);
                    sub.push_trace(&right);
                    sub.note(format!(
                        "{} at {:?}: dag(t) →* u in {} steps, dag(v) ⊸* u in {} (the stated form)",
                        r.rule,
                        r.position,
                        left.len(),
                        right.len()
                    ));
                }
                break;
            }
            if retry && found.stats.truncated {
                limits = limits.doubled();
                continue;
            }
            // a failed join says nothing definite about ≈
            sub.fail(Status::Inconclusive, format!("{} at {:?}: no join found", r.rule, r.position));
            break;
        }
        rep.absorb(sub);
    }
    rep
}

/// Each one-step reduct `t → v` (β' but not plain β) is simulated:
/// `circ(t) →* u ⊸* circ(v)` under the matching λμ strategy.
pub fn check_thm5(t: &LbSubject, strategy: LbStrategy) -> Result<CheckReport, KernelError> {
    let mut rep = CheckReport::new("thm5", t);
    let lm = lm_strategy(strategy);
    for r in t.redexes(LbMode::with_beta_prime(strategy))? {
        if r.rule == LbRule::Beta {
            continue;
        }
        let mut sub = CheckReport::new("thm5", t);
        let from = circ(t);
        let to = circ(&r.result);
        if let Some(trace) = reach::<Lm>(&mut sub, &from, &to, Relation::full(lm), default_limits(t.size()), true) {
            let suffix = trace.steps.iter().rev().take_while(|s| s.linear).count();
            sub.note(format!(
                "{} at {:?}: circ(t) →* u in {} steps, u ⊸* circ(v) in {}",
                r.rule,
                r.position,
                trace.len() - suffix,
                suffix
            ));
        }
        rep.absorb(sub);
    }
    Ok(rep)
}

// ---- substitution and plugging lemmas ----

/// `e⟨μα.c⟩ →* c[α:=e]` under `strategy`.
pub fn check_lemma2(e: &LmContext, a: &CoVarName, c: &LmCommand, strategy: LmStrategy, limits: Option<Limits>) -> CheckReport {
    let redex = LmTerm::Mu(a.clone(), alloc::boxed::Box::new(c.clone()));
    let start = LmSubject::Command(e.plug(redex));
    let mut rep = CheckReport::new("lemma2", format!("{} ; {} ; {} ; {}", e, a, c, strategy));
    let target = LmSubject::Command(c.subst_covar(a, e));
    let limits = limits.unwrap_or(Limits::depth(e.size() + 2));
    reach::<Lm>(&mut rep, &start, &target, Relation::full(strategy), limits, false);
    rep
}

/// The application spine `t0 t1 … tn`.
fn spine(ts: &[LmTerm]) -> LmTerm {
    let mut it = ts.iter().cloned();
    let head = it.next().expect("non-empty spine");
    it.fold(head, |f, a| LmTerm::App(alloc::boxed::Box::new(f), alloc::boxed::Box::new(a)))
}

/// `⟨(t0 … tn)†|e⟩ ⊸* ⟨t0†|t1†·…·tn†·e⟩`.
pub fn check_lemma5(ts: &[LmTerm], e: &LbContext) -> CheckReport {
    let app = spine(ts);
    let mut rep = CheckReport::new("lemma5", format!("{} ; {}", app, e));
    let mut names = LmSubject::Term(app.clone()).all_names();
    names.extend(&LbSubject::Context(e.clone()).all_names());
    let mut fresh = Fresh::avoiding(&names);
    let dagged: Vec<LbTerm> = ts.iter().map(|t| dag_term(t, &mut fresh)).collect();
    let start = LbSubject::Command(LbCommand::cut(dag_term(&app, &mut fresh), e.clone()));
    let stack = dagged[1..]
        .iter()
        .rev()
        .fold(e.clone(), |acc, t| LbContext::Cons(alloc::boxed::Box::new(t.clone()), alloc::boxed::Box::new(acc)));
    let target = LbSubject::Command(LbCommand::cut(dagged[0].clone(), stack));
    reach::<Lmm>(&mut rep, &start, &target, Relation::linear(LbMode::new(LbStrategy::Free)), Limits::unbounded(), false);
    rep
}

/// `(e⟨t⟩)† ⊸* ⟨t†|e†⟩`.
pub fn check_lemma6(e: &LmContext, t: &LmTerm) -> CheckReport {
    let mut rep = CheckReport::new("lemma6", format!("{} ; {}", e, t));
    let mut names = LmSubject::Context(e.clone()).all_names();
    names.extend(&LmSubject::Term(t.clone()).all_names());
    let mut fresh = Fresh::avoiding(&names);
    let start = dag_with(&LmSubject::Command(e.plug(t.clone())), &mut fresh);
    let LbSubject::Context(de) = dag_with(&LmSubject::Context(e.clone()), &mut fresh) else { unreachable!() };
    let target = LbSubject::Command(LbCommand::cut(dag_term(t, &mut fresh), de));
    reach::<Lmm>(&mut rep, &start, &target, Relation::linear(LbMode::new(LbStrategy::Free)), Limits::unbounded(), false);
    rep
}

fn dag_term(t: &LmTerm, fresh: &mut Fresh) -> LbTerm {
    match dag_with(&LmSubject::Term(t.clone()), fresh) {
        LbSubject::Term(t) => t,
        _ => unreachable!(),
    }
}

fn dag_context(e: &LmContext, fresh: &mut Fresh) -> LbContext {
    match dag_with(&LmSubject::Context(e.clone()), fresh) {
        LbSubject::Context(e) => e,
        _ => unreachable!(),
    }
}

fn names_of(parts: &[&LmSubject]) -> NameSet {
    parts.iter().fold(NameSet::new(), |acc, s| acc.union(&s.all_names()))
}

/// `(t[x:=u])† = t†[x:=u†]`.
pub fn check_lemma7(t: &LmSubject, x: &VarName, u: &LmTerm) -> CheckReport {
    let mut rep = CheckReport::new("lemma7", format!("{} ; {} := {}", t, x, u));
    let lhs = dag(&t.subst_var(x, u));
    let mut fresh = Fresh::avoiding(&names_of(&[t, &LmSubject::Term(u.clone())]));
    let rhs = dag_with(t, &mut fresh).subst_var(x, &dag_term(u, &mut fresh));
    exact(&mut rep, "dag", &lhs, &rhs, lhs.alpha_eq(&rhs));
    rep
}

/// `dag(t[α:=e]) ⊸* dag(t)[α:=dag(e)]`, for `e` of the μ or μ' shape.
fn check_structural(name: &str, t: &LmSubject, a: &CoVarName, e: &LmContext) -> CheckReport {
    let mut rep = CheckReport::new(name, format!("{} ; {} := {}", t, a, e));
    let substituted = match t.subst_covar(a, e) {
        Ok(s) => s,
        Err(err) => {
            rep.fail(Status::Falsified, err);
            return rep;
        }
    };
    let mut fresh = Fresh::avoiding(&names_of(&[t, &substituted, &LmSubject::Context(e.clone())]));
    let start = dag_with(&substituted, &mut fresh);
    let target = dag_with(t, &mut fresh).subst_covar(a, &dag_context(e, &mut fresh));
    reach::<Lmm>(&mut rep, &start, &target, Relation::linear(LbMode::new(LbStrategy::Free)), Limits::unbounded(), false);
    rep
}

/// `dag(t[α:=α@u]) ⊸* dag(t)[α:=u†·α]`.
pub fn check_lemma8(t: &LmSubject, a: &CoVarName, u: &LmTerm) -> CheckReport {
    let e = LmContext::ArgStack(alloc::boxed::Box::new(LmContext::CoVar(a.clone())), alloc::boxed::Box::new(u.clone()));
    check_structural("lemma8", t, a, &e)
}

/// `dag(t[α:=[α](u #)]) ⊸* dag(t)[α:=μ̃y.⟨u†|y·α⟩]`.
pub fn check_lemma9(t: &LmSubject, a: &CoVarName, u: &LmTerm) -> CheckReport {
    let e = LmContext::AppTo(alloc::boxed::Box::new(u.clone()), a.clone());
    check_structural("lemma9", t, a, &e)
}

/// `(t[α:=β])† = t†[α:=β]`.
pub fn check_lemma10(t: &LmSubject, a: &CoVarName, b: &CoVarName) -> CheckReport {
    let mut rep = CheckReport::new("lemma10", format!("{} ; {} := {}", t, a, b));
    let renamed = t.subst_covar(a, &LmContext::CoVar(b.clone())).expect("renaming is always representable");
    let lhs = dag(&renamed);
    let rhs = dag(t).subst_covar(a, &LbContext::CoVar(b.clone()));
    exact(&mut rep, "dag", &lhs, &rhs, lhs.alpha_eq(&rhs));
    rep
}

/// `(t[x:=u])∘ = t∘[x:=u∘]`, up to the names of reserved covariables.
pub fn check_lemma11(t: &LbSubject, x: &VarName, u: &LbTerm) -> CheckReport {
    let mut rep = CheckReport::new("lemma11", format!("{} ; {} := {}", t, x, u));
    let lhs = circ(&t.subst_var(x, u));
    let mut fresh = Fresh::avoiding(&t.all_names().union(&LbSubject::Term(u.clone()).all_names()));
    let LmSubject::Term(cu) = circ_with(&LbSubject::Term(u.clone()), &mut fresh) else { unreachable!() };
    let rhs = circ_with(t, &mut fresh).subst_var(x, &cu);
    exact(&mut rep, "circ", &lhs, &rhs, lhs.alpha_eq_modulo_reserved(&rhs));
    rep
}

/// `(t[α:=h])∘ = t∘[α:=h∘]`, up to the names of reserved covariables.
pub fn check_lemma12(t: &LbSubject, a: &CoVarName, h: &LbContext) -> CheckReport {
    let mut rep = CheckReport::new("lemma12", format!("{} ; {} := {}", t, a, h));
    let lhs = circ(&t.subst_covar(a, h));
    let mut fresh = Fresh::avoiding(&t.all_names().union(&LbSubject::Context(h.clone()).all_names()));
    let LmSubject::Context(ch) = circ_with(&LbSubject::Context(h.clone()), &mut fresh) else { unreachable!() };
    match circ_with(t, &mut fresh).subst_covar(a, &ch) {
        Ok(rhs) => exact(&mut rep, "circ", &lhs, &rhs, lhs.alpha_eq_modulo_reserved(&rhs)),
        Err(err) => rep.fail(Status::Falsified, err),
    }
    rep
}

// ---- types ----

/// The cut rule is admissible for plugging.
pub fn check_lemma1(t: &LmTerm, e: &LmContext) -> Result<CheckReport, CutError> {
    let d = check_cut_rule(t, e)?;
    let mut rep = CheckReport::new("lemma1", format!("{} ; {}", t, e));
    let plugged = d.plugged.to_string();
    if d.holds {
        rep.note(d.conclusion.render(&plugged));
    } else {
        rep.fail(Status::Falsified, format!("{} does not derive {}", plugged, d.conclusion.render(&plugged)));
    }
    Ok(rep)
}

/// `dag` preserves the principal sequent.
pub fn check_lemma3(t: &LmSubject) -> Result<CheckReport, TypeError> {
    let p = infer_lm(t)?;
    let mut rep = CheckReport::new("lemma3", t);
    let d = dag(t);
    let shown = d.to_string();
    if check_lmm(&d, &p) {
        rep.note(p.render(&shown));
    } else {
        rep.fail(Status::Falsified, format!("{} does not check against {}", shown, p.render(&shown)));
    }
    Ok(rep)
}

/// `circ` preserves the principal sequent; the reserved covariables it
/// introduces get fresh types.
pub fn check_lemma4(t: &LbSubject) -> Result<CheckReport, TypeError> {
    let mut p = infer_lmm(t)?;
    let mut rep = CheckReport::new("lemma4", t);
    let c = circ(t);
    for (i, k) in c.free_names().covars.into_iter().filter(|k| k.is_reserved()).enumerate() {
        p.delta.entry(k).or_insert_with(|| SimpleType::var(&format!("K{}", i)));
    }
    let shown = c.to_string();
    if check_lm(&c, &p) {
        rep.note(p.render(&shown));
    } else {
        rep.fail(Status::Falsified, format!("{} does not check against {}", shown, p.render(&shown)));
    }
    Ok(rep)
}

/// Random free steps keep the principal sequent of the start.
pub fn check_subject_reduction_lm(t: &LmSubject, steps: usize, seed: u64) -> Result<CheckReport, TypeError> {
    let p = infer_lm(t)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = CheckReport::new("subject-reduction", t);
    let mut trace = Trace::<LmRule, LmSubject>::new(t.clone());
    for _ in 0..steps {
        let rs = trace.last().redexes(LmStrategy::Free);
        if rs.is_empty() {
            break;
        }
        let r = rs[rng.gen_range(0..rs.len())].clone();
        trace.steps.push(r);
        if !check_lm(trace.last(), &p) {
            rep.fail(Status::Falsified, format!("{} loses {}", trace.last(), p.render(&t.to_string())));
            break;
        }
    }
    audit_trace::<Lm>(&mut rep, &trace);
    rep.push_trace(&trace);
    Ok(rep)
}

pub fn check_subject_reduction_lmm(t: &LbSubject, steps: usize, seed: u64) -> Result<CheckReport, TypeError> {
    let p = infer_lmm(t)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = CheckReport::new("subject-reduction", t);
    let mut trace = Trace::<LbRule, LbSubject>::new(t.clone());
    for _ in 0..steps {
        let rs = trace.last().redexes(LbStrategy::Free).expect("free admits every subject");
        if rs.is_empty() {
            break;
        }
        let r = rs[rng.gen_range(0..rs.len())].clone();
        trace.steps.push(r);
        if !check_lmm(trace.last(), &p) {
            rep.fail(Status::Falsified, format!("{} loses {}", trace.last(), p.render(&t.to_string())));
            break;
        }
    }
    audit_trace::<Lmm>(&mut rep, &trace);
    rep.push_trace(&trace);
    Ok(rep)
}

fn audit_trace<C: Calculus>(rep: &mut CheckReport, trace: &Trace<C::Rule, C::Subject>) {
    let mut before = &trace.start;
    for r in &trace.steps {
        if r.linear {
            rep.audit.record(&C::measure(before), &C::measure(&r.result));
        }
        before = &r.result;
    }
    let _ = verified::<C>(rep, trace, trace.last(), false);
}

// ---- non-confluence ----

/// The critical pair `⟨μα.⟨x|y·α⟩|μ̃x.⟨z|x·β⟩⟩`.
pub fn critical_pair() -> LbCommand {
    LbCommand::cut(
        LbTerm::mu("a", LbCommand::cut(LbTerm::var("x"), LbContext::cons(LbTerm::var("y"), LbContext::covar("a")))),
        LbContext::mu_tilde("x", LbCommand::cut(LbTerm::var("z"), LbContext::cons(LbTerm::var("x"), LbContext::covar("b")))),
    )
}

/// Its two normal forms: the μ-first and the μ̃-first outcome.
pub fn critical_pair_normal_forms() -> [LbCommand; 2] {
    [
        LbCommand::cut(
            LbTerm::var("x"),
            LbContext::cons(
                LbTerm::var("y"),
                LbContext::mu_tilde("x", LbCommand::cut(LbTerm::var("z"), LbContext::cons(LbTerm::var("x"), LbContext::covar("b")))),
            ),
        ),
        LbCommand::cut(
            LbTerm::var("z"),
            LbContext::cons(
                LbTerm::mu("a", LbCommand::cut(LbTerm::var("x"), LbContext::cons(LbTerm::var("y"), LbContext::covar("a")))),
                LbContext::covar("b"),
            ),
        ),
    ]
}

/// Exhaustive free reduction of `c` reaches exactly `expected` as normal
/// forms.
pub fn check_nonconfluence(c: &LbCommand, expected: &[LbCommand]) -> CheckReport {
    let start = LbSubject::Command(c.clone());
    let mut rep = CheckReport::new("nonconfluence", &start);
    let mode = LbMode::new(LbStrategy::Free);
    let ex = closure::<Lmm>(&start, Relation::full(mode), Limits::unbounded(), false);
    rep.record_search(&ex.stats);
    if ex.stats.truncated {
        rep.fail(Status::Inconclusive, "reduction graph too large");
        return rep;
    }
    let normal: Vec<LbSubject> = ex
        .subjects()
        .filter(|s| s.redexes(mode).is_ok_and(|rs| rs.is_empty()))
        .cloned()
        .collect();
    let expected: Vec<LbSubject> = expected.iter().cloned().map(LbSubject::Command).collect();
    let found: BTreeSet<LbSubject> = normal.iter().map(|s| s.canonical(false)).collect();
    let wanted: BTreeSet<LbSubject> = expected.iter().map(|s| s.canonical(false)).collect();
    for nf in &normal {
        let trace = ex.trace_to_subject(nf).expect("explored");
        if verified::<Lmm>(&mut rep, &trace, nf, false) {
            rep.push_trace(&trace);
        }
        rep.note(format!("normal form: {}", nf));
    }
    if found != wanted {
        rep.fail(
            Status::Falsified,
            format!("expected normal forms {:?}", expected.iter().map(|s| s.to_string()).collect::<Vec<_>>()),
        );
    }
    rep
}
