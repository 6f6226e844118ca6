//! Simple types for both calculi: principal-sequent inference by
//! unification, sequent checking, and the derived cut rule of λμ.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::lm::{LmCommand, LmContext, LmSubject, LmTerm};
use crate::lmm::{LbCommand, LbContext, LbSubject, LbTerm};
use crate::name::{CoVarName, VarName};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SimpleType {
    Var(String),
    Arrow(Box<SimpleType>, Box<SimpleType>),
}

impl SimpleType {
    pub fn var(name: &str) -> Self {
        SimpleType::Var(name.into())
    }

    pub fn arrow(a: SimpleType, b: SimpleType) -> Self {
        SimpleType::Arrow(Box::new(a), Box::new(b))
    }

    fn occurs(&self, v: &str) -> bool {
        match self {
            SimpleType::Var(w) => w == v,
            SimpleType::Arrow(a, b) => a.occurs(v) || b.occurs(v),
        }
    }

    fn vars_in_order<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            SimpleType::Var(v) => {
                if !out.contains(&v.as_str()) {
                    out.push(v);
                }
            }
            SimpleType::Arrow(a, b) => {
                a.vars_in_order(out);
                b.vars_in_order(out);
            }
        }
    }

    fn rename(&self, map: &BTreeMap<&str, String>) -> SimpleType {
        match self {
            SimpleType::Var(v) => SimpleType::Var(map.get(v.as_str()).cloned().unwrap_or_else(|| v.clone())),
            SimpleType::Arrow(a, b) => SimpleType::arrow(a.rename(map), b.rename(map)),
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleType::Var(v) => f.write_str(v),
            SimpleType::Arrow(a, b) => match **a {
                SimpleType::Arrow(..) => write!(f, "({})->{}", a, b),
                SimpleType::Var(_) => write!(f, "{}->{}", a, b),
            },
        }
    }
}

/// Which of the three judgement forms a sequent is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SequentForm {
    /// `Γ ⊢ t : T | Δ`
    Term(SimpleType),
    /// `c : (Γ ⊢ Δ)`
    Command,
    /// `Γ | e : T ⊢ Δ`
    Context(SimpleType),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequent {
    pub gamma: BTreeMap<VarName, SimpleType>,
    pub form: SequentForm,
    pub delta: BTreeMap<CoVarName, SimpleType>,
}

impl Sequent {
    /// The active type of term and context sequents.
    pub fn active(&self) -> Option<&SimpleType> {
        match &self.form {
            SequentForm::Term(t) | SequentForm::Context(t) => Some(t),
            SequentForm::Command => None,
        }
    }

    /// Type variables in reading order: Γ, the active type, then Δ.
    fn vars_in_order(&self) -> Vec<&str> {
        let mut out = Vec::new();
        for t in self.gamma.values() {
            t.vars_in_order(&mut out);
        }
        if let Some(t) = self.active() {
            t.vars_in_order(&mut out);
        }
        for t in self.delta.values() {
            t.vars_in_order(&mut out);
        }
        out
    }

    fn rename_vars(&self, map: &BTreeMap<&str, String>) -> Sequent {
        Sequent {
            gamma: self.gamma.iter().map(|(x, t)| (x.clone(), t.rename(map))).collect(),
            form: match &self.form {
                SequentForm::Term(t) => SequentForm::Term(t.rename(map)),
                SequentForm::Command => SequentForm::Command,
                SequentForm::Context(t) => SequentForm::Context(t.rename(map)),
            },
            delta: self.delta.iter().map(|(a, t)| (a.clone(), t.rename(map))).collect(),
        }
    }

    /// Rename type variables `X0, X1, …` in reading order.
    fn normalized(&self) -> Sequent {
        let map = self
            .vars_in_order()
            .into_iter()
            .enumerate()
            .map(|(i, v)| (v, format!("X{}", i)))
            .collect();
        self.rename_vars(&map)
    }

    /// Concrete text with `subject` in the subject slot and type variables
    /// renamed `A, B, …` in reading order.
    pub fn render(&self, subject: &str) -> String {
        let map = self
            .vars_in_order()
            .into_iter()
            .enumerate()
            .map(|(i, v)| (v, display_name(i)))
            .collect();
        let s = self.rename_vars(&map);
        let gamma = s
            .gamma
            .iter()
            .map(|(x, t)| format!("{}:{}", x, t))
            .collect::<Vec<_>>()
            .join(", ");
        let delta = s
            .delta
            .iter()
            .map(|(a, t)| format!("{}:{}", a, t))
            .collect::<Vec<_>>()
            .join(", ");
        let turnstile = |left: &str| if left.is_empty() { String::from("|-") } else { format!("{} |-", left) };
        let tail = |right: &str| if right.is_empty() { String::new() } else { format!(" {}", right) };
        match &s.form {
            SequentForm::Term(t) => {
                let delta = if delta.is_empty() { String::new() } else { format!(" | {}", delta) };
                format!("{} {} : {}{}", turnstile(&gamma), subject, t, delta)
            }
            SequentForm::Command => format!("{} : ({}{})", subject, turnstile(&gamma), tail(&delta)),
            SequentForm::Context(t) => {
                let left = if gamma.is_empty() { String::from("|") } else { format!("{} |", gamma) };
                format!("{} {} : {} |-{}", left, subject, t, tail(&delta))
            }
        }
    }

    /// Does some instance of `self`, weakened, give `claimed`? The type
    /// variables of `claimed` are rigid.
    pub fn subsumes(&self, claimed: &Sequent) -> bool {
        let mut sigma = BTreeMap::new();
        let active_ok = match (&self.form, &claimed.form) {
            (SequentForm::Term(a), SequentForm::Term(b))
            | (SequentForm::Context(a), SequentForm::Context(b)) => matches(a, b, &mut sigma),
            (SequentForm::Command, SequentForm::Command) => true,
            _ => false,
        };
        active_ok
            && self
                .gamma
                .iter()
                .all(|(x, a)| claimed.gamma.get(x).is_some_and(|b| matches(a, b, &mut sigma)))
            && self
                .delta
                .iter()
                .all(|(x, a)| claimed.delta.get(x).is_some_and(|b| matches(a, b, &mut sigma)))
    }
}

fn display_name(i: usize) -> String {
    let letter = char::from(b'A' + (i % 26) as u8);
    if i < 26 {
        format!("{}", letter)
    } else {
        format!("{}{}", letter, i / 26)
    }
}

/// One-way matching: extend `sigma` so that `sigma(pattern) = target`.
fn matches<'a>(pattern: &'a SimpleType, target: &SimpleType, sigma: &mut BTreeMap<&'a str, SimpleType>) -> bool {
    match (pattern, target) {
        (SimpleType::Var(v), _) => match sigma.get(v.as_str()) {
            Some(bound) => bound == target,
            None => {
                sigma.insert(v, target.clone());
                true
            }
        },
        (SimpleType::Arrow(a, b), SimpleType::Arrow(c, d)) => matches(a, c, sigma) && matches(b, d, sigma),
        _ => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TypeError {
    #[error("cannot unify {0} with {1}")]
    Clash(SimpleType, SimpleType),
    #[error("occurs check: {0} occurs in {1}")]
    Occurs(String, SimpleType),
}

/// A most general unifier under construction.
#[derive(Clone, Debug, Default)]
pub struct TypeSubst {
    map: BTreeMap<String, SimpleType>,
    next: usize,
}

impl TypeSubst {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn fresh(&mut self) -> SimpleType {
        let v = SimpleType::Var(format!("_{}", self.next));
        self.next += 1;
        v
    }

    pub fn apply(&self, t: &SimpleType) -> SimpleType {
        match t {
            SimpleType::Var(v) => match self.map.get(v) {
                Some(u) => self.apply(u),
                None => t.clone(),
            },
            SimpleType::Arrow(a, b) => SimpleType::arrow(self.apply(a), self.apply(b)),
        }
    }

    pub fn unify(&mut self, a: &SimpleType, b: &SimpleType) -> Result<(), TypeError> {
        let (a, b) = (self.apply(a), self.apply(b));
        match (&a, &b) {
            (SimpleType::Var(v), SimpleType::Var(w)) if v == w => Ok(()),
            (SimpleType::Var(v), t) | (t, SimpleType::Var(v)) => {
                if t.occurs(v) {
                    return Err(TypeError::Occurs(v.clone(), t.clone()));
                }
                self.map.insert(v.clone(), t.clone());
                Ok(())
            }
            (SimpleType::Arrow(a1, b1), SimpleType::Arrow(a2, b2)) => {
                self.unify(a1, a2)?;
                self.unify(b1, b2)
            }
        }
    }

    fn apply_sequent(&self, s: &Sequent) -> Sequent {
        Sequent {
            gamma: s.gamma.iter().map(|(x, t)| (x.clone(), self.apply(t))).collect(),
            form: match &s.form {
                SequentForm::Term(t) => SequentForm::Term(self.apply(t)),
                SequentForm::Command => SequentForm::Command,
                SequentForm::Context(t) => SequentForm::Context(self.apply(t)),
            },
            delta: s.delta.iter().map(|(a, t)| (a.clone(), self.apply(t))).collect(),
        }
    }
}

/// Inference state: one global environment for the free names (which
/// realises the agreement condition on shared names), plus scopes for the
/// bound ones.
#[derive(Default)]
struct Infer {
    subst: TypeSubst,
    gamma: BTreeMap<VarName, SimpleType>,
    delta: BTreeMap<CoVarName, SimpleType>,
    vars: Vec<(VarName, SimpleType)>,
    covars: Vec<(CoVarName, SimpleType)>,
}

impl Infer {
    fn var(&mut self, x: &VarName) -> SimpleType {
        if let Some((_, t)) = self.vars.iter().rev().find(|(y, _)| y == x) {
            return t.clone();
        }
        if let Some(t) = self.gamma.get(x) {
            return t.clone();
        }
        let t = self.subst.fresh();
        self.gamma.insert(x.clone(), t.clone());
        t
    }

    fn covar(&mut self, a: &CoVarName) -> SimpleType {
        if let Some((_, t)) = self.covars.iter().rev().find(|(b, _)| b == a) {
            return t.clone();
        }
        if let Some(t) = self.delta.get(a) {
            return t.clone();
        }
        let t = self.subst.fresh();
        self.delta.insert(a.clone(), t.clone());
        t
    }

    fn under_var<R>(&mut self, x: &VarName, f: impl FnOnce(&mut Self) -> Result<R, TypeError>) -> Result<(SimpleType, R), TypeError> {
        let a = self.subst.fresh();
        self.vars.push((x.clone(), a.clone()));
        let r = f(self);
        self.vars.pop();
        Ok((a, r?))
    }

    fn under_covar<R>(&mut self, x: &CoVarName, f: impl FnOnce(&mut Self) -> Result<R, TypeError>) -> Result<(SimpleType, R), TypeError> {
        let a = self.subst.fresh();
        self.covars.push((x.clone(), a.clone()));
        let r = f(self);
        self.covars.pop();
        Ok((a, r?))
    }

    fn lm_term(&mut self, t: &LmTerm) -> Result<SimpleType, TypeError> {
        match t {
            LmTerm::Var(x) => Ok(self.var(x)),
            LmTerm::Lam(x, b) => {
                let (a, b) = self.under_var(x, |s| s.lm_term(b))?;
                Ok(SimpleType::arrow(a, b))
            }
            LmTerm::App(f, u) => {
                let tf = self.lm_term(f)?;
                let tu = self.lm_term(u)?;
                let r = self.subst.fresh();
                self.subst.unify(&tf, &SimpleType::arrow(tu, r.clone()))?;
                Ok(r)
            }
            LmTerm::Mu(a, c) => Ok(self.under_covar(a, |s| s.lm_command(c))?.0),
        }
    }

    fn lm_command(&mut self, c: &LmCommand) -> Result<(), TypeError> {
        let t = self.lm_term(&c.body)?;
        let a = self.covar(&c.covar);
        self.subst.unify(&a, &t)
    }

    /// The type of the hole.
    fn lm_context(&mut self, e: &LmContext) -> Result<SimpleType, TypeError> {
        match e {
            LmContext::CoVar(a) => Ok(self.covar(a)),
            LmContext::AppTo(u, b) => {
                let tu = self.lm_term(u)?;
                let (hole, res) = (self.subst.fresh(), self.subst.fresh());
                self.subst.unify(&tu, &SimpleType::arrow(hole.clone(), res.clone()))?;
                let tb = self.covar(b);
                self.subst.unify(&tb, &res)?;
                Ok(hole)
            }
            LmContext::ArgStack(h, u) => {
                let th = self.lm_context(h)?;
                let tu = self.lm_term(u)?;
                Ok(SimpleType::arrow(tu, th))
            }
        }
    }

    fn lb_term(&mut self, t: &LbTerm) -> Result<SimpleType, TypeError> {
        match t {
            LbTerm::Var(x) => Ok(self.var(x)),
            LbTerm::Lam(x, b) => {
                let (a, b) = self.under_var(x, |s| s.lb_term(b))?;
                Ok(SimpleType::arrow(a, b))
            }
            LbTerm::Mu(a, c) => Ok(self.under_covar(a, |s| s.lb_command(c))?.0),
        }
    }

    fn lb_command(&mut self, c: &LbCommand) -> Result<(), TypeError> {
        let t = self.lb_term(&c.term)?;
        let e = self.lb_context(&c.context)?;
        self.subst.unify(&t, &e)
    }

    fn lb_context(&mut self, e: &LbContext) -> Result<SimpleType, TypeError> {
        match e {
            LbContext::CoVar(a) => Ok(self.covar(a)),
            LbContext::Cons(t, e) => {
                let tt = self.lb_term(t)?;
                let te = self.lb_context(e)?;
                Ok(SimpleType::arrow(tt, te))
            }
            LbContext::MuTilde(x, c) => Ok(self.under_var(x, |s| s.lb_command(c))?.0),
        }
    }

    fn finish(self, form: SequentForm) -> Sequent {
        let raw = Sequent {
            gamma: self.gamma,
            form,
            delta: self.delta,
        };
        self.subst.apply_sequent(&raw).normalized()
    }
}

/// The principal sequent of a λμ subject.
pub fn infer_lm(subject: &LmSubject) -> Result<Sequent, TypeError> {
    let mut inf = Infer::default();
    let form = match subject {
        LmSubject::Term(t) => SequentForm::Term(inf.lm_term(t)?),
        LmSubject::Command(c) => {
            inf.lm_command(c)?;
            SequentForm::Command
        }
        LmSubject::Context(e) => SequentForm::Context(inf.lm_context(e)?),
    };
    Ok(inf.finish(form))
}

/// The principal sequent of a λ̄μμ̃ subject.
pub fn infer_lmm(subject: &LbSubject) -> Result<Sequent, TypeError> {
    let mut inf = Infer::default();
    let form = match subject {
        LbSubject::Term(t) => SequentForm::Term(inf.lb_term(t)?),
        LbSubject::Command(c) => {
            inf.lb_command(c)?;
            SequentForm::Command
        }
        LbSubject::Context(e) => SequentForm::Context(inf.lb_context(e)?),
    };
    Ok(inf.finish(form))
}

pub fn check_lm(subject: &LmSubject, claimed: &Sequent) -> bool {
    infer_lm(subject).is_ok_and(|p| p.subsumes(claimed))
}

pub fn check_lmm(subject: &LbSubject, claimed: &Sequent) -> bool {
    infer_lmm(subject).is_ok_and(|p| p.subsumes(claimed))
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CutError {
    #[error("the {0} premise is untypable: {1}")]
    PremiseUntypable(&'static str, TypeError),
    #[error("the premises disagree on the cut type or a shared name: {0}")]
    CutTypeClash(TypeError),
}

/// The two premises and the conclusion of a cut, and whether the plugged
/// command derives the conclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutDerivation {
    pub term_premise: Sequent,
    pub context_premise: Sequent,
    pub conclusion: Sequent,
    pub plugged: LmCommand,
    pub holds: bool,
}

/// From `Γ ⊢ t : A | Δ` and `Γ' | e : A ⊢ Δ'`, derive
/// `e⟨t⟩ : (Γ, Γ' ⊢ Δ, Δ')`.
pub fn check_cut_rule(t: &LmTerm, e: &LmContext) -> Result<CutDerivation, CutError> {
    let term_premise = infer_lm(&LmSubject::Term(t.clone())).map_err(|err| CutError::PremiseUntypable("term", err))?;
    let context_premise = infer_lm(&LmSubject::Context(e.clone())).map_err(|err| CutError::PremiseUntypable("context", err))?;

    // rename the context premise apart
    let right = context_premise.rename_vars(
        &context_premise
            .vars_in_order()
            .into_iter()
            .map(|v| (v, format!("R{}", v)))
            .collect(),
    );
    let mut subst = TypeSubst::new();
    let clash = CutError::CutTypeClash;
    subst
        .unify(term_premise.active().expect("term sequent"), right.active().expect("context sequent"))
        .map_err(clash)?;
    let mut gamma = term_premise.gamma.clone();
    for (x, b) in &right.gamma {
        match gamma.get(x) {
            Some(a) => subst.unify(a, b).map_err(clash)?,
            None => {
                gamma.insert(x.clone(), b.clone());
            }
        }
    }
    let mut delta = term_premise.delta.clone();
    for (a, b) in &right.delta {
        match delta.get(a) {
            Some(t) => subst.unify(t, b).map_err(clash)?,
            None => {
                delta.insert(a.clone(), b.clone());
            }
        }
    }
    let conclusion = subst
        .apply_sequent(&Sequent {
            gamma,
            form: SequentForm::Command,
            delta,
        })
        .normalized();
    let plugged = e.plug(t.clone());
    let holds = check_lm(&LmSubject::Command(plugged.clone()), &conclusion);
    Ok(CutDerivation {
        term_premise,
        context_premise,
        conclusion,
        plugged,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn arrow(a: SimpleType, b: SimpleType) -> SimpleType {
        SimpleType::arrow(a, b)
    }

    fn tv(v: &str) -> SimpleType {
        SimpleType::var(v)
    }

    fn lm(t: LmTerm) -> LmSubject {
        LmSubject::Term(t)
    }

    fn term_sequent(gamma: &[(&str, SimpleType)], t: SimpleType, delta: &[(&str, SimpleType)]) -> Sequent {
        Sequent {
            gamma: gamma.iter().map(|(x, t)| (VarName::from(*x), t.clone())).collect(),
            form: SequentForm::Term(t),
            delta: delta.iter().map(|(a, t)| (CoVarName::from(*a), t.clone())).collect(),
        }
    }

    #[test]
    fn identity() {
        let id = lm(LmTerm::lam("x", LmTerm::var("x")));
        let s = infer_lm(&id).unwrap();
        assert_eq!(s.form, SequentForm::Term(arrow(tv("X0"), tv("X0"))));
        assert!(s.gamma.is_empty() && s.delta.is_empty());
        assert_eq!(s.render("\\x.x"), "|- \\x.x : A->A");
    }

    #[test]
    fn peirce() {
        // λy.μα.[α](y (λx.μδ.[α]x)) : ((A→B)→A)→A
        let inner = LmTerm::lam("x", LmTerm::mu("d", LmCommand::named("a", LmTerm::var("x"))));
        let t = LmTerm::lam(
            "y",
            LmTerm::mu("a", LmCommand::named("a", LmTerm::app(LmTerm::var("y"), inner))),
        );
        let s = infer_lm(&lm(t)).unwrap();
        assert_eq!(s.render("_"), "|- _ : ((A->B)->A)->A");
    }

    #[test]
    fn named_variable() {
        let c = LmSubject::Command(LmCommand::named("a", LmTerm::var("x")));
        assert_eq!(infer_lm(&c).unwrap().render("['a]x"), "['a]x : (x:A |- 'a:A)");
    }

    #[test]
    fn lmm_examples() {
        let c = LbSubject::Command(LbCommand::cut(
            LbTerm::var("x"),
            LbContext::cons(LbTerm::var("y"), LbContext::covar("a")),
        ));
        assert_eq!(infer_lmm(&c).unwrap().render("_"), "_ : (x:A->B, y:A |- 'a:B)");

        let e = LbSubject::Context(LbContext::mu_tilde(
            "x",
            LbCommand::cut(LbTerm::var("x"), LbContext::covar("a")),
        ));
        assert_eq!(infer_lmm(&e).unwrap().render("_"), "| _ : A |- 'a:A");

        let id = LbSubject::Term(LbTerm::lam("x", LbTerm::var("x")));
        assert_eq!(infer_lmm(&id).unwrap().render("_"), "|- _ : A->A");
    }

    #[test]
    fn untypable_terms() {
        let w = LmTerm::lam("x", LmTerm::app(LmTerm::var("x"), LmTerm::var("x")));
        assert!(matches!(infer_lm(&lm(w)), Err(TypeError::Occurs(..))));
    }

    #[test]
    fn sequent_checking() {
        let id = lm(LmTerm::lam("x", LmTerm::var("x")));
        let ab = arrow(tv("A"), tv("B"));
        assert!(check_lm(&id, &term_sequent(&[], arrow(ab.clone(), ab.clone()), &[])));
        assert!(!check_lm(&id, &term_sequent(&[], ab, &[])));
        // weakening
        assert!(check_lm(&id, &term_sequent(&[("z", tv("C"))], arrow(tv("A"), tv("A")), &[("b", tv("C"))])));

        let c = LbSubject::Command(LbCommand::cut(LbTerm::var("x"), LbContext::covar("a")));
        let claimed = Sequent {
            gamma: [(VarName::from("x"), tv("A"))].into_iter().collect(),
            form: SequentForm::Command,
            delta: [(CoVarName::from("a"), tv("A"))].into_iter().collect(),
        };
        assert!(check_lmm(&c, &claimed));
        let mut wrong = claimed.clone();
        wrong.delta.insert("a".into(), tv("B"));
        assert!(!check_lmm(&c, &wrong));
        // a missing free name is not a weakening
        let mut missing = claimed;
        missing.gamma.clear();
        assert!(!check_lmm(&c, &missing));
    }

    #[test]
    fn cut_rule_examples() {
        let x = LmTerm::var("x");
        let d = check_cut_rule(&x, &LmContext::covar("a")).unwrap();
        assert!(d.holds);
        assert_eq!(d.conclusion.render("_"), "_ : (x:A |- 'a:A)");

        let u = LmTerm::var("u");
        let d = check_cut_rule(&x, &LmContext::app_to(u, "b")).unwrap();
        assert!(d.holds);
        assert_eq!(d.plugged.to_string(), "['b]u x");
        assert_eq!(d.conclusion.render("_"), "_ : (u:A->B, x:A |- 'b:B)");

        let id = LmTerm::lam("x", LmTerm::var("x"));
        let d = check_cut_rule(&id, &LmContext::arg_stack(LmContext::covar("g"), LmTerm::var("y"))).unwrap();
        assert!(d.holds);
        assert_eq!(d.conclusion.render("_"), "_ : (y:A |- 'g:A)");
    }

    #[test]
    fn cut_rule_errors() {
        let w = LmTerm::lam("x", LmTerm::app(LmTerm::var("x"), LmTerm::var("x")));
        assert!(matches!(
            check_cut_rule(&w, &LmContext::covar("a")),
            Err(CutError::PremiseUntypable("term", _))
        ));
        // x used at type A and at type A→B by the two premises
        let e = LmContext::app_to(LmTerm::var("x"), "b");
        assert!(matches!(
            check_cut_rule(&LmTerm::var("x"), &e),
            Err(CutError::CutTypeClash(_))
        ));
    }

    #[test]
    fn display_of_types() {
        let t = arrow(arrow(tv("A"), tv("B")), arrow(tv("A"), tv("B")));
        assert_eq!(t.to_string(), "(A->B)->A->B");
    }
}
