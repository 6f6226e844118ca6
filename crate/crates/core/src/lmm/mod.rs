//! The λ̄μμ̃-calculus: terms, cuts `⟨t|e⟩` and contexts, with the stack,
//! value and T/Q fragment classifications.

mod reduce;
mod subst;

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use crate::lm::Canon;
use crate::name::{CoVarName, NameSet, VarName};
use crate::redex::Measure;

pub use reduce::{LbMode, LbRedex, LbRule, LbStrategy};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LbTerm {
    Var(VarName),
    Lam(VarName, Box<LbTerm>),
    Mu(CoVarName, Box<LbCommand>),
}

/// `⟨t|e⟩`
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LbCommand {
    pub term: Box<LbTerm>,
    pub context: Box<LbContext>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LbContext {
    CoVar(CoVarName),
    /// `t·e`
    Cons(Box<LbTerm>, Box<LbContext>),
    /// `μ̃x.c`
    MuTilde(VarName, Box<LbCommand>),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LbSubject {
    Term(LbTerm),
    Command(LbCommand),
    Context(LbContext),
}

#[derive(Clone, Copy, Debug)]
pub(crate) enum LbRef<'a> {
    Term(&'a LbTerm),
    Command(&'a LbCommand),
    Context(&'a LbContext),
}

impl LbTerm {
    pub fn var(x: &str) -> Self {
        LbTerm::Var(x.into())
    }

    pub fn lam(x: &str, body: LbTerm) -> Self {
        LbTerm::Lam(x.into(), Box::new(body))
    }

    pub fn mu(a: &str, c: LbCommand) -> Self {
        LbTerm::Mu(a.into(), Box::new(c))
    }

    /// `x` or `λx.t`.
    pub fn is_value(&self) -> bool {
        matches!(self, LbTerm::Var(_) | LbTerm::Lam(..))
    }

    pub fn size(&self) -> usize {
        match self {
            LbTerm::Var(_) => 1,
            LbTerm::Lam(_, b) => 1 + b.size(),
            LbTerm::Mu(_, c) => 1 + c.size(),
        }
    }

    pub fn free_names(&self) -> NameSet {
        LbSubject::Term(self.clone()).free_names()
    }

    pub fn alpha_eq(&self, other: &LbTerm) -> bool {
        LbSubject::Term(self.clone()).alpha_eq(&LbSubject::Term(other.clone()))
    }

    pub(crate) fn count_var(&self, x: &VarName) -> usize {
        match self {
            LbTerm::Var(y) => usize::from(y == x),
            LbTerm::Lam(y, _) if y == x => 0,
            LbTerm::Lam(_, b) => b.count_var(x),
            LbTerm::Mu(_, c) => c.count_var(x),
        }
    }

    pub(crate) fn count_covar(&self, a: &CoVarName) -> usize {
        match self {
            LbTerm::Var(_) => 0,
            LbTerm::Lam(_, b) => b.count_covar(a),
            LbTerm::Mu(b, _) if b == a => 0,
            LbTerm::Mu(_, c) => c.count_covar(a),
        }
    }
}

impl LbCommand {
    pub fn cut(t: LbTerm, e: LbContext) -> Self {
        LbCommand {
            term: Box::new(t),
            context: Box::new(e),
        }
    }

    pub fn size(&self) -> usize {
        1 + self.term.size() + self.context.size()
    }

    pub fn free_names(&self) -> NameSet {
        LbSubject::Command(self.clone()).free_names()
    }

    pub(crate) fn count_var(&self, x: &VarName) -> usize {
        self.term.count_var(x) + self.context.count_var(x)
    }

    pub(crate) fn count_covar(&self, a: &CoVarName) -> usize {
        self.term.count_covar(a) + self.context.count_covar(a)
    }
}

impl LbContext {
    pub fn covar(a: &str) -> Self {
        LbContext::CoVar(a.into())
    }

    pub fn cons(t: LbTerm, e: LbContext) -> Self {
        LbContext::Cons(Box::new(t), Box::new(e))
    }

    pub fn mu_tilde(x: &str, c: LbCommand) -> Self {
        LbContext::MuTilde(x.into(), Box::new(c))
    }

    /// `α` or `t·s`.
    pub fn is_stack(&self) -> bool {
        match self {
            LbContext::CoVar(_) => true,
            LbContext::Cons(_, s) => s.is_stack(),
            LbContext::MuTilde(..) => false,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            LbContext::CoVar(_) => 1,
            LbContext::Cons(t, e) => 1 + t.size() + e.size(),
            LbContext::MuTilde(_, c) => 1 + c.size(),
        }
    }

    pub fn free_names(&self) -> NameSet {
        LbSubject::Context(self.clone()).free_names()
    }

    pub(crate) fn count_var(&self, x: &VarName) -> usize {
        match self {
            LbContext::CoVar(_) => 0,
            LbContext::Cons(t, e) => t.count_var(x) + e.count_var(x),
            LbContext::MuTilde(y, _) if y == x => 0,
            LbContext::MuTilde(_, c) => c.count_var(x),
        }
    }

    pub(crate) fn count_covar(&self, a: &CoVarName) -> usize {
        match self {
            LbContext::CoVar(b) => usize::from(a == b),
            LbContext::Cons(t, e) => t.count_covar(a) + e.count_covar(a),
            LbContext::MuTilde(_, c) => c.count_covar(a),
        }
    }
}

impl LbSubject {
    pub(crate) fn as_ref(&self) -> LbRef<'_> {
        match self {
            LbSubject::Term(t) => LbRef::Term(t),
            LbSubject::Command(c) => LbRef::Command(c),
            LbSubject::Context(e) => LbRef::Context(e),
        }
    }

    pub fn sort_name(&self) -> &'static str {
        match self {
            LbSubject::Term(_) => "term",
            LbSubject::Command(_) => "command",
            LbSubject::Context(_) => "context",
        }
    }

    pub fn size(&self) -> usize {
        match self {
            LbSubject::Term(t) => t.size(),
            LbSubject::Command(c) => c.size(),
            LbSubject::Context(e) => e.size(),
        }
    }

    pub fn free_names(&self) -> NameSet {
        let mut out = NameSet::new();
        free(self.as_ref(), &mut Vec::new(), &mut Vec::new(), &mut out);
        out
    }

    /// Every name occurring anywhere, binders included.
    pub fn all_names(&self) -> NameSet {
        let mut out = NameSet::new();
        all_names(self.as_ref(), &mut out);
        out
    }

    pub fn canonical(&self, junk_reserved: bool) -> LbSubject {
        let mut canon = Canon::new(junk_reserved);
        match self {
            LbSubject::Term(t) => LbSubject::Term(canon_term(&mut canon, t)),
            LbSubject::Command(c) => LbSubject::Command(canon_command(&mut canon, c)),
            LbSubject::Context(e) => LbSubject::Context(canon_context(&mut canon, e)),
        }
    }

    pub fn alpha_eq(&self, other: &LbSubject) -> bool {
        self.canonical(false) == other.canonical(false)
    }

    pub fn alpha_eq_modulo_reserved(&self, other: &LbSubject) -> bool {
        self.canonical(true) == other.canonical(true)
    }

    /// Every cons tail is a stack.
    pub fn in_t(&self) -> bool {
        every(self.as_ref(), &|n| match n {
            LbRef::Context(LbContext::Cons(_, s)) => s.is_stack(),
            _ => true,
        })
    }

    /// Every cons head is a value.
    pub fn in_q(&self) -> bool {
        every(self.as_ref(), &|n| match n {
            LbRef::Context(LbContext::Cons(v, _)) => v.is_value(),
            _ => true,
        })
    }

    /// Node count, then the number of λ-abstractions: the β-rule moves
    /// nodes around without shrinking the subject but consumes a λ.
    pub fn measure(&self) -> Measure {
        fn lams(node: LbRef<'_>) -> usize {
            let own = usize::from(matches!(node, LbRef::Term(LbTerm::Lam(..))));
            own + (0..2).filter_map(|i| child(node, i)).map(lams).sum::<usize>()
        }
        Measure {
            nodes: self.size(),
            secondary: alloc::vec![lams(self.as_ref())],
        }
    }

    pub fn at(&self, path: &[usize]) -> Option<LbSubject> {
        let mut node = self.as_ref();
        for &i in path {
            node = child(node, i)?;
        }
        Some(node.to_owned_subject())
    }

    pub fn replace_at(&self, path: &[usize], new: LbSubject) -> Option<LbSubject> {
        replace(self.as_ref(), path, new)
    }
}

impl LbRef<'_> {
    pub(crate) fn to_owned_subject(self) -> LbSubject {
        match self {
            LbRef::Term(t) => LbSubject::Term(t.clone()),
            LbRef::Command(c) => LbSubject::Command(c.clone()),
            LbRef::Context(e) => LbSubject::Context(e.clone()),
        }
    }
}

pub(crate) fn child(node: LbRef<'_>, i: usize) -> Option<LbRef<'_>> {
    match (node, i) {
        (LbRef::Term(LbTerm::Lam(_, b)), 0) => Some(LbRef::Term(b)),
        (LbRef::Term(LbTerm::Mu(_, c)), 0) => Some(LbRef::Command(c)),
        (LbRef::Command(c), 0) => Some(LbRef::Term(&c.term)),
        (LbRef::Command(c), 1) => Some(LbRef::Context(&c.context)),
        (LbRef::Context(LbContext::Cons(t, _)), 0) => Some(LbRef::Term(t)),
        (LbRef::Context(LbContext::Cons(_, e)), 1) => Some(LbRef::Context(e)),
        (LbRef::Context(LbContext::MuTilde(_, c)), 0) => Some(LbRef::Command(c)),
        _ => None,
    }
}

fn every(node: LbRef<'_>, pred: &dyn Fn(LbRef<'_>) -> bool) -> bool {
    pred(node) && (0..2).all(|i| child(node, i).is_none_or(|c| every(c, pred)))
}

fn replace(node: LbRef<'_>, path: &[usize], new: LbSubject) -> Option<LbSubject> {
    let Some((&i, rest)) = path.split_first() else {
        let same_sort = matches!(
            (node, &new),
            (LbRef::Term(_), LbSubject::Term(_))
                | (LbRef::Command(_), LbSubject::Command(_))
                | (LbRef::Context(_), LbSubject::Context(_))
        );
        return same_sort.then_some(new);
    };
    let sub = replace(child(node, i)?, rest, new)?;
    Some(match (node, i, sub) {
        (LbRef::Term(LbTerm::Lam(x, _)), _, LbSubject::Term(b)) => {
            LbSubject::Term(LbTerm::Lam(x.clone(), Box::new(b)))
        }
        (LbRef::Term(LbTerm::Mu(a, _)), _, LbSubject::Command(c)) => {
            LbSubject::Term(LbTerm::Mu(a.clone(), Box::new(c)))
        }
        (LbRef::Command(c), 0, LbSubject::Term(t)) => LbSubject::Command(LbCommand {
            term: Box::new(t),
            context: c.context.clone(),
        }),
        (LbRef::Command(c), 1, LbSubject::Context(e)) => LbSubject::Command(LbCommand {
            term: c.term.clone(),
            context: Box::new(e),
        }),
        (LbRef::Context(LbContext::Cons(_, e)), 0, LbSubject::Term(t)) => {
            LbSubject::Context(LbContext::Cons(Box::new(t), e.clone()))
        }
        (LbRef::Context(LbContext::Cons(t, _)), 1, LbSubject::Context(e)) => {
            LbSubject::Context(LbContext::Cons(t.clone(), Box::new(e)))
        }
        (LbRef::Context(LbContext::MuTilde(x, _)), _, LbSubject::Command(c)) => {
            LbSubject::Context(LbContext::MuTilde(x.clone(), Box::new(c)))
        }
        _ => return None,
    })
}

fn free<'a>(
    node: LbRef<'a>,
    vars: &mut Vec<&'a VarName>,
    covars: &mut Vec<&'a CoVarName>,
    out: &mut NameSet,
) {
    match node {
        LbRef::Term(LbTerm::Var(x)) => {
            if !vars.contains(&x) {
                out.vars.insert(x.clone());
            }
        }
        LbRef::Context(LbContext::CoVar(a)) => {
            if !covars.contains(&a) {
                out.covars.insert(a.clone());
            }
        }
        LbRef::Term(LbTerm::Lam(x, b)) => {
            vars.push(x);
            free(LbRef::Term(b), vars, covars, out);
            vars.pop();
        }
        LbRef::Context(LbContext::MuTilde(x, c)) => {
            vars.push(x);
            free(LbRef::Command(c), vars, covars, out);
            vars.pop();
        }
        LbRef::Term(LbTerm::Mu(a, c)) => {
            covars.push(a);
            free(LbRef::Command(c), vars, covars, out);
            covars.pop();
        }
        LbRef::Command(_) | LbRef::Context(LbContext::Cons(..)) => {
            for i in 0..2 {
                if let Some(c) = child(node, i) {
                    free(c, vars, covars, out);
                }
            }
        }
    }
}

fn all_names(node: LbRef<'_>, out: &mut NameSet) {
    match node {
        LbRef::Term(LbTerm::Var(x))
        | LbRef::Term(LbTerm::Lam(x, _))
        | LbRef::Context(LbContext::MuTilde(x, _)) => {
            out.vars.insert(x.clone());
        }
        LbRef::Term(LbTerm::Mu(a, _)) | LbRef::Context(LbContext::CoVar(a)) => {
            out.covars.insert(a.clone());
        }
        LbRef::Command(_) | LbRef::Context(LbContext::Cons(..)) => {}
    }
    for i in 0..2 {
        if let Some(c) = child(node, i) {
            all_names(c, out);
        }
    }
}

fn canon_term(canon: &mut Canon, t: &LbTerm) -> LbTerm {
    match t {
        LbTerm::Var(x) => LbTerm::Var(canon.var(x)),
        LbTerm::Lam(x, b) => {
            let x = canon.bind_var(x);
            let b = canon_term(canon, b);
            canon.unbind_var();
            LbTerm::Lam(x, Box::new(b))
        }
        LbTerm::Mu(a, c) => {
            let a = canon.bind_covar(a);
            let c = canon_command(canon, c);
            canon.unbind_covar();
            LbTerm::Mu(a, Box::new(c))
        }
    }
}

fn canon_command(canon: &mut Canon, c: &LbCommand) -> LbCommand {
    LbCommand::cut(canon_term(canon, &c.term), canon_context(canon, &c.context))
}

fn canon_context(canon: &mut Canon, e: &LbContext) -> LbContext {
    match e {
        LbContext::CoVar(a) => LbContext::CoVar(canon.covar(a)),
        LbContext::Cons(t, e) => LbContext::cons(canon_term(canon, t), canon_context(canon, e)),
        LbContext::MuTilde(x, c) => {
            let x = canon.bind_var(x);
            let c = canon_command(canon, c);
            canon.unbind_var();
            LbContext::MuTilde(x, Box::new(c))
        }
    }
}

impl fmt::Display for LbTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LbTerm::Var(x) => write!(f, "{}", x),
            LbTerm::Lam(x, b) => write!(f, "\\{}.{}", x, b),
            LbTerm::Mu(a, c) => write!(f, "mu {}.{}", a, c),
        }
    }
}

impl fmt::Display for LbCommand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}|{}>", self.term, self.context)
    }
}

impl fmt::Display for LbContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LbContext::CoVar(a) => write!(f, "{}", a),
            LbContext::Cons(t, e) => write!(f, "{}*{}", t, e),
            LbContext::MuTilde(x, c) => write!(f, "mt {}.{}", x, c),
        }
    }
}

impl fmt::Display for LbSubject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LbSubject::Term(t) => t.fmt(f),
            LbSubject::Command(c) => c.fmt(f),
            LbSubject::Context(e) => e.fmt(f),
        }
    }
}
