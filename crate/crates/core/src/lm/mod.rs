//! The λμ-calculus: terms, named commands and contexts (commands with a
//! hole), plus structural operations on them.

mod reduce;
mod subst;

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::name::{CoVarName, NameSet, VarName};
use crate::redex::Measure;

pub use reduce::{LmRedex, LmRule, LmStrategy};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LmTerm {
    Var(VarName),
    Lam(VarName, Box<LmTerm>),
    App(Box<LmTerm>, Box<LmTerm>),
    Mu(CoVarName, Box<LmCommand>),
}

/// `[α]t`
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LmCommand {
    pub covar: CoVarName,
    pub body: Box<LmTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LmContext {
    /// `α̂`: plugging `t` gives `[α]t`.
    CoVar(CoVarName),
    /// `û` named `β`: plugging `t` gives `[β](u t)`.
    AppTo(Box<LmTerm>, CoVarName),
    /// `h·u`: plugging `t` gives `h⟨t u⟩`.
    ArgStack(Box<LmContext>, Box<LmTerm>),
}

/// Any of the three syntactic categories.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LmSubject {
    Term(LmTerm),
    Command(LmCommand),
    Context(LmContext),
}

#[derive(Clone, Copy, Debug)]
pub(crate) enum LmRef<'a> {
    Term(&'a LmTerm),
    Command(&'a LmCommand),
    Context(&'a LmContext),
}

impl LmTerm {
    pub fn var(x: &str) -> Self {
        LmTerm::Var(x.into())
    }

    pub fn lam(x: &str, body: LmTerm) -> Self {
        LmTerm::Lam(x.into(), Box::new(body))
    }

    pub fn app(f: LmTerm, a: LmTerm) -> Self {
        LmTerm::App(Box::new(f), Box::new(a))
    }

    pub fn mu(a: &str, c: LmCommand) -> Self {
        LmTerm::Mu(a.into(), Box::new(c))
    }

    /// `x` or `λx.t`.
    pub fn is_value(&self) -> bool {
        matches!(self, LmTerm::Var(_) | LmTerm::Lam(..))
    }

    pub fn free_names(&self) -> NameSet {
        let mut out = NameSet::new();
        Scope::default().term(self, &mut out);
        out
    }

    pub fn size(&self) -> usize {
        match self {
            LmTerm::Var(_) => 1,
            LmTerm::Lam(_, b) => 1 + b.size(),
            LmTerm::App(f, a) => 1 + f.size() + a.size(),
            LmTerm::Mu(_, c) => 1 + c.size(),
        }
    }

    pub fn alpha_eq(&self, other: &LmTerm) -> bool {
        self.canonical(false) == other.canonical(false)
    }

    pub fn canonical(&self, junk_reserved: bool) -> LmTerm {
        Canon::new(junk_reserved).term(self)
    }

    pub(crate) fn count_var(&self, x: &VarName) -> usize {
        match self {
            LmTerm::Var(y) => usize::from(y == x),
            LmTerm::Lam(y, b) if y == x => 0,
            LmTerm::Lam(_, b) => b.count_var(x),
            LmTerm::App(f, a) => f.count_var(x) + a.count_var(x),
            LmTerm::Mu(_, c) => c.body.count_var(x),
        }
    }

    pub(crate) fn count_covar(&self, a: &CoVarName) -> usize {
        match self {
            LmTerm::Var(_) => 0,
            LmTerm::Lam(_, b) => b.count_covar(a),
            LmTerm::App(f, u) => f.count_covar(a) + u.count_covar(a),
            LmTerm::Mu(b, _) if b == a => 0,
            LmTerm::Mu(_, c) => c.count_covar(a),
        }
    }
}

impl LmCommand {
    pub fn named(a: &str, body: LmTerm) -> Self {
        LmCommand {
            covar: a.into(),
            body: Box::new(body),
        }
    }

    pub fn new(covar: CoVarName, body: LmTerm) -> Self {
        LmCommand {
            covar,
            body: Box::new(body),
        }
    }

    pub fn free_names(&self) -> NameSet {
        let mut out = NameSet::new();
        Scope::default().command(self, &mut out);
        out
    }

    pub fn size(&self) -> usize {
        1 + self.body.size()
    }

    pub fn alpha_eq(&self, other: &LmCommand) -> bool {
        self.canonical(false) == other.canonical(false)
    }

    pub fn canonical(&self, junk_reserved: bool) -> LmCommand {
        Canon::new(junk_reserved).command(self)
    }

    pub(crate) fn count_covar(&self, a: &CoVarName) -> usize {
        usize::from(&self.covar == a) + self.body.count_covar(a)
    }
}

impl LmContext {
    pub fn covar(a: &str) -> Self {
        LmContext::CoVar(a.into())
    }

    pub fn app_to(u: LmTerm, b: &str) -> Self {
        LmContext::AppTo(Box::new(u), b.into())
    }

    pub fn arg_stack(h: LmContext, u: LmTerm) -> Self {
        LmContext::ArgStack(Box::new(h), Box::new(u))
    }

    pub fn free_names(&self) -> NameSet {
        let mut out = NameSet::new();
        Scope::default().context(self, &mut out);
        out
    }

    pub fn size(&self) -> usize {
        match self {
            LmContext::CoVar(_) => 1,
            LmContext::AppTo(u, _) => 1 + u.size(),
            LmContext::ArgStack(h, u) => 1 + h.size() + u.size(),
        }
    }

    pub fn alpha_eq(&self, other: &LmContext) -> bool {
        self.canonical(false) == other.canonical(false)
    }

    pub fn canonical(&self, junk_reserved: bool) -> LmContext {
        Canon::new(junk_reserved).context(self)
    }

    /// Fill the hole with `t`.
    pub fn plug(&self, t: LmTerm) -> LmCommand {
        match self {
            LmContext::CoVar(a) => LmCommand::new(a.clone(), t),
            LmContext::AppTo(u, b) => {
                LmCommand::new(b.clone(), LmTerm::App(u.clone(), Box::new(t)))
            }
            LmContext::ArgStack(h, u) => h.plug(LmTerm::App(Box::new(t), u.clone())),
        }
    }

    pub fn contains_app_to(&self) -> bool {
        match self {
            LmContext::CoVar(_) => false,
            LmContext::AppTo(..) => true,
            LmContext::ArgStack(h, _) => h.contains_app_to(),
        }
    }

    /// Every `ArgStack` argument along the spine is a value.
    pub fn has_value_arguments(&self) -> bool {
        match self {
            LmContext::CoVar(_) | LmContext::AppTo(..) => true,
            LmContext::ArgStack(h, u) => u.is_value() && h.has_value_arguments(),
        }
    }
}

impl LmSubject {
    pub fn free_names(&self) -> NameSet {
        match self {
            LmSubject::Term(t) => t.free_names(),
            LmSubject::Command(c) => c.free_names(),
            LmSubject::Context(e) => e.free_names(),
        }
    }

    /// Every name occurring anywhere, binders included.
    pub fn all_names(&self) -> NameSet {
        let mut out = NameSet::new();
        all_names(self.as_ref(), &mut out);
        out
    }

    pub fn size(&self) -> usize {
        match self {
            LmSubject::Term(t) => t.size(),
            LmSubject::Command(c) => c.size(),
            LmSubject::Context(e) => e.size(),
        }
    }

    pub fn canonical(&self, junk_reserved: bool) -> LmSubject {
        let mut canon = Canon::new(junk_reserved);
        match self {
            LmSubject::Term(t) => LmSubject::Term(canon.term(t)),
            LmSubject::Command(c) => LmSubject::Command(canon.command(c)),
            LmSubject::Context(e) => LmSubject::Context(canon.context(e)),
        }
    }

    pub fn alpha_eq(&self, other: &LmSubject) -> bool {
        self.canonical(false) == other.canonical(false)
    }

    /// α-equivalence that also identifies all free reserved covariables.
    pub fn alpha_eq_modulo_reserved(&self, other: &LmSubject) -> bool {
        self.canonical(true) == other.canonical(true)
    }

    pub fn sort_name(&self) -> &'static str {
        match self {
            LmSubject::Term(_) => "term",
            LmSubject::Command(_) => "command",
            LmSubject::Context(_) => "context",
        }
    }

    /// Node count, then the multiset (sorted descending) of the sizes of all
    /// application subtrees.
    pub fn measure(&self) -> Measure {
        let mut apps = Vec::new();
        let nodes = app_sizes(self.as_ref(), &mut apps);
        apps.sort_unstable_by(|a, b| b.cmp(a));
        Measure {
            nodes,
            secondary: apps,
        }
    }

    pub(crate) fn as_ref(&self) -> LmRef<'_> {
        match self {
            LmSubject::Term(t) => LmRef::Term(t),
            LmSubject::Command(c) => LmRef::Command(c),
            LmSubject::Context(e) => LmRef::Context(e),
        }
    }

    /// The node at `path`, if any.
    pub fn at(&self, path: &[usize]) -> Option<LmSubject> {
        let mut node = self.as_ref();
        for &i in path {
            node = child(node, i)?;
        }
        Some(node.to_owned_subject())
    }

    /// A copy with the node at `path` replaced by `new`, provided the sorts
    /// agree.
    pub fn replace_at(&self, path: &[usize], new: LmSubject) -> Option<LmSubject> {
        replace(self.as_ref(), path, new)
    }
}

impl LmRef<'_> {
    pub(crate) fn to_owned_subject(self) -> LmSubject {
        match self {
            LmRef::Term(t) => LmSubject::Term(t.clone()),
            LmRef::Command(c) => LmSubject::Command(c.clone()),
            LmRef::Context(e) => LmSubject::Context(e.clone()),
        }
    }
}

pub(crate) fn child(node: LmRef<'_>, i: usize) -> Option<LmRef<'_>> {
    match (node, i) {
        (LmRef::Term(LmTerm::Lam(_, b)), 0) => Some(LmRef::Term(b)),
        (LmRef::Term(LmTerm::App(f, _)), 0) => Some(LmRef::Term(f)),
        (LmRef::Term(LmTerm::App(_, a)), 1) => Some(LmRef::Term(a)),
        (LmRef::Term(LmTerm::Mu(_, c)), 0) => Some(LmRef::Command(c)),
        (LmRef::Command(c), 0) => Some(LmRef::Term(&c.body)),
        (LmRef::Context(LmContext::AppTo(u, _)), 0) => Some(LmRef::Term(u)),
        (LmRef::Context(LmContext::ArgStack(h, _)), 0) => Some(LmRef::Context(h)),
        (LmRef::Context(LmContext::ArgStack(_, u)), 1) => Some(LmRef::Term(u)),
        _ => None,
    }
}

fn replace(node: LmRef<'_>, path: &[usize], new: LmSubject) -> Option<LmSubject> {
    let Some((&i, rest)) = path.split_first() else {
        let same_sort = matches!(
            (node, &new),
            (LmRef::Term(_), LmSubject::Term(_))
                | (LmRef::Command(_), LmSubject::Command(_))
                | (LmRef::Context(_), LmSubject::Context(_))
        );
        return same_sort.then_some(new);
    };
    let sub = replace(child(node, i)?, rest, new)?;
    Some(match (node, i, sub) {
        (LmRef::Term(LmTerm::Lam(x, _)), _, LmSubject::Term(b)) => {
            LmSubject::Term(LmTerm::Lam(x.clone(), Box::new(b)))
        }
        (LmRef::Term(LmTerm::App(_, a)), 0, LmSubject::Term(f)) => {
            LmSubject::Term(LmTerm::App(Box::new(f), a.clone()))
        }
        (LmRef::Term(LmTerm::App(f, _)), 1, LmSubject::Term(a)) => {
            LmSubject::Term(LmTerm::App(f.clone(), Box::new(a)))
        }
        (LmRef::Term(LmTerm::Mu(a, _)), _, LmSubject::Command(c)) => {
            LmSubject::Term(LmTerm::Mu(a.clone(), Box::new(c)))
        }
        (LmRef::Command(c), _, LmSubject::Term(t)) => {
            LmSubject::Command(LmCommand::new(c.covar.clone(), t))
        }
        (LmRef::Context(LmContext::AppTo(_, b)), _, LmSubject::Term(u)) => {
            LmSubject::Context(LmContext::AppTo(Box::new(u), b.clone()))
        }
        (LmRef::Context(LmContext::ArgStack(_, u)), 0, LmSubject::Context(h)) => {
            LmSubject::Context(LmContext::ArgStack(Box::new(h), u.clone()))
        }
        (LmRef::Context(LmContext::ArgStack(h, _)), 1, LmSubject::Term(u)) => {
            LmSubject::Context(LmContext::ArgStack(h.clone(), Box::new(u)))
        }
        _ => return None,
    })
}

fn all_names(node: LmRef<'_>, out: &mut NameSet) {
    match node {
        LmRef::Term(LmTerm::Var(x)) => {
            out.vars.insert(x.clone());
        }
        LmRef::Term(LmTerm::Lam(x, _)) => {
            out.vars.insert(x.clone());
        }
        LmRef::Term(LmTerm::Mu(a, _)) => {
            out.covars.insert(a.clone());
        }
        LmRef::Command(c) => {
            out.covars.insert(c.covar.clone());
        }
        LmRef::Context(LmContext::CoVar(a)) | LmRef::Context(LmContext::AppTo(_, a)) => {
            out.covars.insert(a.clone());
        }
        LmRef::Term(LmTerm::App(..)) | LmRef::Context(LmContext::ArgStack(..)) => {}
    }
    for i in 0..2 {
        if let Some(c) = child(node, i) {
            all_names(c, out);
        }
    }
}

fn app_sizes(node: LmRef<'_>, apps: &mut Vec<usize>) -> usize {
    let mut size = 1;
    for i in 0..2 {
        if let Some(c) = child(node, i) {
            size += app_sizes(c, apps);
        }
    }
    if let LmRef::Term(LmTerm::App(..)) = node {
        apps.push(size);
    }
    size
}

/// Free-name collection under a stack of binders.
#[derive(Default)]
struct Scope<'a> {
    vars: Vec<&'a VarName>,
    covars: Vec<&'a CoVarName>,
}

impl<'a> Scope<'a> {
    fn term(&mut self, t: &'a LmTerm, out: &mut NameSet) {
        match t {
            LmTerm::Var(x) => {
                if !self.vars.contains(&x) {
                    out.vars.insert(x.clone());
                }
            }
            LmTerm::Lam(x, b) => {
                self.vars.push(x);
                self.term(b, out);
                self.vars.pop();
            }
            LmTerm::App(f, a) => {
                self.term(f, out);
                self.term(a, out);
            }
            LmTerm::Mu(a, c) => {
                self.covars.push(a);
                self.command(c, out);
                self.covars.pop();
            }
        }
    }

    fn command(&mut self, c: &'a LmCommand, out: &mut NameSet) {
        self.covar(&c.covar, out);
        self.term(&c.body, out);
    }

    fn context(&mut self, e: &'a LmContext, out: &mut NameSet) {
        match e {
            LmContext::CoVar(a) => self.covar(a, out),
            LmContext::AppTo(u, b) => {
                self.term(u, out);
                self.covar(b, out);
            }
            LmContext::ArgStack(h, u) => {
                self.context(h, out);
                self.term(u, out);
            }
        }
    }

    fn covar(&self, a: &CoVarName, out: &mut NameSet) {
        if !self.covars.contains(&a) {
            out.covars.insert(a.clone());
        }
    }
}

/// Renames every binder after its depth so that α-equivalent subjects
/// become structurally equal. Canonical names start with `#`, which no
/// parsed identifier can.
pub(crate) struct Canon {
    vars: Vec<(VarName, VarName)>,
    covars: Vec<(CoVarName, CoVarName)>,
    junk_reserved: bool,
}

impl Canon {
    pub(crate) fn new(junk_reserved: bool) -> Self {
        Canon {
            vars: Vec::new(),
            covars: Vec::new(),
            junk_reserved,
        }
    }

    pub(crate) fn var(&self, x: &VarName) -> VarName {
        self.vars
            .iter()
            .rev()
            .find(|(from, _)| from == x)
            .map_or_else(|| x.clone(), |(_, to)| to.clone())
    }

    pub(crate) fn covar(&self, a: &CoVarName) -> CoVarName {
        match self.covars.iter().rev().find(|(from, _)| from == a) {
            Some((_, to)) => to.clone(),
            None if self.junk_reserved && a.is_reserved() => CoVarName::new("#k"),
            None => a.clone(),
        }
    }

    pub(crate) fn bind_var(&mut self, x: &VarName) -> VarName {
        let to = VarName::new(format!("#{}", self.vars.len()));
        self.vars.push((x.clone(), to.clone()));
        to
    }

    pub(crate) fn bind_covar(&mut self, a: &CoVarName) -> CoVarName {
        let to = CoVarName::new(format!("#{}", self.covars.len()));
        self.covars.push((a.clone(), to.clone()));
        to
    }

    pub(crate) fn unbind_var(&mut self) {
        self.vars.pop();
    }

    pub(crate) fn unbind_covar(&mut self) {
        self.covars.pop();
    }

    fn term(&mut self, t: &LmTerm) -> LmTerm {
        match t {
            LmTerm::Var(x) => LmTerm::Var(self.var(x)),
            LmTerm::Lam(x, b) => {
                let x = self.bind_var(x);
                let b = self.term(b);
                self.unbind_var();
                LmTerm::Lam(x, Box::new(b))
            }
            LmTerm::App(f, a) => LmTerm::App(Box::new(self.term(f)), Box::new(self.term(a))),
            LmTerm::Mu(a, c) => {
                let a = self.bind_covar(a);
                let c = self.command(c);
                self.unbind_covar();
                LmTerm::Mu(a, Box::new(c))
            }
        }
    }

    fn command(&mut self, c: &LmCommand) -> LmCommand {
        LmCommand::new(self.covar(&c.covar), self.term(&c.body))
    }

    fn context(&mut self, e: &LmContext) -> LmContext {
        match e {
            LmContext::CoVar(a) => LmContext::CoVar(self.covar(a)),
            LmContext::AppTo(u, b) => LmContext::AppTo(Box::new(self.term(u)), self.covar(b)),
            LmContext::ArgStack(h, u) => {
                LmContext::ArgStack(Box::new(self.context(h)), Box::new(self.term(u)))
            }
        }
    }
}

impl fmt::Display for LmTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(self, f, true)
    }
}

impl fmt::Display for LmCommand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.covar)?;
        write_term(&self.body, f, true)
    }
}

impl fmt::Display for LmContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LmContext::CoVar(a) => write!(f, "[{}]#", a),
            LmContext::AppTo(u, b) => {
                write!(f, "[{}](", b)?;
                write_term(u, f, true)?;
                f.write_str(" #)")
            }
            LmContext::ArgStack(h, u) => {
                write!(f, "{} @ ", h)?;
                write_term(u, f, true)
            }
        }
    }
}

impl fmt::Display for LmSubject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LmSubject::Term(t) => t.fmt(f),
            LmSubject::Command(c) => c.fmt(f),
            LmSubject::Context(e) => e.fmt(f),
        }
    }
}

// `tail`: nothing that could continue an application follows this term, so
// a trailing binder may extend to the right without parentheses.
fn write_term(t: &LmTerm, f: &mut fmt::Formatter<'_>, tail: bool) -> fmt::Result {
    match t {
        LmTerm::Var(x) => write!(f, "{}", x),
        LmTerm::Lam(x, b) => {
            write!(f, "\\{}.", x)?;
            write_term(b, f, true)
        }
        LmTerm::Mu(a, c) => write!(f, "mu {}.{}", a, c),
        LmTerm::App(fun, arg) => {
            match **fun {
                LmTerm::App(..) => write_term(fun, f, false)?,
                LmTerm::Var(_) => write_term(fun, f, false)?,
                _ => {
                    f.write_str("(")?;
                    write_term(fun, f, true)?;
                    f.write_str(")")?;
                }
            }
            f.write_str(" ")?;
            match **arg {
                LmTerm::Var(_) => write_term(arg, f, false),
                LmTerm::Lam(..) | LmTerm::Mu(..) if tail => write_term(arg, f, true),
                _ => {
                    f.write_str("(")?;
                    write_term(arg, f, true)?;
                    f.write_str(")")
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn x() -> LmTerm {
        LmTerm::var("x")
    }

    #[test]
    fn free_names_of_closed_and_open_terms() {
        let id = LmTerm::lam("x", x());
        assert!(id.free_names().is_empty());

        let t = LmTerm::mu("a", LmCommand::named("a", x()));
        let fv = t.free_names();
        assert_eq!(fv.vars.len(), 1);
        assert!(fv.vars.contains(&VarName::from("x")));
        assert!(fv.covars.is_empty());
    }

    #[test]
    fn free_names_of_app_to_context() {
        let e = LmContext::app_to(LmTerm::var("y"), "b");
        let fv = e.free_names();
        assert_eq!(
            fv.vars.into_iter().collect::<Vec<_>>(),
            alloc::vec![VarName::from("y")]
        );
        assert_eq!(
            fv.covars.into_iter().collect::<Vec<_>>(),
            alloc::vec![CoVarName::from("b")]
        );
    }

    #[test]
    fn alpha_equivalence() {
        assert!(LmTerm::lam("x", x()).alpha_eq(&LmTerm::lam("y", LmTerm::var("y"))));
        let m1 = LmTerm::mu("a", LmCommand::named("a", x()));
        let m2 = LmTerm::mu("b", LmCommand::named("b", x()));
        assert!(m1.alpha_eq(&m2));
        let k = LmTerm::lam("x", LmTerm::lam("y", x()));
        let k2 = LmTerm::lam("x", LmTerm::lam("y", LmTerm::var("y")));
        assert!(!k.alpha_eq(&k2));
        // free names are never identified with bound ones
        assert!(!LmTerm::lam("x", LmTerm::var("y")).alpha_eq(&LmTerm::lam("y", LmTerm::var("y"))));
    }

    #[test]
    fn plugging_unfolds_each_context_form() {
        let c = LmContext::covar("a").plug(x());
        assert_eq!(c, LmCommand::named("a", x()));

        let u = LmTerm::var("u");
        let c = LmContext::app_to(u.clone(), "b").plug(LmTerm::var("t"));
        assert_eq!(c, LmCommand::named("b", LmTerm::app(u.clone(), LmTerm::var("t"))));

        let c = LmContext::arg_stack(LmContext::covar("g"), u.clone()).plug(LmTerm::var("t"));
        assert_eq!(c, LmCommand::named("g", LmTerm::app(LmTerm::var("t"), u)));
    }

    #[test]
    fn printing_uses_minimal_parentheses() {
        assert_eq!(LmTerm::lam("x", x()).to_string(), "\\x.x");
        let xyz = LmTerm::app(LmTerm::app(x(), LmTerm::var("y")), LmTerm::var("z"));
        assert_eq!(xyz.to_string(), "x y z");
        let xyz = LmTerm::app(x(), LmTerm::app(LmTerm::var("y"), LmTerm::var("z")));
        assert_eq!(xyz.to_string(), "x (y z)");
        let t = LmTerm::app(LmTerm::app(x(), LmTerm::lam("y", LmTerm::var("y"))), LmTerm::var("z"));
        assert_eq!(t.to_string(), "x (\\y.y) z");
        let t = LmTerm::app(x(), LmTerm::lam("y", LmTerm::var("y")));
        assert_eq!(t.to_string(), "x \\y.y");
        let t = LmTerm::app(LmTerm::lam("y", LmTerm::var("y")), x());
        assert_eq!(t.to_string(), "(\\y.y) x");
        let e = LmContext::arg_stack(LmContext::app_to(LmTerm::var("y"), "b"), LmTerm::var("z"));
        assert_eq!(e.to_string(), "['b](y #) @ z");
        let m = LmTerm::mu("a", LmCommand::named("a", x()));
        assert_eq!(m.to_string(), "mu 'a.['a]x");
    }

    #[test]
    fn navigation_and_replacement() {
        let s = LmSubject::Term(LmTerm::app(LmTerm::lam("x", x()), LmTerm::var("y")));
        assert_eq!(s.at(&[0, 0]), Some(LmSubject::Term(x())));
        let r = s.replace_at(&[1], LmSubject::Term(LmTerm::var("z"))).unwrap();
        assert_eq!(r.to_string(), "(\\x.x) z");
        assert!(s.replace_at(&[1], LmSubject::Context(LmContext::covar("a"))).is_none());
        assert!(s.at(&[2]).is_none());
    }

    #[test]
    fn measure_counts_application_subtrees() {
        let s = LmSubject::Term(LmTerm::app(LmTerm::app(x(), x()), x()));
        let m = s.measure();
        assert_eq!(m.nodes, 5);
        assert_eq!(m.secondary, alloc::vec![5, 3]);
    }
}
