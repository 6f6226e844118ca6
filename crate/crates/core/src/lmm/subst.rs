//! Capture-avoiding substitution of variables by terms and of covariables
//! by contexts.

use alloc::boxed::Box;

use super::{LbCommand, LbContext, LbSubject, LbTerm};
use crate::name::{CoVarName, Fresh, NameSet, VarName};

#[derive(Clone, Copy)]
enum Target<'a> {
    Var(&'a VarName, &'a LbTerm),
    CoVar(&'a CoVarName, &'a LbContext),
}

struct Subst<'a, 'f> {
    target: Target<'a>,
    fv: NameSet,
    fresh: &'f mut Fresh,
}

impl<'a, 'f> Subst<'a, 'f> {
    fn new(target: Target<'a>, fresh: &'f mut Fresh) -> Self {
        let fv = match target {
            Target::Var(_, u) => u.free_names(),
            Target::CoVar(_, e) => e.free_names(),
        };
        Subst { target, fv, fresh }
    }

    fn occurs(&self, c: &LbCommand) -> bool {
        match self.target {
            Target::Var(x, _) => c.count_var(x) > 0,
            Target::CoVar(a, _) => c.count_covar(a) > 0,
        }
    }

    fn shadows_var(&self, y: &VarName) -> bool {
        matches!(self.target, Target::Var(x, _) if x == y)
    }

    /// The binder `y` of `body`, renamed if it could capture a free
    /// variable of the replacement.
    fn bind_var(&mut self, y: &VarName, body: &LbCommand) -> (VarName, LbCommand) {
        if !self.fv.vars.contains(y) {
            return (y.clone(), self.command(body));
        }
        let y2 = self.fresh.var(y.as_str());
        let to = LbTerm::Var(y2.clone());
        let renamed = Subst::new(Target::Var(y, &to), self.fresh).command(body);
        (y2, self.command(&renamed))
    }

    fn term(&mut self, t: &LbTerm) -> LbTerm {
        match t {
            LbTerm::Var(y) => match self.target {
                Target::Var(x, u) if x == y => u.clone(),
                _ => t.clone(),
            },
            LbTerm::Lam(y, b) => {
                let occurs = match self.target {
                    Target::Var(x, _) => b.count_var(x) > 0,
                    Target::CoVar(a, _) => b.count_covar(a) > 0,
                };
                if self.shadows_var(y) || !occurs {
                    return t.clone();
                }
                if self.fv.vars.contains(y) {
                    let y2 = self.fresh.var(y.as_str());
                    let to = LbTerm::Var(y2.clone());
                    let renamed = Subst::new(Target::Var(y, &to), self.fresh).term(b);
                    LbTerm::Lam(y2, Box::new(self.term(&renamed)))
                } else {
                    LbTerm::Lam(y.clone(), Box::new(self.term(b)))
                }
            }
            LbTerm::Mu(b, c) => {
                if matches!(self.target, Target::CoVar(a, _) if a == b) || !self.occurs(c) {
                    return t.clone();
                }
                if self.fv.covars.contains(b) {
                    let b2 = self.fresh.covar(b.as_str());
                    let to = LbContext::CoVar(b2.clone());
                    let renamed = Subst::new(Target::CoVar(b, &to), self.fresh).command(c);
                    LbTerm::Mu(b2, Box::new(self.command(&renamed)))
                } else {
                    LbTerm::Mu(b.clone(), Box::new(self.command(c)))
                }
            }
        }
    }

    fn command(&mut self, c: &LbCommand) -> LbCommand {
        LbCommand::cut(self.term(&c.term), self.context(&c.context))
    }

    fn context(&mut self, e: &LbContext) -> LbContext {
        match e {
            LbContext::CoVar(b) => match self.target {
                Target::CoVar(a, h) if a == b => h.clone(),
                _ => e.clone(),
            },
            LbContext::Cons(t, e) => LbContext::cons(self.term(t), self.context(e)),
            LbContext::MuTilde(y, c) => {
                if self.shadows_var(y) || !self.occurs(c) {
                    return e.clone();
                }
                let (y2, c2) = self.bind_var(y, c);
                LbContext::MuTilde(y2, Box::new(c2))
            }
        }
    }
}

fn fresh_for(a: &LbSubject, b: &LbSubject) -> Fresh {
    Fresh::avoiding(&a.all_names().union(&b.all_names()))
}

impl LbSubject {
    /// `self[x:=u]`
    pub fn subst_var(&self, x: &VarName, u: &LbTerm) -> LbSubject {
        let mut fresh = fresh_for(self, &LbSubject::Term(u.clone()));
        self.subst_var_with(x, u, &mut fresh)
    }

    pub fn subst_var_with(&self, x: &VarName, u: &LbTerm, fresh: &mut Fresh) -> LbSubject {
        let mut s = Subst::new(Target::Var(x, u), fresh);
        match self {
            LbSubject::Term(t) => LbSubject::Term(s.term(t)),
            LbSubject::Command(c) => LbSubject::Command(s.command(c)),
            LbSubject::Context(e) => LbSubject::Context(s.context(e)),
        }
    }

    /// `self[α:=e]`: every context occurrence of `α` becomes `e`.
    pub fn subst_covar(&self, a: &CoVarName, e: &LbContext) -> LbSubject {
        let mut fresh = fresh_for(self, &LbSubject::Context(e.clone()));
        self.subst_covar_with(a, e, &mut fresh)
    }

    pub fn subst_covar_with(&self, a: &CoVarName, e: &LbContext, fresh: &mut Fresh) -> LbSubject {
        let mut s = Subst::new(Target::CoVar(a, e), fresh);
        match self {
            LbSubject::Term(t) => LbSubject::Term(s.term(t)),
            LbSubject::Command(c) => LbSubject::Command(s.command(c)),
            LbSubject::Context(h) => LbSubject::Context(s.context(h)),
        }
    }
}

impl LbCommand {
    pub fn subst_var(&self, x: &VarName, u: &LbTerm) -> LbCommand {
        match LbSubject::Command(self.clone()).subst_var(x, u) {
            LbSubject::Command(c) => c,
            _ => unreachable!(),
        }
    }

    pub fn subst_covar(&self, a: &CoVarName, e: &LbContext) -> LbCommand {
        match LbSubject::Command(self.clone()).subst_covar(a, e) {
            LbSubject::Command(c) => c,
            _ => unreachable!(),
        }
    }
}

impl LbTerm {
    pub fn subst_var(&self, x: &VarName, u: &LbTerm) -> LbTerm {
        match LbSubject::Term(self.clone()).subst_var(x, u) {
            LbSubject::Term(t) => t,
            _ => unreachable!(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn v(x: &str) -> LbTerm {
        LbTerm::var(x)
    }

    #[test]
    fn examples() {
        let c = LbCommand::cut(v("x"), LbContext::covar("a"));
        let r = c.subst_covar(&"a".into(), &LbContext::cons(v("y"), LbContext::covar("b")));
        assert_eq!(r.to_string(), "<x|y*'b>");
        let r = c.subst_var(&"x".into(), &LbTerm::lam("y", v("y")));
        assert_eq!(r.to_string(), "<\\y.y|'a>");
    }

    #[test]
    fn mu_tilde_binder_is_renamed() {
        // (μ̃x.⟨x|α⟩)[α := x·β]
        let e = LbSubject::Context(LbContext::mu_tilde(
            "x",
            LbCommand::cut(v("x"), LbContext::covar("a")),
        ));
        let r = e.subst_covar(&"a".into(), &LbContext::cons(v("x"), LbContext::covar("b")));
        let LbSubject::Context(LbContext::MuTilde(x2, c)) = &r else { panic!() };
        assert_ne!(x2.as_str(), "x");
        assert_eq!(
            **c,
            LbCommand::cut(
                LbTerm::Var(x2.clone()),
                LbContext::cons(v("x"), LbContext::covar("b"))
            )
        );
    }

    #[test]
    fn shadowing_stops_substitution() {
        let t = LbSubject::Term(LbTerm::lam("x", v("x")));
        assert_eq!(t.subst_var(&"x".into(), &v("u")), t);
        let t = LbSubject::Term(LbTerm::mu("a", LbCommand::cut(v("x"), LbContext::covar("a"))));
        assert_eq!(t.subst_covar(&"a".into(), &LbContext::covar("b")), t);
    }
}
