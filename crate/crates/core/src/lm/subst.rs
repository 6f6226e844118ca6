//! Capture-avoiding substitution of λ-variables by terms and of
//! μ-variables by contexts.

use alloc::boxed::Box;

use super::{LmCommand, LmContext, LmSubject, LmTerm};
use crate::error::KernelError;
use crate::name::{CoVarName, Fresh, NameSet, VarName};

#[derive(Clone, Copy)]
enum Target<'a> {
    Var(&'a VarName, &'a LmTerm),
    CoVar(&'a CoVarName, &'a LmContext),
}

struct Subst<'a, 'f> {
    target: Target<'a>,
    /// Free names of the replacement.
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

    fn occurs_in_term(&self, t: &LmTerm) -> bool {
        match self.target {
            Target::Var(x, _) => t.count_var(x) > 0,
            Target::CoVar(a, _) => t.count_covar(a) > 0,
        }
    }

    fn occurs_in_command(&self, c: &LmCommand) -> bool {
        match self.target {
            Target::Var(x, _) => c.body.count_var(x) > 0,
            Target::CoVar(a, _) => c.count_covar(a) > 0,
        }
    }

    fn term(&mut self, t: &LmTerm) -> LmTerm {
        match t {
            LmTerm::Var(y) => match self.target {
                Target::Var(x, u) if x == y => u.clone(),
                _ => t.clone(),
            },
            LmTerm::Lam(y, b) => {
                if matches!(self.target, Target::Var(x, _) if x == y) || !self.occurs_in_term(b) {
                    return t.clone();
                }
                if self.fv.vars.contains(y) {
                    let y2 = self.fresh.var(y.as_str());
                    let renamed = rename_var_term(b, y, &y2, self.fresh);
                    LmTerm::Lam(y2, Box::new(self.term(&renamed)))
                } else {
                    LmTerm::Lam(y.clone(), Box::new(self.term(b)))
                }
            }
            LmTerm::App(f, a) => LmTerm::App(Box::new(self.term(f)), Box::new(self.term(a))),
            LmTerm::Mu(b, c) => {
                if matches!(self.target, Target::CoVar(a, _) if a == b)
                    || !self.occurs_in_command(c)
                {
                    return t.clone();
                }
                if self.fv.covars.contains(b) {
                    let b2 = self.fresh.covar(b.as_str());
                    let renamed = rename_covar_command(c, b, &b2, self.fresh);
                    LmTerm::Mu(b2, Box::new(self.command(&renamed)))
                } else {
                    LmTerm::Mu(b.clone(), Box::new(self.command(c)))
                }
            }
        }
    }

    fn command(&mut self, c: &LmCommand) -> LmCommand {
        let body = self.term(&c.body);
        match self.target {
            Target::CoVar(a, e) if *a == c.covar => e.plug(body),
            _ => LmCommand::new(c.covar.clone(), body),
        }
    }

    fn context(&mut self, e: &LmContext) -> Result<LmContext, KernelError> {
        Ok(match e {
            LmContext::CoVar(b) => match self.target {
                Target::CoVar(a, h) if a == b => h.clone(),
                _ => e.clone(),
            },
            LmContext::AppTo(u, b) => {
                let u = Box::new(self.term(u));
                match self.target {
                    Target::CoVar(a, h) if a == b => match h {
                        LmContext::CoVar(b2) => LmContext::AppTo(u, b2.clone()),
                        _ => {
                            return Err(KernelError::UnrepresentableContext {
                                covar: alloc::format!("{}", a),
                            })
                        }
                    },
                    _ => LmContext::AppTo(u, b.clone()),
                }
            }
            LmContext::ArgStack(h, u) => {
                LmContext::ArgStack(Box::new(self.context(h)?), Box::new(self.term(u)))
            }
        })
    }
}

fn rename_var_term(t: &LmTerm, from: &VarName, to: &VarName, fresh: &mut Fresh) -> LmTerm {
    let to = LmTerm::Var(to.clone());
    Subst::new(Target::Var(from, &to), fresh).term(t)
}

fn rename_covar_command(
    c: &LmCommand,
    from: &CoVarName,
    to: &CoVarName,
    fresh: &mut Fresh,
) -> LmCommand {
    let to = LmContext::CoVar(to.clone());
    Subst::new(Target::CoVar(from, &to), fresh).command(c)
}

fn fresh_for(subject: &LmSubject, extra: &LmSubject) -> Fresh {
    Fresh::avoiding(&subject.all_names().union(&extra.all_names()))
}

impl LmTerm {
    /// `self[x:=u]`
    pub fn subst_var(&self, x: &VarName, u: &LmTerm) -> LmTerm {
        self.subst_var_with(x, u, &mut term_fresh(self, u))
    }

    pub fn subst_var_with(&self, x: &VarName, u: &LmTerm, fresh: &mut Fresh) -> LmTerm {
        Subst::new(Target::Var(x, u), fresh).term(self)
    }

    /// `self[α:=e]`: every `[α]w` becomes `e⟨w[α:=e]⟩`.
    pub fn subst_covar(&self, a: &CoVarName, e: &LmContext) -> LmTerm {
        let mut fresh = fresh_for(
            &LmSubject::Term(self.clone()),
            &LmSubject::Context(e.clone()),
        );
        self.subst_covar_with(a, e, &mut fresh)
    }

    pub fn subst_covar_with(&self, a: &CoVarName, e: &LmContext, fresh: &mut Fresh) -> LmTerm {
        Subst::new(Target::CoVar(a, e), fresh).term(self)
    }
}

fn term_fresh(t: &LmTerm, u: &LmTerm) -> Fresh {
    fresh_for(&LmSubject::Term(t.clone()), &LmSubject::Term(u.clone()))
}

impl LmCommand {
    pub fn subst_var(&self, x: &VarName, u: &LmTerm) -> LmCommand {
        let mut fresh = fresh_for(
            &LmSubject::Command(self.clone()),
            &LmSubject::Term(u.clone()),
        );
        self.subst_var_with(x, u, &mut fresh)
    }

    pub fn subst_var_with(&self, x: &VarName, u: &LmTerm, fresh: &mut Fresh) -> LmCommand {
        Subst::new(Target::Var(x, u), fresh).command(self)
    }

    pub fn subst_covar(&self, a: &CoVarName, e: &LmContext) -> LmCommand {
        let mut fresh = fresh_for(
            &LmSubject::Command(self.clone()),
            &LmSubject::Context(e.clone()),
        );
        self.subst_covar_with(a, e, &mut fresh)
    }

    pub fn subst_covar_with(
        &self,
        a: &CoVarName,
        e: &LmContext,
        fresh: &mut Fresh,
    ) -> LmCommand {
        Subst::new(Target::CoVar(a, e), fresh).command(self)
    }
}

impl LmContext {
    pub fn subst_var(&self, x: &VarName, u: &LmTerm) -> LmContext {
        let mut fresh = fresh_for(
            &LmSubject::Context(self.clone()),
            &LmSubject::Term(u.clone()),
        );
        Subst::new(Target::Var(x, u), &mut fresh)
            .context(self)
            .expect("variable substitution never reshapes a context")
    }

    /// Fails when `self` contains `AppTo(u, α)` and `e` is not a bare
    /// covariable: `e⟨u □⟩` has no context form.
    pub fn subst_covar(&self, a: &CoVarName, e: &LmContext) -> Result<LmContext, KernelError> {
        let mut fresh = fresh_for(
            &LmSubject::Context(self.clone()),
            &LmSubject::Context(e.clone()),
        );
        Subst::new(Target::CoVar(a, e), &mut fresh).context(self)
    }
}

impl LmSubject {
    pub fn subst_var(&self, x: &VarName, u: &LmTerm) -> LmSubject {
        match self {
            LmSubject::Term(t) => LmSubject::Term(t.subst_var(x, u)),
            LmSubject::Command(c) => LmSubject::Command(c.subst_var(x, u)),
            LmSubject::Context(e) => LmSubject::Context(e.subst_var(x, u)),
        }
    }

    pub fn subst_covar(&self, a: &CoVarName, e: &LmContext) -> Result<LmSubject, KernelError> {
        Ok(match self {
            LmSubject::Term(t) => LmSubject::Term(t.subst_covar(a, e)),
            LmSubject::Command(c) => LmSubject::Command(c.subst_covar(a, e)),
            LmSubject::Context(h) => LmSubject::Context(h.subst_covar(a, e)?),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn v(x: &str) -> LmTerm {
        LmTerm::var(x)
    }

    #[test]
    fn variable_substitution() {
        let id_y = LmTerm::lam("y", v("y"));
        assert_eq!(v("x").subst_var(&"x".into(), &id_y), id_y);

        let id = LmTerm::lam("x", v("x"));
        assert_eq!(id.subst_var(&"x".into(), &v("u")), id);
    }

    #[test]
    fn variable_substitution_avoids_capture() {
        // (λy.x y)[x:=y]
        let t = LmTerm::lam("y", LmTerm::app(v("x"), v("y")));
        let r = t.subst_var(&"x".into(), &v("y"));
        let LmTerm::Lam(b, body) = &r else {
            panic!("expected an abstraction, got {}", r)
        };
        assert_ne!(b.as_str(), "y");
        assert_eq!(**body, LmTerm::app(v("y"), LmTerm::Var(b.clone())));
        assert!(r.free_names().vars.contains(&VarName::from("y")));
        assert_eq!(r.free_names().vars.len(), 1);
    }

    #[test]
    fn structural_substitution() {
        // ([α]x)[α := ArgStack(CoVar α, y)] = [α](x y)
        let c = LmCommand::named("a", v("x"));
        let e = LmContext::arg_stack(LmContext::covar("a"), v("y"));
        let r = c.subst_covar(&"a".into(), &e);
        assert_eq!(r, LmCommand::named("a", LmTerm::app(v("x"), v("y"))));

        let c = LmCommand::named("b", v("x"));
        assert_eq!(c.subst_covar(&"a".into(), &e), c);

        // (λz.μγ.[α]z)[α := β] = λz.μγ.[β]z
        let t = LmTerm::lam("z", LmTerm::mu("g", LmCommand::named("a", v("z"))));
        let r = t.subst_covar(&"a".into(), &LmContext::covar("b"));
        assert_eq!(r.to_string(), "\\z.mu 'g.['b]z");
    }

    #[test]
    fn structural_substitution_avoids_capture() {
        // (μβ.[α]x)[α := ['b](u #)] must not let β capture the context's 'b
        let t = LmTerm::mu("b", LmCommand::named("a", v("x")));
        let e = LmContext::app_to(v("u"), "b");
        let r = t.subst_covar(&"a".into(), &e);
        let LmTerm::Mu(b2, c) = &r else { panic!() };
        assert_ne!(b2.as_str(), "b");
        assert_eq!(c.covar, CoVarName::from("b"));
        assert!(r.free_names().covars.contains(&CoVarName::from("b")));
    }

    #[test]
    fn context_substitution() {
        let e = LmContext::arg_stack(LmContext::app_to(v("y"), "a"), v("z"));
        let r = e.subst_covar(&"a".into(), &LmContext::covar("b")).unwrap();
        assert_eq!(r.to_string(), "['b](y #) @ z");
        let bad = e.subst_covar(&"a".into(), &LmContext::arg_stack(LmContext::covar("b"), v("w")));
        assert!(matches!(bad, Err(KernelError::UnrepresentableContext { .. })));
        let stack = LmContext::arg_stack(LmContext::covar("a"), v("z"));
        let r = stack
            .subst_covar(&"a".into(), &LmContext::arg_stack(LmContext::covar("b"), v("w")))
            .unwrap();
        assert_eq!(r.to_string(), "['b]# @ w @ z");
    }
}
