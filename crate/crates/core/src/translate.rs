//! The translations between the calculi: `dag` from λμ to λ̄μμ̃ and `circ`
//! back. Fresh names are drawn against the whole subject.

use alloc::boxed::Box;

use crate::lm::{LmCommand, LmContext, LmSubject, LmTerm};
use crate::lmm::{LbCommand, LbContext, LbSubject, LbTerm};
use crate::name::Fresh;

/// λμ → λ̄μμ̃. An application `u v` becomes `μβ.⟨v|μ̃y.⟨u|y·β⟩⟩`.
pub fn dag(s: &LmSubject) -> LbSubject {
    dag_with(s, &mut Fresh::avoiding(&s.all_names()))
}

pub fn dag_with(s: &LmSubject, fresh: &mut Fresh) -> LbSubject {
    match s {
        LmSubject::Term(t) => LbSubject::Term(dag_term(t, fresh)),
        LmSubject::Command(c) => LbSubject::Command(dag_command(c, fresh)),
        LmSubject::Context(e) => LbSubject::Context(dag_context(e, fresh)),
    }
}

fn dag_term(t: &LmTerm, fresh: &mut Fresh) -> LbTerm {
    match t {
        LmTerm::Var(x) => LbTerm::Var(x.clone()),
        LmTerm::Lam(x, b) => LbTerm::Lam(x.clone(), Box::new(dag_term(b, fresh))),
        LmTerm::App(u, v) => {
            let y = fresh.var("y");
            let b = fresh.covar("b");
            let u = dag_term(u, fresh);
            let v = dag_term(v, fresh);
            let inner = LbCommand::cut(u, LbContext::cons(LbTerm::Var(y.clone()), LbContext::CoVar(b.clone())));
            LbTerm::Mu(b, Box::new(LbCommand::cut(v, LbContext::MuTilde(y, Box::new(inner)))))
        }
        LmTerm::Mu(a, c) => LbTerm::Mu(a.clone(), Box::new(dag_command(c, fresh))),
    }
}

fn dag_command(c: &LmCommand, fresh: &mut Fresh) -> LbCommand {
    LbCommand::cut(dag_term(&c.body, fresh), LbContext::CoVar(c.covar.clone()))
}

fn dag_context(e: &LmContext, fresh: &mut Fresh) -> LbContext {
    match e {
        LmContext::CoVar(a) => LbContext::CoVar(a.clone()),
        LmContext::AppTo(t, b) => {
            let y = fresh.var("y");
            let t = dag_term(t, fresh);
            let inner = LbCommand::cut(t, LbContext::cons(LbTerm::Var(y.clone()), LbContext::CoVar(b.clone())));
            LbContext::MuTilde(y, Box::new(inner))
        }
        LmContext::ArgStack(h, t) => {
            let h = dag_context(h, fresh);
            LbContext::cons(dag_term(t, fresh), h)
        }
    }
}

/// λ̄μμ̃ → λμ. A cut becomes a plugging and `μ̃x.c` becomes the context
/// `(λx.μδ.c)̂` named by a fresh reserved covariable `'k<n>`.
pub fn circ(s: &LbSubject) -> LmSubject {
    circ_with(s, &mut Fresh::avoiding(&s.all_names()))
}

pub fn circ_with(s: &LbSubject, fresh: &mut Fresh) -> LmSubject {
    match s {
        LbSubject::Term(t) => LmSubject::Term(circ_term(t, fresh)),
        LbSubject::Command(c) => LmSubject::Command(circ_command(c, fresh)),
        LbSubject::Context(e) => LmSubject::Context(circ_context(e, fresh)),
    }
}

fn circ_term(t: &LbTerm, fresh: &mut Fresh) -> LmTerm {
    match t {
        LbTerm::Var(x) => LmTerm::Var(x.clone()),
        LbTerm::Lam(x, b) => LmTerm::Lam(x.clone(), Box::new(circ_term(b, fresh))),
        LbTerm::Mu(a, c) => LmTerm::Mu(a.clone(), Box::new(circ_command(c, fresh))),
    }
}

fn circ_command(c: &LbCommand, fresh: &mut Fresh) -> LmCommand {
    let t = circ_term(&c.term, fresh);
    circ_context(&c.context, fresh).plug(t)
}

fn circ_context(e: &LbContext, fresh: &mut Fresh) -> LmContext {
    match e {
        LbContext::CoVar(a) => LmContext::CoVar(a.clone()),
        LbContext::Cons(t, h) => {
            let t = circ_term(t, fresh);
            LmContext::ArgStack(Box::new(circ_context(h, fresh)), Box::new(t))
        }
        LbContext::MuTilde(x, c) => {
            let d = fresh.covar("d");
            let k = fresh.reserved_covar();
            let body = LmTerm::Mu(d, Box::new(circ_command(c, fresh)));
            LmContext::AppTo(Box::new(LmTerm::Lam(x.clone(), Box::new(body))), k)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn dag_examples() {
        let c = LmSubject::Command(LmCommand::named("a", LmTerm::var("x")));
        assert_eq!(dag(&c).to_string(), "<x|'a>");

        let app = LmSubject::Term(LmTerm::app(LmTerm::var("x"), LmTerm::var("y")));
        let LbSubject::Term(LbTerm::Mu(b, cut)) = dag(&app) else { panic!() };
        let LbContext::MuTilde(z, inner) = &*cut.context else { panic!() };
        assert_eq!(*cut.term, LbTerm::var("y"));
        assert_eq!(
            **inner,
            LbCommand::cut(
                LbTerm::var("x"),
                LbContext::cons(LbTerm::Var(z.clone()), LbContext::CoVar(b.clone()))
            )
        );
        assert!(z.as_str() != "x" && z.as_str() != "y");

        let e = LmSubject::Context(LmContext::arg_stack(LmContext::covar("a"), LmTerm::var("t")));
        assert_eq!(dag(&e).to_string(), "t*'a");
    }

    #[test]
    fn dag_preserves_free_names() {
        let t = LmSubject::Term(LmTerm::app(
            LmTerm::lam("y", LmTerm::app(LmTerm::var("x"), LmTerm::var("y"))),
            LmTerm::mu("a", LmCommand::named("b", LmTerm::var("y"))),
        ));
        assert_eq!(dag(&t).free_names(), t.free_names());
    }

    #[test]
    fn circ_examples() {
        let c = LbSubject::Command(LbCommand::cut(LbTerm::var("x"), LbContext::covar("a")));
        assert_eq!(circ(&c).to_string(), "['a]x");

        let e = LbSubject::Context(LbContext::cons(LbTerm::var("y"), LbContext::covar("a")));
        assert_eq!(circ(&e).to_string(), "['a]# @ y");

        let e = LbSubject::Context(LbContext::mu_tilde(
            "x",
            LbCommand::cut(LbTerm::var("x"), LbContext::covar("a")),
        ));
        let LmSubject::Context(LmContext::AppTo(f, k)) = circ(&e) else { panic!() };
        assert!(k.is_reserved());
        let LmTerm::Lam(x, body) = &*f else { panic!() };
        assert_eq!(x.as_str(), "x");
        let LmTerm::Mu(d, cmd) = &**body else { panic!() };
        assert_eq!(cmd.to_string(), "['a]x");
        assert_ne!(d.as_str(), "a");
    }

    #[test]
    fn reserved_names_are_not_reused() {
        let e = LbSubject::Command(LbCommand::cut(
            LbTerm::var("x"),
            LbContext::mu_tilde("y", LbCommand::cut(LbTerm::var("y"), LbContext::covar("k0"))),
        ));
        let fv = circ(&e).free_names();
        assert!(fv.covars.contains(&"k0".into()));
        assert_eq!(fv.covars.len(), 2);
    }
}
