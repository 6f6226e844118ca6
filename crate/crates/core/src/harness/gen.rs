//! Seeded random subjects of exact or bounded size, scope-aware, optionally
//! restricted to a fragment or to typable subjects.

use alloc::boxed::Box;
use alloc::vec::Vec;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::lm::{LmCommand, LmContext, LmSubject, LmTerm};
use crate::lmm::{LbCommand, LbContext, LbSubject, LbTerm};
use crate::name::{CoVarName, VarName};
use crate::typing::{infer_lm, infer_lmm};

const VARS: [&str; 3] = ["x", "y", "z"];
const COVARS: [&str; 3] = ["a", "b", "c"];
/// Retries for generate-and-filter.
const ATTEMPTS: usize = 500;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sort {
    Term,
    Command,
    Context,
}

impl Sort {
    pub fn name(self) -> &'static str {
        match self {
            Sort::Term => "term",
            Sort::Command => "command",
            Sort::Context => "context",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Calc {
    Lm,
    Lmm,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Fragment {
    #[default]
    Any,
    /// Cons tails are stacks.
    T,
    /// Cons heads are values.
    Q,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    pub max_size: usize,
    pub calc: Calc,
    pub sort: Sort,
    pub fragment: Fragment,
    pub typable_only: bool,
}

impl GenConfig {
    pub fn new(calc: Calc, sort: Sort, seed: u64, max_size: usize) -> Self {
        GenConfig {
            seed,
            max_size,
            calc,
            sort,
            fragment: Fragment::Any,
            typable_only: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("no {sort} of size at most {max_size} exists")]
    Infeasible { sort: &'static str, max_size: usize },
    #[error("no typable subject found after {0} attempts")]
    Exhausted(usize),
}

/// A generated subject of either calculus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generated {
    Lm(LmSubject),
    Lmm(LbSubject),
}

pub fn gen(cfg: &GenConfig) -> Result<Generated, GenError> {
    let mut g = Gen::new(cfg.seed);
    match cfg.calc {
        Calc::Lm => g.lm_subject(cfg.sort, cfg.max_size, cfg.typable_only).map(Generated::Lm),
        Calc::Lmm => g
            .lb_subject(cfg.sort, cfg.max_size, cfg.fragment, cfg.typable_only)
            .map(Generated::Lmm),
    }
}

fn lm_feasible(sort: Sort, n: usize) -> bool {
    match sort {
        Sort::Term | Sort::Context => n >= 1,
        Sort::Command => n >= 2,
    }
}

fn lb_feasible(sort: Sort, n: usize) -> bool {
    match sort {
        Sort::Term => n >= 1,
        Sort::Command => n >= 3,
        Sort::Context => n == 1 || n >= 3,
    }
}

/// A seeded generator; several pieces drawn from one `Gen` are independent
/// but reproducible.
pub struct Gen {
    rng: ChaCha8Rng,
    pub(crate) vars: Vec<VarName>,
    pub(crate) covars: Vec<CoVarName>,
    /// Draw without μ-abstractions.
    pure: bool,
    /// λμ argument-stack arguments must be values.
    pub value_args: bool,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            vars: Vec::new(),
            covars: Vec::new(),
            pure: false,
            value_args: false,
        }
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    /// A size in `lo..=hi` satisfying `ok`, uniformly.
    fn size(&mut self, lo: usize, hi: usize, ok: impl Fn(usize) -> bool) -> Option<usize> {
        let sizes: Vec<usize> = (lo..=hi).filter(|&n| ok(n)).collect();
        (!sizes.is_empty()).then(|| sizes[self.below(sizes.len())])
    }

    fn pick<T: Clone>(&mut self, items: &[T]) -> T {
        items[self.below(items.len())].clone()
    }

    pub fn var(&mut self) -> VarName {
        if !self.vars.is_empty() && self.chance(0.7) {
            let bound = self.vars.clone();
            self.pick(&bound)
        } else {
            VarName::from(self.pick(&VARS))
        }
    }

    pub fn covar(&mut self) -> CoVarName {
        if !self.covars.is_empty() && self.chance(0.7) {
            let bound = self.covars.clone();
            self.pick(&bound)
        } else {
            CoVarName::from(self.pick(&COVARS))
        }
    }

    fn binder(&mut self) -> VarName {
        VarName::from(self.pick(&VARS))
    }

    fn cobinder(&mut self) -> CoVarName {
        CoVarName::from(self.pick(&COVARS))
    }

    /// Split `n` into `(a, n - a)` with `a ≥ 1` and both parts acceptable.
    fn split(&mut self, n: usize, left: impl Fn(usize) -> bool, right: impl Fn(usize) -> bool) -> Option<(usize, usize)> {
        let a = self.size(1, n.saturating_sub(1), |a| left(a) && right(n - a))?;
        Some((a, n - a))
    }

    // ---- λμ ----

    pub fn lm_subject(&mut self, sort: Sort, max_size: usize, typable_only: bool) -> Result<LmSubject, GenError> {
        let infeasible = GenError::Infeasible {
            sort: sort.name(),
            max_size,
        };
        for _ in 0..if typable_only { ATTEMPTS } else { 1 } {
            let n = self.size(1, max_size, |n| lm_feasible(sort, n)).ok_or(infeasible)?;
            self.pure = self.chance(0.25);
            let s = match sort {
                Sort::Term => LmSubject::Term(self.lm_term(n)),
                Sort::Command => LmSubject::Command(self.lm_command(n)),
                Sort::Context => LmSubject::Context(self.lm_context(n)),
            };
            self.pure = false;
            if !typable_only || infer_lm(&s).is_ok() {
                return Ok(s);
            }
        }
        Err(GenError::Exhausted(ATTEMPTS))
    }

    /// A λμ term of exactly `n` nodes.
    pub fn lm_term(&mut self, n: usize) -> LmTerm {
        let mut choices = Vec::new();
        if n == 1 {
            return LmTerm::Var(self.var());
        }
        choices.push(0);
        if n >= 3 {
            choices.push(1);
            if !self.pure {
                choices.push(2);
            }
        }
        match self.pick(&choices) {
            0 => {
                let x = self.binder();
                self.vars.push(x.clone());
                let b = self.lm_term(n - 1);
                self.vars.pop();
                LmTerm::Lam(x, Box::new(b))
            }
            1 => {
                let (a, b) = self.split(n - 1, |_| true, |_| true).expect("n ≥ 3");
                let f = self.lm_term(a);
                LmTerm::App(Box::new(f), Box::new(self.lm_term(b)))
            }
            _ => {
                let a = self.cobinder();
                self.covars.push(a.clone());
                let c = self.lm_command(n - 1);
                self.covars.pop();
                LmTerm::Mu(a, Box::new(c))
            }
        }
    }

    pub fn lm_value(&mut self, n: usize) -> LmTerm {
        if n == 1 {
            return LmTerm::Var(self.var());
        }
        let x = self.binder();
        self.vars.push(x.clone());
        let b = self.lm_term(n - 1);
        self.vars.pop();
        LmTerm::Lam(x, Box::new(b))
    }

    pub fn lm_command(&mut self, n: usize) -> LmCommand {
        let a = self.covar();
        LmCommand::new(a, self.lm_term(n - 1))
    }

    pub fn lm_context(&mut self, n: usize) -> LmContext {
        let mut choices = Vec::new();
        if n == 1 {
            return LmContext::CoVar(self.covar());
        }
        choices.push(0);
        if n >= 3 {
            choices.push(1);
        }
        match self.pick(&choices) {
            0 => {
                let u = self.lm_term(n - 1);
                LmContext::AppTo(Box::new(u), self.covar())
            }
            _ => {
                let (a, b) = self.split(n - 1, |_| true, |_| true).expect("n ≥ 3");
                let h = self.lm_context(a);
                let u = if self.value_args { self.lm_value(b) } else { self.lm_term(b) };
                LmContext::ArgStack(Box::new(h), Box::new(u))
            }
        }
    }

    /// A λμ context of size at most `max` (at least 1).
    pub fn lm_context_up_to(&mut self, max: usize) -> LmContext {
        let n = self.size(1, max.max(1), |_| true).unwrap_or(1);
        self.lm_context(n)
    }

    pub fn lm_term_up_to(&mut self, max: usize) -> LmTerm {
        let n = self.size(1, max.max(1), |_| true).unwrap_or(1);
        self.lm_term(n)
    }

    pub fn lm_command_up_to(&mut self, max: usize) -> LmCommand {
        let n = self.size(2, max.max(2), |_| true).unwrap_or(2);
        self.lm_command(n)
    }

    // ---- λ̄μμ̃ ----

    pub fn lb_subject(
        &mut self,
        sort: Sort,
        max_size: usize,
        fragment: Fragment,
        typable_only: bool,
    ) -> Result<LbSubject, GenError> {
        let infeasible = GenError::Infeasible {
            sort: sort.name(),
            max_size,
        };
        for _ in 0..if typable_only { ATTEMPTS } else { 1 } {
            let n = self.size(1, max_size, |n| lb_feasible(sort, n)).ok_or(infeasible)?;
            let s = match sort {
                Sort::Term => LbSubject::Term(self.lb_term(n, fragment)),
                Sort::Command => LbSubject::Command(self.lb_command(n, fragment)),
                Sort::Context => LbSubject::Context(self.lb_context(n, fragment)),
            };
            if !typable_only || infer_lmm(&s).is_ok() {
                return Ok(s);
            }
        }
        Err(GenError::Exhausted(ATTEMPTS))
    }

    pub fn lb_term(&mut self, n: usize, fragment: Fragment) -> LbTerm {
        if n == 1 {
            return LbTerm::Var(self.var());
        }
        let mu = n >= 4 && self.chance(0.5);
        if mu {
            let a = self.cobinder();
            self.covars.push(a.clone());
            let c = self.lb_command(n - 1, fragment);
            self.covars.pop();
            LbTerm::Mu(a, Box::new(c))
        } else {
            let x = self.binder();
            self.vars.push(x.clone());
            let b = self.lb_term(n - 1, fragment);
            self.vars.pop();
            LbTerm::Lam(x, Box::new(b))
        }
    }

    fn lb_value(&mut self, n: usize, fragment: Fragment) -> LbTerm {
        if n == 1 {
            return LbTerm::Var(self.var());
        }
        let x = self.binder();
        self.vars.push(x.clone());
        let b = self.lb_term(n - 1, fragment);
        self.vars.pop();
        LbTerm::Lam(x, Box::new(b))
    }

    pub fn lb_command(&mut self, n: usize, fragment: Fragment) -> LbCommand {
        let (a, b) = self
            .split(n - 1, |_| true, |b| lb_feasible(Sort::Context, b))
            .expect("command of size ≥ 3");
        let t = self.lb_term(a, fragment);
        LbCommand::cut(t, self.lb_context(b, fragment))
    }

    pub fn lb_context(&mut self, n: usize, fragment: Fragment) -> LbContext {
        if n == 1 {
            return LbContext::CoVar(self.covar());
        }
        let tilde = n >= 4 && self.chance(0.4);
        if tilde {
            let x = self.binder();
            self.vars.push(x.clone());
            let c = self.lb_command(n - 1, fragment);
            self.vars.pop();
            return LbContext::MuTilde(x, Box::new(c));
        }
        self.lb_cons(n, fragment)
    }

    fn lb_cons(&mut self, n: usize, fragment: Fragment) -> LbContext {
        let (a, b) = self
            .split(n - 1, |_| true, |b| lb_feasible(Sort::Context, b))
            .expect("context of size ≥ 3");
        let head = match fragment {
            Fragment::Q => self.lb_value(a, fragment),
            _ => self.lb_term(a, fragment),
        };
        let tail = match fragment {
            Fragment::T => self.lb_stack(b, fragment),
            _ => self.lb_context(b, fragment),
        };
        LbContext::Cons(Box::new(head), Box::new(tail))
    }

    fn lb_stack(&mut self, n: usize, fragment: Fragment) -> LbContext {
        if n == 1 {
            LbContext::CoVar(self.covar())
        } else {
            self.lb_cons(n, fragment)
        }
    }

    pub fn lb_term_up_to(&mut self, max: usize, fragment: Fragment) -> LbTerm {
        let n = self.size(1, max.max(1), |_| true).unwrap_or(1);
        self.lb_term(n, fragment)
    }

    pub fn lb_context_up_to(&mut self, max: usize, fragment: Fragment) -> LbContext {
        let n = self.size(1, max.max(1), |n| lb_feasible(Sort::Context, n)).unwrap_or(1);
        self.lb_context(n, fragment)
    }

    pub fn pick_var(&mut self) -> VarName {
        VarName::from(self.pick(&VARS))
    }

    pub fn pick_covar(&mut self) -> CoVarName {
        CoVarName::from(self.pick(&COVARS))
    }
}
