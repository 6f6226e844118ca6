//! Randomised instances of each check, one batch per seed.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::checks::*;
use super::gen::{Fragment, Gen, GenError, Sort};
use super::report::{CheckReport, Status};
use crate::lm::{LmStrategy, LmSubject};
use crate::lmm::{LbStrategy, LbSubject};
use crate::name::{CoVarName, VarName};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckName {
    Thm1,
    Thm2,
    Thm4,
    Thm5,
    Lemma1,
    Lemma2,
    Lemma5,
    Lemma6,
    Subst,
    Types,
    Nonconfluence,
    All,
}

impl CheckName {
    pub const ALL: [CheckName; 12] = [
        CheckName::Thm1,
        CheckName::Thm2,
        CheckName::Thm4,
        CheckName::Thm5,
        CheckName::Lemma1,
        CheckName::Lemma2,
        CheckName::Lemma5,
        CheckName::Lemma6,
        CheckName::Subst,
        CheckName::Types,
        CheckName::Nonconfluence,
        CheckName::All,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckName::Thm1 => "thm1",
            CheckName::Thm2 => "thm2",
            CheckName::Thm4 => "thm4",
            CheckName::Thm5 => "thm5",
            CheckName::Lemma1 => "lemma1",
            CheckName::Lemma2 => "lemma2",
            CheckName::Lemma5 => "lemma5",
            CheckName::Lemma6 => "lemma6",
            CheckName::Subst => "subst",
            CheckName::Types => "types",
            CheckName::Nonconfluence => "nonconfluence",
            CheckName::All => "all",
        }
    }

    /// Whether `--strategy` means anything to this check.
    pub fn takes_strategy(self) -> bool {
        matches!(self, CheckName::Thm4 | CheckName::Thm5 | CheckName::Lemma2 | CheckName::All)
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        CheckName::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| alloc::format!("unknown check '{}'", s))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Maximum node count of generated subjects.
    pub size: usize,
    /// `None` runs the free strategy.
    pub strategy: Option<LmStrategy>,
}

impl SuiteConfig {
    pub fn new(size: usize) -> Self {
        SuiteConfig { size, strategy: None }
    }

    fn lm(&self) -> LmStrategy {
        self.strategy.unwrap_or(LmStrategy::Free)
    }
}

const SR_STEPS: usize = 5;

/// The reports of check `name` on the instance drawn from `seed`.
pub fn run_instance(name: CheckName, seed: u64, cfg: &SuiteConfig) -> Vec<CheckReport> {
    let size = cfg.size.max(1);
    let mut g = Gen::new(seed);
    match name {
        CheckName::Thm1 => {
            let sort = if g.chance(0.5) { Sort::Term } else { Sort::Command };
            vec![check_thm1(&lm(&mut g, sort, size))]
        }
        CheckName::Thm2 => {
            let sort = any_lb_sort(&mut g, size);
            vec![check_thm2(&lb(&mut g, sort, size, Fragment::Any))]
        }
        CheckName::Thm4 => {
            let sort = if g.chance(0.5) { Sort::Term } else { Sort::Command };
            vec![check_thm4(&lm(&mut g, sort, size), cfg.lm())]
        }
        CheckName::Thm5 => {
            let Some(strategy) = lb_strategy(cfg.lm()) else {
                return vec![CheckReport::new("thm5", "cbv-os").with_status(Status::Falsified)];
            };
            let fragment = match strategy {
                LbStrategy::Free => Fragment::Any,
                LbStrategy::Cbn => Fragment::T,
                LbStrategy::Cbv => Fragment::Q,
            };
            let sort = if size >= 3 && g.chance(0.5) { Sort::Command } else { Sort::Term };
            let t = lb(&mut g, sort, size, fragment);
            vec![check_thm5(&t, strategy).expect("generated inside the fragment")]
        }
        CheckName::Lemma1 => vec![lemma1(&mut g, size)],
        CheckName::Lemma2 => {
            let strategy = cfg.lm();
            g.value_args = strategy == LmStrategy::Cbv;
            let e = g.lm_context_up_to(size / 2);
            let a = g.pick_covar();
            let c = scoped(&mut g, None, Some(&a), |g| g.lm_command_up_to(size / 2));
            vec![check_lemma2(&e, &a, &c, strategy, None)]
        }
        CheckName::Lemma5 => {
            let n = g.below(4);
            let each = (size / (n + 2)).max(1);
            let ts: Vec<_> = (0..=n).map(|_| g.lm_term_up_to(each)).collect();
            let e = g.lb_context_up_to(size / 2, Fragment::Any);
            vec![check_lemma5(&ts, &e)]
        }
        CheckName::Lemma6 => {
            let e = g.lm_context_up_to(size / 2);
            let t = g.lm_term_up_to(size / 2);
            vec![check_lemma6(&e, &t)]
        }
        CheckName::Subst => subst(&mut g, size),
        CheckName::Types => types(&mut g, seed, size),
        CheckName::Nonconfluence => vec![check_nonconfluence(&critical_pair(), &critical_pair_normal_forms())],
        CheckName::All => CheckName::ALL[..11]
            .iter()
            .flat_map(|&n| run_instance(n, seed, cfg))
            .collect(),
    }
}

fn lm(g: &mut Gen, sort: Sort, size: usize) -> LmSubject {
    g.lm_subject(sort, size.max(2), false).expect("feasible")
}

fn lb(g: &mut Gen, sort: Sort, size: usize, fragment: Fragment) -> LbSubject {
    g.lb_subject(sort, size.max(3), fragment, false).expect("feasible")
}

fn any_lb_sort(g: &mut Gen, size: usize) -> Sort {
    if size < 3 {
        return Sort::Term;
    }
    [Sort::Term, Sort::Command, Sort::Context][g.below(3)]
}

fn any_lm_sort(g: &mut Gen) -> Sort {
    [Sort::Term, Sort::Command, Sort::Context][g.below(3)]
}

/// Run `f` with `x` / `α` bound, so that draws tend to mention them.
fn scoped<T>(g: &mut Gen, x: Option<&VarName>, a: Option<&CoVarName>, f: impl FnOnce(&mut Gen) -> T) -> T {
    let (nv, nc) = (g.vars.len(), g.covars.len());
    g.vars.extend(x.cloned());
    g.covars.extend(a.cloned());
    let out = f(g);
    g.vars.truncate(nv);
    g.covars.truncate(nc);
    out
}

fn lemma1(g: &mut Gen, size: usize) -> CheckReport {
    let half = (size / 2).max(2);
    for _ in 0..500 {
        let Ok(LmSubject::Term(t)) = g.lm_subject(Sort::Term, half, true) else { continue };
        let Ok(LmSubject::Context(e)) = g.lm_subject(Sort::Context, half, true) else { continue };
        if let Ok(rep) = check_lemma1(&t, &e) {
            return rep;
        }
    }
    exhausted("lemma1")
}

fn exhausted(name: &str) -> CheckReport {
    let mut rep = CheckReport::new(name, "-");
    rep.fail(Status::Inconclusive, GenError::Exhausted(500));
    rep
}

fn subst(g: &mut Gen, size: usize) -> Vec<CheckReport> {
    let part = (size / 2).max(2);
    let small = (size / 3).max(1);
    let mut out = Vec::new();

    let x = g.pick_var();
    let sort = any_lm_sort(g);
    let t = scoped(g, Some(&x), None, |g| lm(g, sort, part));
    let u = g.lm_term_up_to(small);
    out.push(check_lemma7(&t, &x, &u));

    for lemma in [8, 9] {
        let a = g.pick_covar();
        let sort = if g.chance(0.5) { Sort::Term } else { Sort::Command };
        let t = scoped(g, None, Some(&a), |g| lm(g, sort, part));
        let u = g.lm_term_up_to(small);
        out.push(if lemma == 8 { check_lemma8(&t, &a, &u) } else { check_lemma9(&t, &a, &u) });
    }

    let (a, b) = (g.pick_covar(), g.pick_covar());
    let sort = any_lm_sort(g);
    let t = scoped(g, None, Some(&a), |g| lm(g, sort, part));
    out.push(check_lemma10(&t, &a, &b));

    let x = g.pick_var();
    let sort = any_lb_sort(g, part);
    let t = scoped(g, Some(&x), None, |g| lb(g, sort, part, Fragment::Any));
    let u = g.lb_term_up_to(small, Fragment::Any);
    out.push(check_lemma11(&t, &x, &u));

    let a = g.pick_covar();
    let sort = any_lb_sort(g, part);
    let t = scoped(g, None, Some(&a), |g| lb(g, sort, part, Fragment::Any));
    let h = g.lb_context_up_to(small.max(3), Fragment::Any);
    out.push(check_lemma12(&t, &a, &h));
    out
}

fn types(g: &mut Gen, seed: u64, size: usize) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let sort = any_lm_sort(g);
    out.push(match g.lm_subject(sort, size.max(2), true) {
        Ok(t) => check_lemma3(&t).expect("typable"),
        Err(_) => exhausted("lemma3"),
    });
    let sort = any_lb_sort(g, size);
    out.push(match g.lb_subject(sort, size.max(3), Fragment::Any, true) {
        Ok(t) => check_lemma4(&t).expect("typable"),
        Err(_) => exhausted("lemma4"),
    });
    let sort = any_lm_sort(g);
    out.push(match g.lm_subject(sort, size.max(2), true) {
        Ok(t) => check_subject_reduction_lm(&t, SR_STEPS, seed).expect("typable"),
        Err(_) => exhausted("subject-reduction"),
    });
    let sort = any_lb_sort(g, size);
    out.push(match g.lb_subject(sort, size.max(3), Fragment::Any, true) {
        Ok(t) => check_subject_reduction_lmm(&t, SR_STEPS, seed).expect("typable"),
        Err(_) => exhausted("subject-reduction"),
    });
    out
}

/// Reports ordered by check name, then seed.
pub fn merge(mut batches: Vec<(u64, Vec<CheckReport>)>) -> Vec<CheckReport> {
    let mut tagged: Vec<(String, u64, usize, CheckReport)> = Vec::new();
    batches.sort_by_key(|(seed, _)| *seed);
    for (seed, reports) in batches {
        for (i, r) in reports.into_iter().enumerate() {
            tagged.push((r.name.clone(), seed, i, r));
        }
    }
    tagged.sort_by(|a, b| (&a.0, a.1, a.2).cmp(&(&b.0, b.1, b.2)));
    tagged.into_iter().map(|t| t.3).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::report::Summary;

    #[test]
    fn names_round_trip() {
        for c in CheckName::ALL {
            assert_eq!(c.name().parse::<CheckName>(), Ok(c));
        }
        assert!("thm3".parse::<CheckName>().is_err());
    }

    #[test]
    fn small_batches_hold() {
        let cfg = SuiteConfig::new(8);
        let mut all = Vec::new();
        for seed in 0..10 {
            all.push((seed, run_instance(CheckName::All, seed, &cfg)));
        }
        let reports = merge(all);
        let bad: Vec<_> = reports.iter().filter(|r| r.status != Status::Holds).collect();
        assert!(bad.is_empty(), "{:#?}", bad);
        let s = Summary::of(&reports);
        assert_eq!(s.audit.violations, 0);
        assert!(reports.windows(2).all(|w| w[0].name <= w[1].name));
    }

    #[test]
    fn instances_are_deterministic() {
        let cfg = SuiteConfig::new(10);
        assert_eq!(run_instance(CheckName::All, 3, &cfg), run_instance(CheckName::All, 3, &cfg));
    }
}
