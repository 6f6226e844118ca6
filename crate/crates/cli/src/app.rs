//! The subcommands, independent of argument parsing and IO.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::json;

use mumu_core::harness::{Calc, CheckName, CheckReport, Sort, Status, SuiteConfig, Summary};
use mumu_core::lm::{LmStrategy, LmSubject};
use mumu_core::lmm::{LbMode, LbStrategy, LbSubject};
use mumu_core::translate::{circ, dag};
use mumu_core::typing::{check_lm, check_lmm, infer_lm, infer_lmm};
use mumu_core::{ReduceOrder, Reduction, Termination};

use crate::json;
use crate::runner;
use crate::sequent::parse_sequent;
use crate::syntax::{parse_lm, parse_lm_any, parse_lmm, parse_lmm_any, ParseError, Parsed};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSIFIED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Output {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Lm2Lmm,
    Lmm2Lm,
}

/// Either calculus' strategy, checked against the calculus it is used with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Lm(LmStrategy),
    Lmm(LbStrategy),
}

/// Validated settings shared by every subcommand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliConfig {
    pub calc: Calc,
    /// `None` takes the first sort the input parses at.
    pub sort: Option<Sort>,
    pub strategy: Option<String>,
    pub max_steps: usize,
    pub seed: u64,
    pub count: u64,
    pub size: usize,
    pub output: Output,
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig {
            calc: Calc::Lm,
            sort: None,
            strategy: None,
            max_steps: 100,
            seed: 0,
            count: 100,
            size: 12,
            output: Output::Text,
        }
    }
}

impl CliConfig {
    /// The strategy flag read for `calc`; `free` when absent.
    pub fn strategy_for(&self, calc: Calc) -> Result<Strategy, String> {
        let s = self.strategy.as_deref().unwrap_or("free");
        match calc {
            Calc::Lm => s
                .parse::<LmStrategy>()
                .map(Strategy::Lm)
                .map_err(|_| format!("unknown λμ strategy '{}' (free, cbn, cbv, cbv-os)", s)),
            Calc::Lmm => s
                .parse::<LbStrategy>()
                .map(Strategy::Lmm)
                .map_err(|_| format!("unknown λ̄μμ̃ strategy '{}' (free, cbn, cbv)", s)),
        }
    }
}

/// What a subcommand printed and how it ended.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), code: EXIT_OK }
    }

    pub fn error(msg: impl std::fmt::Display) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {}\n", msg),
            code: EXIT_ERROR,
        }
    }
}

fn line(s: impl std::fmt::Display) -> String {
    format!("{}\n", s)
}

fn json_line<T: Serialize>(v: &T) -> String {
    line(serde_json::to_string(v).expect("serialisable"))
}

enum Input {
    Lm(Parsed<LmSubject>),
    Lmm(Parsed<LbSubject>),
}

fn read(src: &str, calc: Calc, sort: Option<Sort>) -> Result<Input, ParseError> {
    Ok(match (calc, sort) {
        (Calc::Lm, Some(s)) => Input::Lm(parse_lm(src, s)?),
        (Calc::Lm, None) => Input::Lm(parse_lm_any(src)?),
        (Calc::Lmm, Some(s)) => Input::Lmm(parse_lmm(src, s)?),
        (Calc::Lmm, None) => Input::Lmm(parse_lmm_any(src)?),
    })
}

fn calc_name(c: Calc) -> &'static str {
    match c {
        Calc::Lm => "lm",
        Calc::Lmm => "lmm",
    }
}

pub fn parse(src: &str, cfg: &CliConfig) -> Outcome {
    let input = match read(src, cfg.calc, cfg.sort) {
        Ok(i) => i,
        Err(e) => return Outcome::error(e),
    };
    let (printed, sort, spans) = match &input {
        Input::Lm(p) => (p.subject.to_string(), p.subject.sort_name(), &p.spans),
        Input::Lmm(p) => (p.subject.to_string(), p.subject.sort_name(), &p.spans),
    };
    match cfg.output {
        Output::Text => Outcome::ok(line(printed)),
        Output::Json => {
            let spans: Vec<_> = spans
                .iter()
                .map(|(path, s)| json!({"path": path, "begin": s.begin, "end": s.end, "line": s.line, "column": s.column}))
                .collect();
            Outcome::ok(json_line(&json!({
                "calc": calc_name(cfg.calc),
                "sort": sort,
                "subject": printed,
                "spans": spans,
            })))
        }
    }
}

pub fn typecheck(src: &str, cfg: &CliConfig, expect: Option<&str>) -> Outcome {
    let input = match read(src, cfg.calc, cfg.sort) {
        Ok(i) => i,
        Err(e) => return Outcome::error(e),
    };
    let (shown, inferred) = match &input {
        Input::Lm(p) => (p.subject.to_string(), infer_lm(&p.subject)),
        Input::Lmm(p) => (p.subject.to_string(), infer_lmm(&p.subject)),
    };
    let principal = match inferred {
        Ok(s) => s,
        Err(e) => return Outcome::error(format!("{} is untypable: {}", shown, e)),
    };
    let rendered = principal.render(&shown);
    let Some(expect) = expect else {
        return match cfg.output {
            Output::Text => Outcome::ok(line(&rendered)),
            Output::Json => Outcome::ok(json_line(&json!({"subject": shown, "sequent": rendered}))),
        };
    };
    let claimed = match parse_sequent(expect) {
        Ok(s) => s,
        Err(e) => return Outcome::error(e),
    };
    let holds = match &input {
        Input::Lm(p) => check_lm(&p.subject, &claimed),
        Input::Lmm(p) => check_lmm(&p.subject, &claimed),
    };
    let claimed_text = claimed.render(&shown);
    let mut out = match cfg.output {
        Output::Text if holds => Outcome::ok(line(format!("ok: {}", claimed_text))),
        Output::Text => Outcome {
            stdout: line(format!("mismatch: principal sequent is {}", rendered)),
            stderr: String::new(),
            code: EXIT_ERROR,
        },
        Output::Json => Outcome::ok(json_line(&json!({
            "subject": shown,
            "sequent": rendered,
            "expected": claimed_text,
            "holds": holds,
        }))),
    };
    if !holds {
        out.code = EXIT_ERROR;
    }
    out
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReduceOptions {
    pub trace: bool,
    pub bfs: bool,
    pub beta_prime: bool,
}

pub fn reduce(src: &str, cfg: &CliConfig, opts: ReduceOptions) -> Outcome {
    let strategy = match cfg.strategy_for(cfg.calc) {
        Ok(s) => s,
        Err(e) => return Outcome::error(e),
    };
    if opts.beta_prime && cfg.calc == Calc::Lm {
        return Outcome::error("--beta-prime applies to --calc lmm only");
    }
    let input = match read(src, cfg.calc, cfg.sort) {
        Ok(i) => i,
        Err(e) => return Outcome::error(e),
    };
    let order = if opts.bfs { ReduceOrder::AllPathsBfs } else { ReduceOrder::LeftmostOutermost };
    match (input, strategy) {
        (Input::Lm(p), Strategy::Lm(s)) => render_reduction(&p.subject.reduce(s, cfg.max_steps, order), cfg, opts),
        (Input::Lmm(p), Strategy::Lmm(s)) => {
            let mode = LbMode { strategy: s, beta_prime: opts.beta_prime };
            match p.subject.reduce(mode, cfg.max_steps, order) {
                Ok(r) => render_reduction(&r, cfg, opts),
                Err(e) => Outcome::error(e),
            }
        }
        _ => unreachable!("strategy read for the input's calculus"),
    }
}

fn render_reduction<R: ToString, S: ToString>(r: &Reduction<R, S>, cfg: &CliConfig, opts: ReduceOptions) -> Outcome {
    let normal = r.stopped == Termination::NormalForm;
    match cfg.output {
        Output::Json => Outcome::ok(json_line(&json::ReductionJson {
            start: r.trace.start.to_string(),
            steps: json::trace_steps(&r.trace),
            result: r.trace.last().to_string(),
            normal_form: normal,
        })),
        Output::Text => {
            let mut out = String::new();
            if opts.trace {
                for s in json::trace_steps(&r.trace) {
                    let _ = writeln!(out, "step {}: rule={} linear={}  {}", s.step, s.rule, s.linear, s.term);
                }
            }
            out.push_str(&line(r.trace.last().to_string()));
            let stderr = if normal {
                String::new()
            } else {
                format!("step bound reached after {} step(s); not a normal form\n", r.trace.len())
            };
            Outcome { stdout: out, stderr, code: EXIT_OK }
        }
    }
}

pub fn translate(src: &str, cfg: &CliConfig, dir: Direction) -> Outcome {
    let calc = match dir {
        Direction::Lm2Lmm => Calc::Lm,
        Direction::Lmm2Lm => Calc::Lmm,
    };
    let (input, output) = match read(src, calc, cfg.sort) {
        Ok(Input::Lm(p)) => (p.subject.to_string(), dag(&p.subject).to_string()),
        Ok(Input::Lmm(p)) => (p.subject.to_string(), circ(&p.subject).to_string()),
        Err(e) => return Outcome::error(e),
    };
    match cfg.output {
        Output::Text => Outcome::ok(line(output)),
        Output::Json => Outcome::ok(json_line(&json!({"input": input, "output": output}))),
    }
}

/// The worst status decides: falsified, then inconclusive.
pub fn exit_code(reports: &[CheckReport]) -> i32 {
    match Summary::of(reports).status() {
        Status::Holds => EXIT_OK,
        Status::Falsified => EXIT_FALSIFIED,
        Status::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

pub fn check(name: CheckName, cfg: &CliConfig) -> Outcome {
    if cfg.strategy.is_some() && !name.takes_strategy() {
        return Outcome::error(format!("check {} takes no --strategy", name));
    }
    let strategy = match cfg.strategy_for(Calc::Lm) {
        Ok(Strategy::Lm(s)) => s,
        Ok(_) => unreachable!(),
        Err(e) => return Outcome::error(e),
    };
    if strategy == LmStrategy::CbvOs && matches!(name, CheckName::Thm4 | CheckName::Thm5 | CheckName::All) {
        return Outcome::error(format!("check {} supports the strategies free, cbn and cbv", name));
    }
    if cfg.size == 0 || cfg.count == 0 {
        return Outcome::error("--size and --count must be positive");
    }
    let suite = SuiteConfig {
        size: cfg.size,
        strategy: cfg.strategy.as_ref().map(|_| strategy),
    };
    let reports = runner::run(name, cfg.seed, cfg.count, &suite);
    let mut out = String::new();
    match cfg.output {
        Output::Json => {
            for r in &reports {
                out.push_str(&line(json::report(r)));
            }
        }
        Output::Text => {
            for r in &reports {
                let _ = writeln!(out, "{} {} {}", r.name, r.status, r.subject);
                for n in &r.notes {
                    let _ = writeln!(out, "  {}", n);
                }
            }
            let mut names: Vec<&str> = reports.iter().map(|r| r.name.as_str()).collect();
            names.dedup();
            for n in names {
                let s = Summary::of(reports.iter().filter(|r| r.name == n));
                let _ = writeln!(
                    out,
                    "{}: {} holds, {} falsified, {} inconclusive; {} linear steps, {} measure violations",
                    n, s.holds, s.falsified, s.inconclusive, s.audit.steps, s.audit.violations
                );
            }
        }
    }
    Outcome {
        stdout: out,
        stderr: String::new(),
        code: exit_code(&reports),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(calc: Calc) -> CliConfig {
        CliConfig { calc, ..CliConfig::default() }
    }

    #[test]
    fn reduce_with_trace() {
        let mut c = cfg(Calc::Lm);
        c.strategy = Some("cbn".into());
        c.max_steps = 10;
        let out = reduce("(\\x.x) y", &c, ReduceOptions { trace: true, ..Default::default() });
        assert_eq!(out.stdout, "step 1: rule=beta linear=true  y\ny\n");
        assert_eq!(out.code, EXIT_OK);
    }

    #[test]
    fn translate_command() {
        let out = translate("['a]x", &cfg(Calc::Lm), Direction::Lm2Lmm);
        assert_eq!(out.stdout, "<x|'a>\n");
    }

    #[test]
    fn typecheck_against_expectation() {
        let c = cfg(Calc::Lm);
        assert_eq!(typecheck("\\x.x", &c, None).stdout, "|- \\x.x : A->A\n");
        assert_eq!(typecheck("\\x.x", &c, Some("|- _ : B->B")).code, EXIT_OK);
        assert_eq!(typecheck("\\x.x", &c, Some("|- _ : (B->B)->B->B")).code, EXIT_OK);
        assert_eq!(typecheck("\\x.x", &c, Some("|- _ : A->B")).code, EXIT_ERROR);
        assert_eq!(typecheck("x x", &c, None).code, EXIT_ERROR);
    }

    #[test]
    fn invalid_combinations_are_rejected() {
        let mut c = cfg(Calc::Lmm);
        c.strategy = Some("cbv-os".into());
        assert_eq!(reduce("x", &c, ReduceOptions::default()).code, EXIT_ERROR);
        let mut c = cfg(Calc::Lm);
        c.strategy = Some("cbn".into());
        assert_eq!(check(CheckName::Thm1, &c).code, EXIT_ERROR);
        c.strategy = Some("cbv-os".into());
        assert_eq!(check(CheckName::Thm5, &c).code, EXIT_ERROR);
        let c = cfg(Calc::Lm);
        assert_eq!(reduce("x", &c, ReduceOptions { beta_prime: true, ..Default::default() }).code, EXIT_ERROR);
    }

    #[test]
    fn nonconfluence_reports_both_normal_forms() {
        let out = check(CheckName::Nonconfluence, &cfg(Calc::Lm));
        assert_eq!(out.code, EXIT_OK);
        assert!(out.stdout.contains("normal form: <x|y*mt x.<z|x*'b>>"));
        assert!(out.stdout.contains("normal form: <z|mu 'a.<x|y*'a>*'b>"));
    }
}
