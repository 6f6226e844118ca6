//! Every `tests/golden/*.golden` file is a recorded invocation: `arg:` lines,
//! the expected exit code, the stdin text and the expected stdout.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Stdio};

struct Case {
    args: Vec<String>,
    exit: i32,
    input: String,
    output: String,
}

fn load(path: &Path) -> Case {
    let text = std::fs::read_to_string(path).unwrap();
    let (head, rest) = text.split_once("--- input\n").expect("input section");
    let (input, output) = rest.split_once("--- output\n").expect("output section");
    let mut args = Vec::new();
    let mut exit = 0;
    for line in head.lines() {
        if let Some(a) = line.strip_prefix("arg: ") {
            args.push(a.to_string());
        } else if let Some(e) = line.strip_prefix("exit: ") {
            exit = e.parse().unwrap();
        }
    }
    Case {
        args,
        exit,
        input: input.to_string(),
        output: output.to_string(),
    }
}

fn run(case: &Case) -> (i32, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mumu"))
        .args(&case.args)
        .env_remove("MUMU_SEED")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(case.input.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn golden_corpus() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut paths: Vec<_> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    paths.sort();
    assert!(paths.len() >= 30);
    let mut failures = Vec::new();
    for path in &paths {
        let case = load(path);
        let (code, stdout) = run(&case);
        if code != case.exit || stdout != case.output {
            failures.push(format!(
                "{}: exit {} (want {}), stdout:\n{}\nwant:\n{}",
                path.display(),
                code,
                case.exit,
                stdout,
                case.output
            ));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let case = Case {
        args: ["check", "all", "--count", "4", "--size", "8", "--seed", "11", "--output", "json"]
            .map(String::from)
            .to_vec(),
        exit: 0,
        input: String::new(),
        output: String::new(),
    };
    let first = run(&case);
    assert_eq!(first.0, 0);
    assert_eq!(first, run(&case));
}

#[test]
fn seed_comes_from_the_environment() {
    let run_with = |env: Option<&str>, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_mumu"));
        cmd.args(["check", "thm1", "--count", "2", "--output", "json"]);
        cmd.env_remove("MUMU_SEED");
        if let Some(s) = env {
            cmd.env("MUMU_SEED", s);
        }
        if let Some(s) = flag {
            cmd.args(["--seed", s]);
        }
        String::from_utf8(cmd.output().unwrap().stdout).unwrap()
    };
    assert_eq!(run_with(Some("42"), None), run_with(None, Some("42")));
    assert_ne!(run_with(Some("42"), None), run_with(None, None));
}

#[test]
fn json_reports_have_exactly_the_documented_keys() {
    let out = Command::new(env!("CARGO_BIN_EXE_mumu"))
        .args(["check", "thm4", "--count", "3", "--output", "json"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        let mut keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        keys.sort();
        assert_eq!(keys, ["bound_used", "name", "status", "subject", "witness"]);
        for w in v["witness"].as_array().unwrap() {
            let mut keys: Vec<_> = w.as_object().unwrap().keys().cloned().collect();
            keys.sort();
            assert_eq!(keys, ["linear", "rule", "term"]);
        }
    }
}

#[test]
fn exit_codes() {
    let code = |args: &[&str], input: &str| {
        run(&Case {
            args: args.iter().map(|s| s.to_string()).collect(),
            exit: 0,
            input: input.into(),
            output: String::new(),
        })
        .0
    };
    assert_eq!(code(&["parse"], "x"), 0);
    assert_eq!(code(&["parse"], "("), 2);
    assert_eq!(code(&["check", "lemma2", "--strategy", "cbn", "--count", "40"], ""), 1);
    assert_eq!(code(&["check", "thm7"], ""), 2);
    assert_eq!(code(&["check", "thm1", "--strategy", "cbn"], ""), 2);
}
