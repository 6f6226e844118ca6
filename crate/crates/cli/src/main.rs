use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use mumu::app::{self, CliConfig, Direction, Outcome, Output, ReduceOptions};
use mumu_core::harness::{Calc, CheckName, Sort};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CalcArg {
    Lm,
    Lmm,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SortArg {
    Term,
    Command,
    Context,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputArg {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DirArg {
    Lm2lmm,
    Lmm2lm,
}

/// Workbench for the λμ and λ̄μμ̃ calculi.
#[derive(Parser, Debug)]
#[command(name = "mumu", version, about)]
struct Cli {
    /// Calculus of the input.
    #[arg(long, value_enum, global = true, default_value = "lm")]
    calc: CalcArg,
    /// Syntactic category of the input; by default the first that parses.
    #[arg(long, value_enum, global = true)]
    sort: Option<SortArg>,
    #[arg(long, value_enum, global = true, default_value = "text")]
    output: OutputArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and pretty-print a subject.
    Parse {
        /// Input file, or `-` for stdin.
        #[arg(default_value = "-")]
        file: PathBuf,
    },
    /// Print the principal sequent, or check a claimed one.
    Typecheck {
        #[arg(default_value = "-")]
        file: PathBuf,
        /// A sequent such as `x:A |- _ : B | 'a:C`.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Reduce to normal form or until the step bound.
    Reduce {
        #[arg(default_value = "-")]
        file: PathBuf,
        #[arg(long, default_value = "free")]
        strategy: String,
        #[arg(long, default_value_t = 100)]
        max_steps: usize,
        /// Print every step.
        #[arg(long)]
        trace: bool,
        /// Search all reduction paths breadth-first for a normal form.
        #[arg(long)]
        bfs: bool,
        /// Also fire β' (λ̄μμ̃ only).
        #[arg(long)]
        beta_prime: bool,
    },
    /// Translate between the calculi.
    Translate {
        #[arg(default_value = "-")]
        file: PathBuf,
        #[arg(long, value_enum)]
        dir: DirArg,
    },
    /// Run a property check over seeded random instances.
    Check {
        /// thm1, thm2, thm4, thm5, lemma1, lemma2, lemma5, lemma6, subst,
        /// types, nonconfluence or all.
        name: String,
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value_t = 12)]
        size: usize,
        #[arg(long, env = "MUMU_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        strategy: Option<String>,
    },
}

fn read_input(file: &PathBuf) -> Result<String, Outcome> {
    let mut src = String::new();
    let res = if file.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut src).map(|_| ())
    } else {
        std::fs::read_to_string(file).map(|s| src = s)
    };
    res.map(|_| src)
        .map_err(|e| Outcome::error(format!("{}: {}", file.display(), e)))
}

fn run(cli: Cli) -> Outcome {
    let mut cfg = CliConfig {
        calc: match cli.calc {
            CalcArg::Lm => Calc::Lm,
            CalcArg::Lmm => Calc::Lmm,
        },
        sort: cli.sort.map(|s| match s {
            SortArg::Term => Sort::Term,
            SortArg::Command => Sort::Command,
            SortArg::Context => Sort::Context,
        }),
        output: match cli.output {
            OutputArg::Text => Output::Text,
            OutputArg::Json => Output::Json,
        },
        ..CliConfig::default()
    };
    let input = |file: &PathBuf| read_input(file);
    match cli.command {
        Command::Parse { file } => match input(&file) {
            Ok(src) => app::parse(&src, &cfg),
            Err(o) => o,
        },
        Command::Typecheck { file, expect } => match input(&file) {
            Ok(src) => app::typecheck(&src, &cfg, expect.as_deref()),
            Err(o) => o,
        },
        Command::Reduce {
            file,
            strategy,
            max_steps,
            trace,
            bfs,
            beta_prime,
        } => {
            cfg.strategy = Some(strategy);
            cfg.max_steps = max_steps;
            match input(&file) {
                Ok(src) => app::reduce(&src, &cfg, ReduceOptions { trace, bfs, beta_prime }),
                Err(o) => o,
            }
        }
        Command::Translate { file, dir } => {
            let dir = match dir {
                DirArg::Lm2lmm => Direction::Lm2Lmm,
                DirArg::Lmm2lm => Direction::Lmm2Lm,
            };
            match input(&file) {
                Ok(src) => app::translate(&src, &cfg, dir),
                Err(o) => o,
            }
        }
        Command::Check {
            name,
            count,
            size,
            seed,
            strategy,
        } => {
            let name: CheckName = match name.parse() {
                Ok(n) => n,
                Err(e) => return Outcome::error(e),
            };
            cfg.count = count;
            cfg.size = size;
            cfg.seed = seed;
            cfg.strategy = strategy;
            app::check(name, &cfg)
        }
    }
}

fn main() -> ExitCode {
    let out = run(Cli::parse());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}
