//! The `imp` command-line tool.
//!
//! Exit codes: 0 success, 1 parse or usage error, 2 fuel exhausted,
//! 3 stack underflow, 4 counterexample (or failing quickcheck suite),
//! 5 verdict unknown.
//!
//! `trace --format machine-readable` prints one JSON object per line: first
//! one `{"step_index", "command_text", "state_bindings"}` record per
//! configuration, then a closing `{"status", "steps"}` record where status is
//! `completed` or `fuel_exhausted`.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt;
use std::io::{self, IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::big_step::{big_step, BigStepOutcome};
use crate::compiler::ccomp;
use crate::harness::{self, GenConfig, SuiteResult, SUITE_FUEL};
use crate::hoare::{verify, Assertion, Mode, Verdict};
use crate::machine::{exec, Instr, MachineConfig, MachineOutcome, StopReason};
use crate::parser::{self, is_valid_identifier, parse_annotated_com, parse_asm, parse_assertion, parse_com, pretty_asm};
use crate::small_step::{star_run, ProgConfig, TraceStatus};
use crate::state::{State, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_FUEL: i32 = 2;
pub const EXIT_UNDERFLOW: i32 = 3;
pub const EXIT_COUNTEREXAMPLE: i32 = 4;
pub const EXIT_UNKNOWN: i32 = 5;

/// Bound used by `quickcheck --suite hoare`.
pub const QUICKCHECK_BOUND: u32 = 5;

/// An initial state written as `x=1,y=-2`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StateSpec(pub State);

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum StateSpecError {
    #[error("expected `name=value`, found `{0}`")]
    Malformed(String),
    #[error("`{0}` is not a valid variable name")]
    BadName(String),
    #[error("`{0}` is not a decimal integer")]
    BadValue(String),
    #[error("`{0}` is bound twice")]
    Duplicate(String),
}

impl FromStr for StateSpec {
    type Err = StateSpecError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut state = State::new();
        let mut seen = BTreeSet::new();
        for pair in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, value) = pair
                .split_once('=')
                .ok_or_else(|| StateSpecError::Malformed(pair.to_owned()))?;
            let (name, value) = (name.trim(), value.trim());
            if !is_valid_identifier(name) {
                return Err(StateSpecError::BadName(name.to_owned()));
            }
            let value: Value = value
                .parse()
                .map_err(|_| StateSpecError::BadValue(value.to_owned()))?;
            if !seen.insert(name.to_owned()) {
                return Err(StateSpecError::Duplicate(name.to_owned()));
            }
            state = state.update(name, value);
        }
        Ok(StateSpec(state))
    }
}

#[derive(Parser, Debug)]
#[command(name = "imp", version, about = "Run, trace, compile and verify IMP programs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a program with big-step semantics and print the final state.
    Run {
        file: PathBuf,
        #[arg(long, default_value = "")]
        state: StateSpec,
        /// Maximum number of big-step rule applications.
        #[arg(long, default_value_t = SUITE_FUEL)]
        fuel: usize,
    },
    /// Print the small-step trace of a program.
    Trace {
        file: PathBuf,
        #[arg(long, default_value = "")]
        state: StateSpec,
        #[arg(long, default_value_t = 1000)]
        max_steps: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compile a program to stack-machine assembly.
    Compile {
        file: PathBuf,
        /// Output file; standard output when absent.
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Execute an assembly listing.
    Exec {
        file: PathBuf,
        #[arg(long, default_value = "")]
        state: StateSpec,
        #[arg(long, default_value_t = SUITE_FUEL)]
        max_steps: usize,
        /// Initial program counter.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        pc: i64,
    },
    /// Check a Hoare triple through its verification conditions and by execution.
    Verify {
        file: PathBuf,
        #[arg(long, default_value = "true")]
        pre: String,
        #[arg(long, default_value = "true")]
        post: String,
        /// Values of every variable range over [-bound, bound].
        #[arg(long, default_value_t = QUICKCHECK_BOUND)]
        bound: u32,
        #[arg(long, default_value_t = SUITE_FUEL)]
        fuel: usize,
        /// Require termination (loops need a measure).
        #[arg(long)]
        total: bool,
    },
    /// Run the randomized differential test suites.
    Quickcheck {
        #[arg(long, value_enum, default_value_t = SuiteName::All)]
        suite: SuiteName,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long, default_value_t = GenConfig::default().seed)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    MachineReadable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteName {
    SmallBig,
    Compiler,
    Hoare,
    All,
}

/// Output streams plus whether to emit ANSI styling.
pub struct Io<'a> {
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
    pub color: bool,
}

#[derive(Clone, Copy)]
enum Tone {
    Good,
    Bad,
    Unsure,
}

struct Styled<'a>(&'a str, Tone, bool);

impl fmt::Display for Styled<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.2 {
            return f.write_str(self.0);
        }
        let code = match self.1 {
            Tone::Good => 32,
            Tone::Bad => 31,
            Tone::Unsure => 33,
        };
        write!(f, "\x1b[{code}m{}\x1b[0m", self.0)
    }
}

/// Failure of a command: the message goes to stderr, the code is returned.
struct Exit(i32, String);

impl Exit {
    fn parse(path: &Path, e: &parser::ParseError) -> Self {
        Exit(EXIT_PARSE, format!("{}:{e}", path.display()))
    }
}

impl From<io::Error> for Exit {
    fn from(e: io::Error) -> Self {
        Exit(EXIT_PARSE, e.to_string())
    }
}

type CmdResult = Result<i32, Exit>;

fn read(path: &Path) -> Result<String, Exit> {
    std::fs::read_to_string(path).map_err(|e| Exit(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn print_state(out: &mut dyn Write, state: &State, names: &BTreeSet<String>) -> io::Result<()> {
    for name in names {
        writeln!(out, "{name}={}", state.read(name))?;
    }
    Ok(())
}

/// Entry point for the `imp` binary: parses `std::env::args` and writes to
/// the standard streams. Styling is on for terminals unless `IMP_COLOR=0`.
pub fn main() -> i32 {
    let color = std::env::var("IMP_COLOR").map_or(true, |v| v != "0") && io::stdout().is_terminal();
    let (mut out, mut err) = (io::stdout().lock(), io::stderr().lock());
    run(
        std::env::args_os(),
        &mut Io {
            out: &mut out,
            err: &mut err,
            color,
        },
    )
}

/// Runs one command line and returns its exit code.
pub fn run(args: impl IntoIterator<Item = impl Into<OsString> + Clone>, io: &mut Io<'_>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink = if e.use_stderr() { &mut *io.err } else { &mut *io.out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let result = match cli.command {
        Command::Run { file, state, fuel } => cmd_run(io, &file, state.0, fuel),
        Command::Trace {
            file,
            state,
            max_steps,
            format,
        } => cmd_trace(io, &file, state.0, max_steps, format),
        Command::Compile { file, output } => cmd_compile(io, &file, output.as_deref()),
        Command::Exec {
            file,
            state,
            max_steps,
            pc,
        } => cmd_exec(io, &file, state.0, max_steps, pc),
        Command::Verify {
            file,
            pre,
            post,
            bound,
            fuel,
            total,
        } => cmd_verify(io, &file, &pre, &post, bound, fuel, total),
        Command::Quickcheck { suite, cases, seed } => cmd_quickcheck(io, suite, cases, seed),
    };
    let _ = io.out.flush();
    match result {
        Ok(code) => code,
        Err(Exit(code, message)) => {
            let _ = writeln!(io.err, "imp: {message}");
            code
        }
    }
}

fn cmd_run(io: &mut Io<'_>, file: &Path, state: State, fuel: usize) -> CmdResult {
    let c = parse_com(&read(file)?).map_err(|e| Exit::parse(file, &e))?;
    match big_step(&c, &state, fuel) {
        BigStepOutcome::Terminated { state: t, .. } => {
            let mut names = c.vars();
            names.extend(state.bound_names());
            print_state(io.out, &t, &names)?;
            Ok(EXIT_OK)
        }
        BigStepOutcome::FuelExhausted { .. } => {
            Err(Exit(EXIT_FUEL, format!("no result within {fuel} rule applications")))
        }
    }
}

#[derive(Serialize)]
struct TraceEnd {
    status: TraceStatus,
    steps: usize,
}

fn cmd_trace(io: &mut Io<'_>, file: &Path, state: State, max_steps: usize, format: Format) -> CmdResult {
    let c = parse_com(&read(file)?).map_err(|e| Exit::parse(file, &e))?;
    let trace = star_run(ProgConfig::new(c, state), max_steps);
    let steps = trace.configs.len() - 1;
    match format {
        Format::MachineReadable => {
            for record in trace.records() {
                writeln!(io.out, "{}", serde_json::to_string(&record).expect("records serialize"))?;
            }
            let end = TraceEnd {
                status: trace.status,
                steps,
            };
            writeln!(io.out, "{}", serde_json::to_string(&end).expect("records serialize"))?;
        }
        Format::Text => {
            for (i, cfg) in trace.configs.iter().enumerate() {
                writeln!(io.out, "[{i}] {}", cfg.state)?;
                for line in crate::parser::pretty_com(&cfg.command).lines() {
                    writeln!(io.out, "    {line}")?;
                }
            }
            let (label, tone) = match trace.status {
                TraceStatus::Completed => ("completed", Tone::Good),
                TraceStatus::FuelExhausted => ("fuel exhausted", Tone::Unsure),
            };
            writeln!(io.out, "{} after {steps} steps", Styled(label, tone, io.color))?;
        }
    }
    Ok(match trace.status {
        TraceStatus::Completed => EXIT_OK,
        TraceStatus::FuelExhausted => EXIT_FUEL,
    })
}

fn cmd_compile(io: &mut Io<'_>, file: &Path, output: Option<&Path>) -> CmdResult {
    let c = parse_com(&read(file)?).map_err(|e| Exit::parse(file, &e))?;
    let text = pretty_asm(&ccomp(&c));
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| Exit(EXIT_PARSE, format!("{}: {e}", path.display())))?,
        None => io.out.write_all(text.as_bytes())?,
    }
    Ok(EXIT_OK)
}

fn program_vars(program: &[Instr]) -> BTreeSet<String> {
    program
        .iter()
        .filter_map(|i| match i {
            Instr::Load(x) | Instr::Store(x) => Some(x.clone()),
            _ => None,
        })
        .collect()
}

fn print_machine(out: &mut dyn Write, cfg: &MachineConfig, names: &BTreeSet<String>) -> io::Result<()> {
    writeln!(out, "pc={}", cfg.pc)?;
    print_state(out, &cfg.state, names)?;
    let stack: Vec<String> = cfg.stack_top_first().iter().map(Value::to_string).collect();
    writeln!(out, "stack=[{}]", stack.join(", "))
}

fn cmd_exec(io: &mut Io<'_>, file: &Path, state: State, max_steps: usize, pc: i64) -> CmdResult {
    let program = parse_asm(&read(file)?).map_err(|e| Exit::parse(file, &e))?;
    let mut names = program_vars(&program);
    names.extend(state.bound_names());
    let outcome = exec(&program, &MachineConfig::new(pc, state, Vec::new()), max_steps);
    print_machine(io.out, outcome.config(), &names)?;
    match outcome {
        MachineOutcome::Halted { .. } => Ok(EXIT_OK),
        MachineOutcome::Stopped { steps, reason, .. } => {
            let code = match reason {
                StopReason::StackUnderflow => EXIT_UNDERFLOW,
                StopReason::FuelExhausted | StopReason::OutOfProgram => EXIT_FUEL,
            };
            Err(Exit(code, format!("{reason} after {steps} steps")))
        }
    }
}

fn verdict_text(v: &Verdict, color: bool) -> String {
    let tone = match v {
        Verdict::Valid => Tone::Good,
        Verdict::CounterexampleFound(_) => Tone::Bad,
        Verdict::Unknown => Tone::Unsure,
    };
    let mut text = Styled(v.label(), tone, color).to_string();
    if let Some(s) = v.counterexample() {
        text.push_str(&format!(" {s}"));
    }
    text
}

fn cmd_verify(
    io: &mut Io<'_>,
    file: &Path,
    pre: &str,
    post: &str,
    bound: u32,
    fuel: usize,
    total: bool,
) -> CmdResult {
    let c = parse_annotated_com(&read(file)?).map_err(|e| Exit::parse(file, &e))?;
    let assertion = |flag: &str, text: &str| -> Result<Assertion, Exit> {
        parse_assertion(text).map_err(|e| Exit(EXIT_PARSE, format!("--{flag}: {e}")))
    };
    let (pre, post) = (assertion("pre", pre)?, assertion("post", post)?);
    let mode = if total { Mode::Total } else { Mode::Partial };
    let report = verify(&pre, &c, &post, bound, fuel, mode)
        .map_err(|e| Exit(EXIT_PARSE, format!("{}: {e}", file.display())))?;
    writeln!(io.out, "mode: {mode}, bound: {bound}")?;
    writeln!(io.out, "computed precondition: {}", report.precondition)?;
    for (vc, verdict) in &report.vcs {
        writeln!(io.out, "{}: {}", vc.label, verdict_text(verdict, io.color))?;
        writeln!(io.out, "    {}", vc.formula)?;
    }
    writeln!(io.out, "triple: {}", verdict_text(&report.triple, io.color))?;
    Ok(if report.all_valid() {
        EXIT_OK
    } else if report.has_counterexample() {
        EXIT_COUNTEREXAMPLE
    } else {
        EXIT_UNKNOWN
    })
}

fn cmd_quickcheck(io: &mut Io<'_>, suite: SuiteName, cases: usize, seed: u64) -> CmdResult {
    let cfg = GenConfig::with_seed(seed);
    let mut results: Vec<SuiteResult> = Vec::new();
    if matches!(suite, SuiteName::SmallBig | SuiteName::All) {
        results.push(harness::suite_small_big(cases, &cfg));
        results.push(harness::suite_one_step_continue(cases, &cfg));
    }
    if matches!(suite, SuiteName::All) {
        results.push(harness::suite_big_step_determinism(cases, &cfg));
        results.push(harness::suite_small_step_determinism(cases, &cfg));
        results.push(harness::suite_parser_roundtrip(cases, &cfg));
        results.push(harness::suite_asm_roundtrip(cases, &cfg));
    }
    if matches!(suite, SuiteName::Compiler | SuiteName::All) {
        results.push(harness::suite_compiler(cases, &cfg));
    }
    if matches!(suite, SuiteName::Hoare | SuiteName::All) {
        results.push(harness::suite_hoare(QUICKCHECK_BOUND, cases, &cfg));
    }
    let mut failed = false;
    for r in &results {
        failed |= !r.ok();
        write!(io.out, "{r}")?;
    }
    let (label, tone) = if failed { ("FAILED", Tone::Bad) } else { ("ok", Tone::Good) };
    writeln!(io.out, "seed {seed}: {}", Styled(label, tone, io.color))?;
    Ok(if failed { EXIT_COUNTEREXAMPLE } else { EXIT_OK })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn state_spec() {
        let spec: StateSpec = "x=1, y=-2".parse().unwrap();
        assert_eq!(spec.0, State::from_iter([("x", 1), ("y", -2)]));
        assert_eq!("".parse::<StateSpec>().unwrap().0, State::new());
        assert_eq!("x=1,x=2".parse::<StateSpec>(), Err(StateSpecError::Duplicate("x".into())));
        assert_eq!("while=1".parse::<StateSpec>(), Err(StateSpecError::BadName("while".into())));
        assert_eq!("x=1.5".parse::<StateSpec>(), Err(StateSpecError::BadValue("1.5".into())));
        assert_eq!("x".parse::<StateSpec>(), Err(StateSpecError::Malformed("x".into())));
    }

    fn capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(
            std::iter::once("imp").chain(args.iter().copied()),
            &mut Io {
                out: &mut out,
                err: &mut err,
                color: false,
            },
        );
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(capture(&["frobnicate"]).0, EXIT_PARSE);
        assert_eq!(capture(&["run"]).0, EXIT_PARSE);
        let (code, out, _) = capture(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("quickcheck"));
    }

    #[test]
    fn quickcheck_zero_cases() {
        let (code, out, _) = capture(&["quickcheck", "--suite", "small-big", "--cases", "0"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("run=0"), "{out}");
    }

    #[test]
    fn styling() {
        assert_eq!(Styled("ok", Tone::Good, false).to_string(), "ok");
        assert_eq!(Styled("ok", Tone::Good, true).to_string(), "\x1b[32mok\x1b[0m");
    }
}
