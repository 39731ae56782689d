//! Differential property suites relating the semantics, the compiler and
//! the Hoare-logic oracle.
//!
//! Case `i` of a suite is generated from seed `cfg.seed + i` (wrapping), so a
//! single failing case is reproduced by re-running with that seed and one
//! case. Cases run in parallel; results are collected in case order.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::gen::{rng_for, GenConfig, Generator};
use crate::big_step::{big_step, BigStepOutcome};
use crate::compiler::{ccomp, stray_jumps};
use crate::hoare::{
    check_triple, entails, eval_assertion, subst_assertion, vcgen, wp_loop_free, Assertion, Mode,
    Verdict,
};
use crate::machine::{exec, exec_n, exec_trace, steps_to_halt, MachineConfig, MachineOutcome};
use crate::parser::{
    parse_annotated_com, parse_asm, parse_assertion, parse_com, pretty_asm, pretty_assertion,
    pretty_com,
};
use crate::small_step::{small_step, star_run_with, ProgConfig, TraceStatus};
use crate::state::State;
use crate::syntax::{aval, Com};

/// Step/rule budget used by the semantic suites.
pub const SUITE_FUEL: usize = 10_000;

/// Machine instructions allowed per big-step rule application.
pub const MACHINE_FUEL_FACTOR: usize = 16;

/// Budget on one side of a cross-semantics comparison when the other side
/// ran with `fuel`.
pub fn cross_fuel(fuel: usize) -> usize {
    4 * fuel + 4
}

/// Machine budget for a program that big-steps within `fuel`.
pub fn machine_fuel(fuel: usize, c: &Com) -> usize {
    fuel * MACHINE_FUEL_FACTOR * (1 + c.size())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub case_index: usize,
    pub seed: u64,
    pub program_text: String,
    pub initial_state: State,
    pub expectation: String,
    pub observed: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub cases_run: usize,
    pub cases_passed: usize,
    pub cases_skipped_divergent: usize,
    pub failures: Vec<Failure>,
}

impl SuiteResult {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn skipped_fraction(&self) -> f64 {
        if self.cases_run == 0 {
            0.0
        } else {
            self.cases_skipped_divergent as f64 / self.cases_run as f64
        }
    }

    /// Sums several results under a new name.
    pub fn merge(suite: impl Into<String>, parts: impl IntoIterator<Item = SuiteResult>) -> Self {
        let mut out = SuiteResult {
            suite: suite.into(),
            ..SuiteResult::default()
        };
        for part in parts {
            out.cases_run += part.cases_run;
            out.cases_passed += part.cases_passed;
            out.cases_skipped_divergent += part.cases_skipped_divergent;
            out.failures.extend(part.failures);
        }
        out
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {}: run={} passed={} skipped_divergent={} failures={}",
            self.suite,
            self.cases_run,
            self.cases_passed,
            self.cases_skipped_divergent,
            self.failures.len()
        )?;
        for fail in &self.failures {
            writeln!(f, "  case {} (seed {}):", fail.case_index, fail.seed)?;
            writeln!(f, "    initial state: {}", fail.initial_state)?;
            writeln!(f, "    expected: {}", fail.expectation)?;
            writeln!(f, "    observed: {}", fail.observed)?;
            for line in fail.program_text.lines() {
                writeln!(f, "    | {line}")?;
            }
        }
        Ok(())
    }
}

enum Case {
    Pass,
    Skip,
    Fail {
        program: String,
        state: State,
        expectation: String,
        observed: String,
    },
}

fn fail(program: impl Into<String>, state: &State, expectation: impl Into<String>, observed: impl fmt::Debug) -> Case {
    Case::Fail {
        program: program.into(),
        state: state.clone(),
        expectation: expectation.into(),
        observed: format!("{observed:?}"),
    }
}

fn case_seed(cfg: &GenConfig, index: usize) -> u64 {
    cfg.seed.wrapping_add(index as u64)
}

fn run_cases(
    suite: &str,
    cfg: &GenConfig,
    indices: Vec<usize>,
    case: impl Fn(&mut Generator<'_>) -> Case + Sync,
) -> SuiteResult {
    let outcomes: Vec<(usize, Case)> = indices
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(case_seed(cfg, i));
            let mut gen = Generator::new(cfg, &mut rng);
            (i, case(&mut gen))
        })
        .collect();
    let mut result = SuiteResult {
        suite: suite.to_owned(),
        cases_run: outcomes.len(),
        ..SuiteResult::default()
    };
    for (i, outcome) in outcomes {
        match outcome {
            Case::Pass => result.cases_passed += 1,
            Case::Skip => result.cases_skipped_divergent += 1,
            Case::Fail {
                program,
                state,
                expectation,
                observed,
            } => result.failures.push(Failure {
                case_index: i,
                seed: case_seed(cfg, i),
                program_text: program,
                initial_state: state,
                expectation,
                observed,
            }),
        }
    }
    result
}

fn program_and_state(gen: &mut Generator<'_>, depth: u32) -> (Com, State) {
    let c = gen.com(depth);
    let s = gen.state();
    (c, s)
}

/// Small-step and big-step runs agree on every generated program.
pub fn suite_small_big(cases: usize, cfg: &GenConfig) -> SuiteResult {
    suite_small_big_with(cases, cfg, small_step)
}

/// [`suite_small_big`] against an arbitrary small-step function.
pub fn suite_small_big_with(
    cases: usize,
    cfg: &GenConfig,
    step: impl Fn(&ProgConfig) -> Option<ProgConfig> + Sync,
) -> SuiteResult {
    run_cases("small-big", cfg, (0..cases).collect(), |gen| {
        let (c, s) = program_and_state(gen, cfg.max_depth);
        let text = || pretty_com(&c);
        let small = star_run_with(&step, ProgConfig::new(c.clone(), s.clone()), SUITE_FUEL);
        let big = big_step(&c, &s, SUITE_FUEL);
        if small.status == TraceStatus::FuelExhausted && !big.is_terminated() {
            return Case::Skip;
        }
        if let Some(t) = small.final_state() {
            let wide = big_step(&c, &s, cross_fuel(SUITE_FUEL));
            if wide.final_state() != Some(t) {
                return fail(text(), &s, format!("big-step terminates in {t}"), wide);
            }
        }
        if let Some(t) = big.final_state() {
            let wide = star_run_with(&step, ProgConfig::new(c.clone(), s.clone()), cross_fuel(SUITE_FUEL));
            if wide.final_state() != Some(t) {
                return fail(text(), &s, format!("small-step completes in {t}"), (wide.status, &wide.last().state));
            }
        }
        Case::Pass
    })
}

/// Taking one small step and then evaluating agrees with evaluating
/// directly, on random non-final configurations.
pub fn suite_one_step_continue(cases: usize, cfg: &GenConfig) -> SuiteResult {
    // Rule counts before and after one step differ by at most two.
    const SLACK: usize = 2;
    run_cases("one-step-continue", cfg, (0..cases).collect(), |gen| {
        let (mut c, s) = program_and_state(gen, cfg.max_depth);
        while c.is_skip() {
            c = gen.com(cfg.max_depth);
        }
        // Walk a few steps in so that intermediate configurations are covered.
        let walk = gen.rng().random_range(0..20);
        let trace = star_run_with(small_step, ProgConfig::new(c, s), walk);
        let start = trace
            .configs
            .iter()
            .rev()
            .find(|cfg| !cfg.is_final())
            .expect("the first configuration is not final")
            .clone();
        let text = pretty_com(&start.command);
        let Some(next) = small_step(&start) else {
            return fail(text, &start.state, "a successor", "none");
        };
        let direct = big_step(&start.command, &start.state, SUITE_FUEL);
        let stepped = big_step(&next.command, &next.state, SUITE_FUEL);
        match (direct.final_state(), stepped.final_state()) {
            (None, None) => Case::Skip,
            (Some(t), _) => {
                let wide = big_step(&next.command, &next.state, SUITE_FUEL + SLACK);
                if wide.final_state() == Some(t) {
                    Case::Pass
                } else {
                    fail(text, &start.state, format!("after one step big-step ends in {t}"), wide)
                }
            }
            (None, Some(t)) => {
                let wide = big_step(&start.command, &start.state, SUITE_FUEL + SLACK);
                if wide.final_state() == Some(t) {
                    Case::Pass
                } else {
                    fail(text, &start.state, format!("big-step ends in {t}"), wide)
                }
            }
        }
    })
}

/// Determinism, fuel monotonicity and the frame property of big-step.
pub fn suite_big_step_determinism(cases: usize, cfg: &GenConfig) -> SuiteResult {
    run_cases("big-step-determinism", cfg, (0..cases).collect(), |gen| {
        let (c, s) = program_and_state(gen, cfg.max_depth);
        let text = || pretty_com(&c);
        let first = big_step(&c, &s, SUITE_FUEL);
        let again = big_step(&c, &s, SUITE_FUEL);
        let more = big_step(&c, &s, 2 * SUITE_FUEL);
        let BigStepOutcome::Terminated { state, rules_applied } = &first else {
            return if again.is_terminated() {
                fail(text(), &s, "repeat run to exhaust fuel as well", again)
            } else {
                Case::Skip
            };
        };
        match (&again, &more) {
            (
                BigStepOutcome::Terminated { state: s2, rules_applied: r2 },
                BigStepOutcome::Terminated { state: s3, rules_applied: r3 },
            ) if s2 == state && s3 == state && r2 == rules_applied && r3 == rules_applied => {}
            _ => return fail(text(), &s, format!("{state} after {rules_applied} rules on every run"), (again, more)),
        }
        let changed = s.diff(state);
        let vars = c.vars();
        if !changed.is_subset(&vars) {
            return fail(text(), &s, "only program variables change", changed);
        }
        Case::Pass
    })
}

/// Small-step is a function; each step changes at most one variable.
pub fn suite_small_step_determinism(cases: usize, cfg: &GenConfig) -> SuiteResult {
    const STEPS: usize = 200;
    run_cases("small-step-determinism", cfg, (0..cases).collect(), |gen| {
        let (c, s) = program_and_state(gen, cfg.max_depth);
        let trace = star_run_with(small_step, ProgConfig::new(c.clone(), s.clone()), STEPS);
        for pair in trace.configs.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            let again = small_step(a);
            if again.as_ref() != Some(b) || small_step(a) != again {
                return fail(pretty_com(&a.command), &a.state, "a unique successor", again);
            }
            if a.state.diff(&b.state).len() > 1 {
                return fail(pretty_com(&a.command), &a.state, "at most one variable changes", &b.state);
            }
        }
        if (trace.status == TraceStatus::Completed) != trace.last().is_final() {
            return fail(pretty_com(&c), &s, "status consistent with last configuration", trace.status);
        }
        Case::Pass
    })
}

/// Compiled code reproduces big-step results, and counted execution agrees
/// with closure execution.
///
/// `cases` counts programs that terminate under big-step; diverging draws
/// are reported as skipped after their machine run is checked for the
/// converse direction. At most `8 * cases` draws are made.
pub fn suite_compiler(cases: usize, cfg: &GenConfig) -> SuiteResult {
    let mut indices = Vec::new();
    let mut terminating = 0;
    for i in 0..cases.saturating_mul(8) {
        if terminating == cases {
            break;
        }
        let mut rng = rng_for(case_seed(cfg, i));
        let (c, s) = program_and_state(&mut Generator::new(cfg, &mut rng), cfg.max_depth);
        if big_step(&c, &s, SUITE_FUEL).is_terminated() {
            terminating += 1;
        }
        indices.push(i);
    }
    run_cases("compiler", cfg, indices, |gen| {
        let (c, s) = program_and_state(gen, cfg.max_depth);
        let program = ccomp(&c);
        let text = || pretty_com(&c);
        let stray = stray_jumps(&program);
        if !stray.is_empty() {
            return fail(text(), &s, "all jump targets within [0, len]", stray);
        }
        let start = MachineConfig::start(s.clone());
        let end = program.len() as i64;
        let Some(t) = big_step(&c, &s, SUITE_FUEL).final_state().cloned() else {
            // Machine halting cleanly must imply big-step termination.
            let out = exec(&program, &start, SUITE_FUEL * MACHINE_FUEL_FACTOR);
            return match out.halted() {
                Some(halt) if halt.pc == end && halt.stack.is_empty() => {
                    let wide = big_step(&c, &s, usize::MAX);
                    if wide.final_state() == Some(&halt.state) {
                        Case::Pass
                    } else {
                        fail(text(), &s, format!("big-step terminates in {}", halt.state), wide)
                    }
                }
                Some(halt) => fail(text(), &s, "halt at program end with empty stack", halt),
                None => Case::Skip,
            };
        };
        let out = exec(&program, &start, machine_fuel(SUITE_FUEL, &c));
        let expected = MachineConfig::new(end, t, Vec::new());
        let MachineOutcome::Halted { config, steps } = &out else {
            return fail(text(), &s, format!("halt in {expected:?}"), out);
        };
        if *config != expected {
            return fail(text(), &s, format!("halt in {expected:?}"), config);
        }
        let witness = steps_to_halt(&program, &start, machine_fuel(SUITE_FUEL, &c));
        if witness != Some(*steps) {
            return fail(text(), &s, format!("steps_to_halt = {steps}"), witness);
        }
        match exec_n(&program, &start, *steps) {
            Ok(cfg_n) if cfg_n == *config => {}
            other => return fail(text(), &s, format!("exec_n {steps} reaches the halt configuration"), other),
        }
        // Counted execution passes through the same configurations.
        let (trace, _) = exec_trace(&program, &start, *steps);
        let probe = gen.rng().random_range(0..=*steps);
        match exec_n(&program, &start, probe) {
            Ok(mid) if mid == trace[probe] => Case::Pass,
            other => fail(text(), &s, format!("exec_n {probe} matches trace position {probe}"), other),
        }
    })
}

/// `parse_com(pretty_com(c)) == c` on generated programs.
pub fn suite_parser_roundtrip(cases: usize, cfg: &GenConfig) -> SuiteResult {
    run_cases("parser-roundtrip", cfg, (0..cases).collect(), |gen| {
        let c = gen.com(cfg.max_depth);
        let text = pretty_com(&c);
        match parse_com(&text) {
            Ok(back) if back == c => Case::Pass,
            other => fail(text, &State::new(), "the same program", other),
        }
    })
}

/// `parse_asm(pretty_asm(p)) == p` on random instruction lists.
pub fn suite_asm_roundtrip(cases: usize, cfg: &GenConfig) -> SuiteResult {
    run_cases("asm-roundtrip", cfg, (0..cases).collect(), |gen| {
        let len = gen.rng().random_range(0..30);
        let program: Vec<_> = (0..len).map(|_| gen.instr()).collect();
        let text = pretty_asm(&program);
        match parse_asm(&text) {
            Ok(back) if back == program => Case::Pass,
            other => fail(text, &State::new(), "the same instructions", other),
        }
    })
}

/// `eval(subst(A, x, a), s) == eval(A, s[x := aval a s])`.
pub fn suite_substitution(cases: usize, cfg: &GenConfig) -> SuiteResult {
    run_cases("substitution", cfg, (0..cases).collect(), |gen| {
        let a = gen.assertion(3);
        let x = gen.name();
        let by = gen.aexp(2);
        let s = gen.state();
        let lhs = eval_assertion(&subst_assertion(&a, &x, &by), &s);
        let rhs = eval_assertion(&a, &s.update(&x, aval(&by, &s)));
        if lhs == rhs {
            Case::Pass
        } else {
            let text = format!("{} [{x} := {}]", pretty_assertion(&a), crate::parser::pretty_aexp(&by));
            fail(text, &s, format!("{rhs}"), lhs)
        }
    })
}

/// Variables used by the Hoare families; three keeps bounded enumeration
/// cheap.
const HOARE_VARS: usize = 3;
const HOARE_DEPTH: u32 = 3;

fn hoare_vars(parts: &[&Assertion], c: &Com) -> BTreeSet<String> {
    let mut vars = c.vars();
    for a in parts {
        a.vars_into(&mut vars);
    }
    vars
}

/// A precondition that entails `p`: `p` itself, `p` strengthened by a random
/// conjunct, or a random assertion that happens to entail `p`.
fn strengthen(gen: &mut Generator<'_>, p: &Assertion, vars: &BTreeSet<String>, bound: u32) -> Assertion {
    match gen.rng().random_range(0..4) {
        0 => p.clone(),
        1 => Assertion::and(p.clone(), gen.assertion(2)),
        2 => Assertion::and(gen.assertion(2), p.clone()),
        _ => {
            for _ in 0..8 {
                let candidate = gen.assertion(2);
                let mut all = vars.clone();
                candidate.vars_into(&mut all);
                if entails(&candidate, p, &all, bound).is_valid() {
                    return candidate;
                }
            }
            Assertion::and(p.clone(), gen.assertion(1))
        }
    }
}

struct TripleInstance {
    c: Com,
    q: Assertion,
    p: Assertion,
    p_strong: Assertion,
}

fn triple_instance(gen: &mut Generator<'_>, bound: u32) -> TripleInstance {
    let c = gen.loop_free_com(HOARE_DEPTH);
    let q = gen.assertion(2);
    let wp = wp_loop_free(&c, &q).expect("generated command is loop-free");
    let p = if gen.rng().random_bool(0.5) {
        wp
    } else {
        Assertion::and(wp, gen.assertion(1))
    };
    let vars = hoare_vars(&[&q, &p], &c);
    let p_strong = strengthen(gen, &p, &vars, bound);
    TripleInstance { c, q, p, p_strong }
}

fn describe_triple(p: &Assertion, c: &Com, q: &Assertion) -> String {
    format!("{{{}}}\n{}\n{{{}}}", pretty_assertion(p), pretty_com(c), pretty_assertion(q))
}

/// Strengthening a precondition preserves triple validity.
pub fn hoare_strengthen_pre(cases: usize, cfg: &GenConfig, bound: u32) -> SuiteResult {
    run_cases("hoare-strengthen-pre", cfg, (0..cases).collect(), |gen| {
        consequence_case(gen, bound, false)
    })
}

/// Strengthening the precondition and weakening the postcondition
/// preserves triple validity.
pub fn hoare_conseq(cases: usize, cfg: &GenConfig, bound: u32) -> SuiteResult {
    run_cases("hoare-conseq", cfg, (0..cases).collect(), |gen| {
        consequence_case(gen, bound, true)
    })
}

fn consequence_case(gen: &mut Generator<'_>, bound: u32, weaken_post: bool) -> Case {
    gen.restrict_vars(HOARE_VARS);
    let TripleInstance { c, q, p, p_strong } = triple_instance(gen, bound);
    let q_weak = if weaken_post {
        if gen.rng().random_bool(0.5) {
            Assertion::or(q.clone(), gen.assertion(2))
        } else {
            Assertion::imp(gen.assertion(2), q.clone())
        }
    } else {
        q.clone()
    };
    let vars = hoare_vars(&[&q, &p, &p_strong, &q_weak], &c);
    let blank = State::new();
    let premises = [
        ("entails(P', P)", entails(&p_strong, &p, &vars, bound)),
        ("{P} c {Q}", check_triple(&p, &c, &q, &vars, bound, SUITE_FUEL, Mode::Partial)),
        ("entails(Q, Q')", entails(&q, &q_weak, &vars, bound)),
    ];
    for (what, verdict) in premises {
        if !verdict.is_valid() {
            return fail(describe_triple(&p, &c, &q), &blank, format!("premise {what} valid"), verdict);
        }
    }
    let conclusion = check_triple(&p_strong, &c, &q_weak, &vars, bound, SUITE_FUEL, Mode::Partial);
    if conclusion.is_valid() {
        Case::Pass
    } else {
        fail(describe_triple(&p_strong, &c, &q_weak), &blank, "valid", conclusion)
    }
}

/// Entailment is reflexive and transitive at a fixed bound.
pub fn hoare_entailment_laws(cases: usize, cfg: &GenConfig, bound: u32) -> SuiteResult {
    run_cases("hoare-entailment", cfg, (0..cases).collect(), |gen| {
        gen.restrict_vars(HOARE_VARS);
        let a = gen.assertion(3);
        let b = Assertion::or(a.clone(), gen.assertion(2));
        let c = Assertion::or(b.clone(), gen.assertion(1));
        let vars = hoare_vars(&[&a, &b, &c], &Com::Skip);
        let blank = State::new();
        let text = || format!("{} / {} / {}", pretty_assertion(&a), pretty_assertion(&b), pretty_assertion(&c));
        if !entails(&a, &a, &vars, bound).is_valid() {
            return fail(text(), &blank, "A entails A", entails(&a, &a, &vars, bound));
        }
        let ab = entails(&a, &b, &vars, bound);
        let bc = entails(&b, &c, &vars, bound);
        let ac = entails(&a, &c, &vars, bound);
        if ab.is_valid() && bc.is_valid() && !ac.is_valid() {
            return fail(text(), &blank, "A entails C", ac);
        }
        // Mutual entailment means agreement on every enumerated state.
        let ba = entails(&b, &a, &vars, bound);
        if ab.is_valid() && ba.is_valid() {
            let disagree = crate::hoare::enumerate_states(&vars, bound)
                .into_iter()
                .flatten()
                .find(|s| eval_assertion(&a, s) != eval_assertion(&b, s));
            if let Some(s) = disagree {
                return fail(text(), &s, "A and B agree", "they differ");
            }
        }
        Case::Pass
    })
}

/// An annotated loop with the pre- and postcondition it is checked against.
#[derive(Clone, Debug)]
pub struct LoopFixture {
    pub name: &'static str,
    pub source: &'static str,
    /// Defaults to the loop invariant.
    pub pre: Option<&'static str>,
    /// Defaults to `invariant && !guard`.
    pub post: Option<&'static str>,
}

const fn fixture(name: &'static str, source: &'static str) -> LoopFixture {
    LoopFixture { name, source, pre: None, post: None }
}

/// Loops carrying invariants and measures, checked for total correctness.
pub const TOTAL_FIXTURES: &[LoopFixture] = &[
    fixture("countdown", "while (0 < x) invariant (0 <= x) measure (x) { x := x + -1 }"),
    LoopFixture {
        name: "countdown-to-zero",
        source: "while (0 < x) invariant (0 <= x) measure (x) { x := x + -1 }",
        pre: Some("0 <= x"),
        post: Some("x = 0"),
    },
    LoopFixture {
        name: "countdown-from-literal",
        source: "x := 7; while (0 < x) invariant (0 <= x) measure (x) { x := x + -1 }",
        pre: Some("true"),
        post: Some("x = 0"),
    },
    fixture(
        "countdown-accumulate",
        "while (0 < x) invariant (0 <= x) measure (x) { y := y + 2; x := x + -1 }",
    ),
    fixture("double-step", "while (1 < x) invariant (0 <= x) measure (x) { x := x + -2 }"),
    fixture(
        "branching-body",
        "while (0 < x) invariant (0 <= x) measure (x) { if (y < 0) { x := x + -1 } else { x := x + -1; y := y + -1 } }",
    ),
    fixture(
        "sum-measure",
        "while (0 < x && 0 < y) invariant (0 <= x && 0 <= y) measure (x + y) { if (x < y) { y := y + -1 } else { x := x + -1 } }",
    ),
    fixture(
        "shifted-measure",
        "while (0 < x + 3) invariant (0 <= x + 3) measure (x + 3) { x := x + -1 }",
    ),
    fixture("never-entered", "while (false) invariant (true) measure (0) { skip }"),
];

/// Programs with partial-correctness annotations, nested loops included.
pub const PARTIAL_FIXTURES: &[LoopFixture] = &[
    LoopFixture {
        name: "countdown",
        source: "x := 5; while (0 < x) invariant (0 <= x) { x := x + -1 }",
        pre: Some("true"),
        post: Some("x = 0"),
    },
    LoopFixture {
        name: "nested",
        source: "while (0 < x) invariant (0 <= x) { y := x; while (0 < y) invariant (0 <= y && 0 < x) { y := y + -1 }; x := x + -1 }",
        pre: Some("0 <= x"),
        post: Some("x = 0"),
    },
    LoopFixture {
        name: "clamp-up",
        source: "while (x < 3) invariant (x <= 3) { if (x < 0) { x := 0 } else { x := x + 1 } }",
        pre: Some("x <= 3"),
        post: Some("x = 3"),
    },
    LoopFixture {
        name: "count-up",
        source: "y := 0; while (y < x) invariant (y <= x) { y := y + 1 }",
        pre: Some("0 <= x"),
        post: Some("y = x"),
    },
];

fn fixture_parts(f: &LoopFixture) -> Result<(crate::hoare::AnnotatedCom, Assertion, Assertion), String> {
    let c = parse_annotated_com(f.source).map_err(|e| e.to_string())?;
    let last_loop = {
        let mut cur = &c;
        while let crate::hoare::AnnotatedCom::Seq(_, second) = cur {
            cur = second;
        }
        match cur {
            crate::hoare::AnnotatedCom::While(l) => Some(l.clone()),
            _ => None,
        }
    };
    let pick = |text: Option<&str>, default: Option<Assertion>| -> Result<Assertion, String> {
        match text {
            Some(t) => parse_assertion(t).map_err(|e| e.to_string()),
            None => default.ok_or_else(|| "no default available".to_owned()),
        }
    };
    let inv = last_loop.as_ref().and_then(|l| l.invariant.clone());
    let exit = last_loop.as_ref().zip(inv.clone()).map(|(l, i)| {
        Assertion::and(i, Assertion::not(crate::hoare::bexp_to_assertion(&l.cond)))
    });
    Ok((c, pick(f.pre, inv)?, pick(f.post, exit)?))
}

fn fixture_suite(name: &str, fixtures: &[LoopFixture], mode: Mode, bound: u32, fuel: usize) -> SuiteResult {
    let mut result = SuiteResult {
        suite: name.to_owned(),
        ..SuiteResult::default()
    };
    for (i, f) in fixtures.iter().enumerate() {
        result.cases_run += 1;
        let outcome = check_fixture(f, mode, bound, fuel);
        match outcome {
            Ok(()) => result.cases_passed += 1,
            Err((expectation, observed)) => result.failures.push(Failure {
                case_index: i,
                seed: 0,
                program_text: format!("// {}\n{}", f.name, f.source),
                initial_state: State::new(),
                expectation,
                observed,
            }),
        }
    }
    result
}

fn check_fixture(f: &LoopFixture, mode: Mode, bound: u32, fuel: usize) -> Result<(), (String, String)> {
    let (c, pre, post) = fixture_parts(f).map_err(|e| ("a well-formed fixture".to_owned(), e))?;
    let generated = vcgen(&c, &post, mode).map_err(|e| ("annotations present".to_owned(), e.to_string()))?;
    let program = c.erase();
    let vars = hoare_vars(&[&pre, &post], &program);
    let entry = Assertion::imp(pre.clone(), generated.precondition.clone());
    let labelled = std::iter::once(("entry".to_owned(), entry))
        .chain(generated.vcs.into_iter().map(|vc| (vc.label, vc.formula)));
    for (label, formula) in labelled {
        let verdict = entails(&Assertion::True, &formula, &vars, bound);
        if !verdict.is_valid() {
            return Err((format!("VC `{label}` valid: {formula}"), format!("{verdict:?}")));
        }
    }
    match check_triple(&pre, &program, &post, &vars, bound, fuel, mode) {
        Verdict::Valid => Ok(()),
        other => Err(("triple valid by execution".to_owned(), format!("{other:?}"))),
    }
}

/// Total-correctness loop rule: all-valid VCs and a valid triple for each
/// fixture in [`TOTAL_FIXTURES`].
pub fn hoare_while_fun(bound: u32, fuel: usize) -> SuiteResult {
    fixture_suite("hoare-while-total", TOTAL_FIXTURES, Mode::Total, bound, fuel)
}

/// Partial-correctness VCs are sound on [`PARTIAL_FIXTURES`].
pub fn hoare_partial_vcs(bound: u32, fuel: usize) -> SuiteResult {
    fixture_suite("hoare-partial-vcs", PARTIAL_FIXTURES, Mode::Partial, bound, fuel)
}

/// Every Hoare family: entailment laws, substitution, `strengthen_pre`,
/// consequence, and the loop fixtures.
pub fn suite_hoare(bound: u32, cases: usize, cfg: &GenConfig) -> SuiteResult {
    SuiteResult::merge(
        "hoare",
        [
            hoare_entailment_laws(cases, cfg, bound),
            suite_substitution(cases, cfg),
            hoare_strengthen_pre(cases, cfg, bound),
            hoare_conseq(cases, cfg, bound),
            hoare_while_fun(bound.max(1), SUITE_FUEL),
            hoare_partial_vcs(bound.max(1), SUITE_FUEL),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skip_only_corpus_passes() {
        let cfg = GenConfig {
            max_depth: 0,
            ..GenConfig::default()
        };
        let r = suite_small_big(50, &cfg);
        assert_eq!((r.cases_run, r.cases_passed), (50, 50), "{r}");
        let r = suite_compiler(20, &cfg);
        assert!(r.ok() && r.cases_passed == 20, "{r}");
    }

    #[test]
    fn straight_line_compiler_corpus() {
        let cfg = GenConfig {
            loop_probability: 0.0,
            ..GenConfig::default()
        };
        let r = suite_compiler(100, &cfg);
        assert_eq!((r.cases_passed, r.cases_skipped_divergent), (100, 0), "{r}");
    }

    #[test]
    fn results_are_reproducible() {
        let cfg = GenConfig::with_seed(7);
        assert_eq!(suite_small_big(40, &cfg), suite_small_big(40, &cfg));
        assert_eq!(suite_compiler(20, &cfg), suite_compiler(20, &cfg));
    }

    #[test]
    fn zero_cases() {
        let r = suite_small_big(0, &GenConfig::default());
        assert_eq!(r.cases_run, 0);
        assert!(r.ok());
    }

    #[test]
    fn fixtures_parse_and_pass() {
        let r = hoare_while_fun(8, SUITE_FUEL);
        assert!(r.ok() && r.cases_run >= 5, "{r}");
        let r = hoare_partial_vcs(8, SUITE_FUEL);
        assert!(r.ok(), "{r}");
    }

    #[test]
    fn bad_fixture_is_reported() {
        let bad = [fixture("wrong-measure", "while (0 < x) invariant (0 <= x) measure (y) { x := x + -1 }")];
        let r = fixture_suite("t", &bad, Mode::Total, 3, 100);
        assert_eq!(r.failures.len(), 1);
        assert!(r.failures[0].expectation.contains("measure decreases"), "{r}");
    }

    #[test]
    fn small_hoare_suite() {
        let r = suite_hoare(3, 10, &GenConfig::default());
        assert!(r.ok(), "{r}");
    }
}
