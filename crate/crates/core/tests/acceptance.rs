//! Acceptance run: every suite at its full case count, one PASS/FAIL line per
//! criterion. Run with `cargo test -p imp --test acceptance -- --nocapture`.

use std::time::{Duration, Instant};

use imp::harness::{self, mutants, rng_for, GenConfig, Generator, SuiteResult, MACHINE_FUEL_FACTOR, SUITE_FUEL};
use imp::{big_step, ccomp, exec, exec_n, steps_to_halt, MachineConfig, MachineOutcome};

struct Report {
    lines: Vec<(bool, String)>,
}

impl Report {
    fn check(&mut self, name: &str, pass: bool, detail: String) {
        let line = format!("{} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
        println!("{line}");
        self.lines.push((pass, line));
    }

    fn suite(&mut self, name: &str, r: &SuiteResult, extra: Option<(bool, String)>) {
        let (extra_ok, extra_text) = extra.unwrap_or((true, String::new()));
        if !r.ok() {
            eprintln!("{r}");
        }
        self.check(
            name,
            r.ok() && extra_ok,
            format!(
                "run={} passed={} skipped={} failures={}{extra_text}",
                r.cases_run,
                r.cases_passed,
                r.cases_skipped_divergent,
                r.failures.len()
            ),
        );
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn within(d: Duration, limit_secs: u64) -> (bool, String) {
    (d < Duration::from_secs(limit_secs), format!(" time={:.2}s (limit {limit_secs}s)", d.as_secs_f64()))
}

/// Replays the compiler corpus independently of the suite: for each program
/// that big-steps within the suite fuel, `exec_n` for `steps_to_halt` steps
/// must land exactly on the configuration `exec` halts in.
fn exec_eq_exec_n(cfg: &GenConfig, wanted: usize) -> (usize, usize) {
    let (mut checked, mut failures) = (0, 0);
    let mut i = 0u64;
    while checked < wanted && i < 8 * wanted as u64 {
        let mut rng = rng_for(cfg.seed.wrapping_add(i));
        i += 1;
        let mut gen = Generator::new(cfg, &mut rng);
        let c = gen.com(cfg.max_depth);
        let s = gen.state();
        if !big_step(&c, &s, SUITE_FUEL).is_terminated() {
            continue;
        }
        checked += 1;
        let program = ccomp(&c);
        let start = MachineConfig::start(s);
        let fuel = SUITE_FUEL * MACHINE_FUEL_FACTOR * (1 + c.size());
        let ok = match (exec(&program, &start, fuel), steps_to_halt(&program, &start, fuel)) {
            (MachineOutcome::Halted { config, .. }, Some(n)) => exec_n(&program, &start, n) == Ok(config),
            _ => false,
        };
        failures += usize::from(!ok);
    }
    (checked, failures)
}

#[test]
fn acceptance() {
    let cfg = GenConfig::default();
    let mut report = Report { lines: Vec::new() };
    let total = Instant::now();

    let (r, t) = timed(|| harness::suite_small_big(1000, &cfg));
    let skip_ok = r.skipped_fraction() < 0.5;
    let (time_ok, time_text) = within(t, 30);
    report.suite(
        "small-big equivalence (1000 cases, fuel 10^4)",
        &r,
        Some((
            skip_ok && time_ok,
            format!(" skipped_fraction={:.3} (limit 0.5){time_text}", r.skipped_fraction()),
        )),
    );

    let r = harness::suite_one_step_continue(1000, &cfg);
    report.suite("one-step-continue (1000 configurations)", &r, None);

    let (r, t) = timed(|| harness::suite_compiler(1000, &cfg));
    let terminating = r.cases_passed + r.failures.len();
    let (time_ok, time_text) = within(t, 30);
    report.suite(
        "compiler correctness (1000 terminating cases)",
        &r,
        Some((terminating >= 1000 && time_ok, format!(" terminating={terminating}{time_text}"))),
    );

    let (checked, failures) = exec_eq_exec_n(&cfg, 1000);
    report.check(
        "exec_eq_exec_n (every halting compiler case)",
        checked == 1000 && failures == 0,
        format!("checked={checked} failures={failures}"),
    );

    let r = harness::hoare_strengthen_pre(200, &cfg, 5);
    report.suite("hoare strengthen_pre (200 instances, bound 5)", &r, None);
    let r = harness::hoare_conseq(200, &cfg, 5);
    report.suite("hoare conseq (200 instances, bound 5)", &r, None);
    let r = harness::hoare_while_fun(8, SUITE_FUEL);
    let has_countdown = harness::TOTAL_FIXTURES.iter().any(|f| f.name == "countdown");
    report.suite(
        "hoare While_fun fixtures (total, bound 8, fuel 10^4)",
        &r,
        Some((r.cases_run >= 5 && has_countdown, format!(" fixtures={}", r.cases_run))),
    );

    let r = harness::suite_big_step_determinism(500, &cfg);
    report.suite("big-step determinism (500 cases)", &r, None);
    let r = harness::suite_small_step_determinism(500, &cfg);
    report.suite("small-step determinism (500 cases)", &r, None);

    let r = harness::suite_parser_roundtrip(1000, &cfg);
    report.suite("parser round-trip (1000 programs)", &r, None);
    let r = harness::suite_asm_roundtrip(200, &cfg);
    report.suite("asm round-trip (200 instruction lists)", &r, None);

    let r = harness::suite_substitution(500, &cfg);
    report.suite("substitution lemma (500 cases)", &r, None);

    let r = harness::suite_small_big_with(1000, &cfg, mutants::swapped_if_step);
    report.check(
        "mutation sanity (swapped if branches)",
        !r.failures.is_empty(),
        format!("failures={} of {} cases", r.failures.len(), r.cases_run),
    );

    let (time_ok, time_text) = within(total.elapsed(), 120);
    report.check("full acceptance run", time_ok, time_text.trim().to_owned());

    let failed: Vec<&String> = report.lines.iter().filter(|(ok, _)| !ok).map(|(_, l)| l).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:#?}");
}
