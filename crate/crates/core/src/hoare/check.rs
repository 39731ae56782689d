//! Bounded semantic checks: entailment and triple validity by exhaustive
//! enumeration of small states.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::{eval_assertion, Assertion};
use crate::big_step::{big_step, BigStepOutcome};
use crate::state::{State, Value};
use crate::syntax::Com;

/// Enumerations larger than this are not attempted.
pub const MAX_ENUMERATED_STATES: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Partial,
    Total,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Partial => "partial",
            Mode::Total => "total",
        })
    }
}

/// Result of a bounded check. `Valid` means valid on every enumerated state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    CounterexampleFound(State),
    Unknown,
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn counterexample(&self) -> Option<&State> {
        match self {
            Verdict::CounterexampleFound(s) => Some(s),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Valid => "valid",
            Verdict::CounterexampleFound(_) => "counterexample",
            Verdict::Unknown => "unknown",
        }
    }
}

/// Number of states with every variable of `vars` in `[-bound, bound]`,
/// or `None` past [`MAX_ENUMERATED_STATES`].
pub fn state_space_size(vars: usize, bound: u32) -> Option<u64> {
    let width = 2 * u64::from(bound) + 1;
    (0..vars).try_fold(1u64, |acc, _| {
        acc.checked_mul(width).filter(|n| *n <= MAX_ENUMERATED_STATES)
    })
}

/// All states over `vars` with values in `[-bound, bound]`, in
/// lexicographic order: variables sorted by name, the first one most
/// significant, values ascending. `None` when the space is too large.
pub fn enumerate_states(vars: &BTreeSet<String>, bound: u32) -> Option<StateEnumeration> {
    state_space_size(vars.len(), bound)?;
    let lo = -Value::from(bound);
    Some(StateEnumeration {
        names: vars.iter().cloned().collect(),
        values: vec![lo; vars.len()],
        lo,
        hi: Value::from(bound),
        done: false,
    })
}

pub struct StateEnumeration {
    names: Vec<String>,
    values: Vec<Value>,
    lo: Value,
    hi: Value,
    done: bool,
}

impl Iterator for StateEnumeration {
    type Item = State;

    fn next(&mut self) -> Option<State> {
        if self.done {
            return None;
        }
        let state = self
            .names
            .iter()
            .map(String::as_str)
            .zip(self.values.iter().copied())
            .collect();
        // Odometer increment, last variable fastest.
        self.done = true;
        for v in self.values.iter_mut().rev() {
            if *v < self.hi {
                *v += 1;
                self.done = false;
                break;
            }
            *v = self.lo;
        }
        Some(state)
    }
}

fn with_vars<'a>(vars: &BTreeSet<String>, extra: impl IntoIterator<Item = &'a Assertion>) -> BTreeSet<String> {
    let mut all = vars.clone();
    for a in extra {
        a.vars_into(&mut all);
    }
    all
}

/// Whether every enumerated state satisfying `p` satisfies `q`.
///
/// The variables of `p` and `q` are always enumerated, whether or not they
/// appear in `vars`.
pub fn entails(p: &Assertion, q: &Assertion, vars: &BTreeSet<String>, bound: u32) -> Verdict {
    let vars = with_vars(vars, [p, q]);
    let Some(states) = enumerate_states(&vars, bound) else {
        return Verdict::Unknown;
    };
    for s in states {
        if eval_assertion(p, &s) && !eval_assertion(q, &s) {
            return Verdict::CounterexampleFound(s);
        }
    }
    Verdict::Valid
}

/// Whether `a` holds on every enumerated state.
pub fn valid(a: &Assertion, vars: &BTreeSet<String>, bound: u32) -> Verdict {
    entails(&Assertion::True, a, vars, bound)
}

/// Semantic validity of `{p} c {q}` over the enumerated initial states.
///
/// In partial mode a run that exhausts `fuel` is not a counterexample, but
/// the verdict is downgraded to `Unknown` if no counterexample turns up. In
/// total mode exhaustion is a counterexample.
pub fn check_triple(
    p: &Assertion,
    c: &Com,
    q: &Assertion,
    vars: &BTreeSet<String>,
    bound: u32,
    fuel: usize,
    mode: Mode,
) -> Verdict {
    let mut vars = with_vars(vars, [p, q]);
    c.vars_into(&mut vars);
    let Some(states) = enumerate_states(&vars, bound) else {
        return Verdict::Unknown;
    };
    let mut diverged = false;
    for s in states.filter(|s| eval_assertion(p, s)) {
        match big_step(c, &s, fuel) {
            BigStepOutcome::Terminated { state, .. } => {
                if !eval_assertion(q, &state) {
                    return Verdict::CounterexampleFound(s);
                }
            }
            BigStepOutcome::FuelExhausted { .. } => match mode {
                Mode::Total => return Verdict::CounterexampleFound(s),
                Mode::Partial => diverged = true,
            },
        }
    }
    if diverged {
        Verdict::Unknown
    } else {
        Verdict::Valid
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_assertion, parse_com};
    use crate::syntax::{AExp, BExp};

    fn vars(names: &[&str]) -> BTreeSet<String> {
        names.iter().map(|s| (*s).to_owned()).collect()
    }

    fn assn(text: &str) -> Assertion {
        parse_assertion(text).unwrap()
    }

    #[test]
    fn enumeration_order() {
        let states: Vec<State> = enumerate_states(&vars(&["b", "a"]), 1).unwrap().collect();
        assert_eq!(states.len(), 9);
        assert_eq!(states[0], State::from_iter([("a", -1), ("b", -1)]));
        assert_eq!(states[1], State::from_iter([("a", -1), ("b", 0)]));
        assert_eq!(states[3], State::from_iter([("a", 0), ("b", -1)]));
        assert_eq!(states[8], State::from_iter([("a", 1), ("b", 1)]));
        assert_eq!(enumerate_states(&vars(&[]), 3).unwrap().count(), 1);
    }

    #[test]
    fn oversized_spaces_are_unknown() {
        assert_eq!(state_space_size(7, 5), Some(19_487_171).filter(|n| *n <= MAX_ENUMERATED_STATES));
        let many = vars(&["a", "b", "c", "d", "e", "f", "g"]);
        assert_eq!(entails(&Assertion::True, &Assertion::True, &many, 5), Verdict::Unknown);
        assert_eq!(state_space_size(6, 5), Some(1_771_561));
    }

    #[test]
    fn entails_examples() {
        let p = assn("x < 0 && y = 2 || x = 3");
        assert_eq!(entails(&p, &p, &vars(&["x", "y"]), 3), Verdict::Valid);
        assert_eq!(entails(&assn("x < 0"), &assn("x <= 0"), &vars(&["x"]), 5), Verdict::Valid);
        // Values run upwards from -5; x = 0 is the first state with x >= 0.
        assert_eq!(
            entails(&Assertion::True, &assn("x < 0"), &vars(&["x"]), 5),
            Verdict::CounterexampleFound(State::new().update("x", 0))
        );
    }

    #[test]
    fn entails_adds_missing_vars() {
        assert_eq!(
            entails(&Assertion::True, &assn("y < 3"), &vars(&[]), 4),
            Verdict::CounterexampleFound(State::new().update("y", 3))
        );
    }

    #[test]
    fn check_triple_examples() {
        let w = Com::while_(BExp::BoolLit(true), Com::Skip);
        assert_eq!(
            check_triple(&Assertion::False, &w, &Assertion::False, &vars(&[]), 3, 100, Mode::Total),
            Verdict::Valid
        );
        assert!(matches!(
            check_triple(&Assertion::True, &w, &Assertion::True, &vars(&[]), 1, 100, Mode::Total),
            Verdict::CounterexampleFound(_)
        ));
        assert_eq!(
            check_triple(&Assertion::True, &w, &Assertion::True, &vars(&[]), 1, 100, Mode::Partial),
            Verdict::Unknown
        );
    }

    // Executes the countdown from every x in [-8, 8] directly.
    #[test]
    fn countdown_total() {
        let c = parse_com("while (0 < x) { x := x + -1 }").unwrap();
        for x in -8..=8 {
            let out = big_step(&c, &State::new().update("x", x), 10_000);
            assert_eq!(out.final_state().map(|s| s.read("x")), Some(x.min(0)));
        }
        let verdict = check_triple(
            &assn("0 <= x"),
            &c,
            &assn("x = 0"),
            &vars(&["x"]),
            8,
            10_000,
            Mode::Total,
        );
        assert_eq!(verdict, Verdict::Valid);
        let verdict = check_triple(&Assertion::True, &c, &assn("x = 0"), &vars(&["x"]), 8, 10_000, Mode::Total);
        assert_eq!(verdict, Verdict::CounterexampleFound(State::new().update("x", -8)));
    }

    #[test]
    fn post_failure_reports_initial_state() {
        let c = Com::assign("x", AExp::plus(AExp::var("x"), AExp::num(1)));
        let verdict = check_triple(&assn("x < 3"), &c, &assn("x < 3"), &vars(&["x"]), 4, 10, Mode::Partial);
        assert_eq!(verdict, Verdict::CounterexampleFound(State::new().update("x", 2)));
    }
}
