//! Fuelled big-step evaluation.
//!
//! Fuel counts rule applications: every command node the derivation visits
//! costs one unit, so a loop costs one unit per evaluation of its guard.
//! Evaluation uses an explicit work-list and never recurses on the command
//! structure.

use std::sync::Arc;

use crate::state::State;
use crate::syntax::{aval, bval, Com};

#[derive(Clone, Debug)]
pub enum BigStepOutcome {
    Terminated { state: State, rules_applied: usize },
    /// The residual command is a diagnostic hint only; it takes no part in
    /// [`BigStepOutcome::agrees_with`].
    FuelExhausted { residual: Option<Com> },
}

impl BigStepOutcome {
    pub fn final_state(&self) -> Option<&State> {
        match self {
            BigStepOutcome::Terminated { state, .. } => Some(state),
            BigStepOutcome::FuelExhausted { .. } => None,
        }
    }

    pub fn is_terminated(&self) -> bool {
        matches!(self, BigStepOutcome::Terminated { .. })
    }

    /// Same constructor and, when terminated, the same final state.
    pub fn agrees_with(&self, other: &BigStepOutcome) -> bool {
        self.final_state() == other.final_state()
    }
}

pub fn big_step(c: &Com, s: &State, fuel: usize) -> BigStepOutcome {
    let mut state = s.clone();
    let mut todo: Vec<&Com> = vec![c];
    let mut rules = 0;
    while let Some(cur) = todo.pop() {
        if rules == fuel {
            todo.push(cur);
            return BigStepOutcome::FuelExhausted {
                residual: residual(&todo),
            };
        }
        rules += 1;
        match cur {
            Com::Skip => {}
            Com::Assign(x, a) => state = state.update(x, aval(a, &state)),
            Com::Seq(c1, c2) => {
                todo.push(c2);
                todo.push(c1);
            }
            Com::If(b, c1, c2) => todo.push(if bval(b, &state) { c1 } else { c2 }),
            Com::While(b, body) => {
                if bval(b, &state) {
                    todo.push(cur);
                    todo.push(body);
                }
            }
        }
    }
    BigStepOutcome::Terminated {
        state,
        rules_applied: rules,
    }
}

// Remaining work as a single command, innermost first.
fn residual(todo: &[&Com]) -> Option<Com> {
    let mut iter = todo.iter();
    let mut acc = (*iter.next()?).clone();
    for c in iter {
        acc = Com::Seq(Arc::new((*c).clone()), Arc::new(acc));
    }
    Some(acc)
}

/// Whether `c1` and `c2` have agreeing big-step outcomes on every state.
pub fn equivalent_com(c1: &Com, c2: &Com, states: &[State], fuel: usize) -> bool {
    states
        .iter()
        .all(|s| big_step(c1, s, fuel).agrees_with(&big_step(c2, s, fuel)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_com;
    use crate::syntax::{AExp, BExp};

    #[test]
    fn skip_applies_one_rule() {
        let s = State::new().update("a", 4);
        match big_step(&Com::Skip, &s, 1) {
            BigStepOutcome::Terminated { state, rules_applied } => {
                assert_eq!(state, s);
                assert_eq!(rules_applied, 1);
            }
            other => panic!("{other:?}"),
        }
        assert!(!big_step(&Com::Skip, &s, 0).is_terminated());
    }

    #[test]
    fn two_assignments() {
        let c = parse_com("x := 1; y := x").unwrap();
        match big_step(&c, &State::new(), 10) {
            BigStepOutcome::Terminated { state, rules_applied } => {
                assert_eq!(state, State::from_iter([("x", 1), ("y", 1)]));
                assert_eq!(rules_applied, 3);
            }
            other => panic!("{other:?}"),
        }
        // Exactly enough fuel, and one short.
        assert!(big_step(&c, &State::new(), 3).is_terminated());
        assert!(!big_step(&c, &State::new(), 2).is_terminated());
    }

    #[test]
    fn infinite_loop_exhausts() {
        let w = Com::while_(BExp::BoolLit(true), Com::Skip);
        for fuel in [0, 1, 2, 17, 1000] {
            assert!(!big_step(&w, &State::new(), fuel).is_terminated());
        }
    }

    #[test]
    fn residual_hint_names_remaining_work() {
        let c = parse_com("x := 1; y := 2").unwrap();
        let BigStepOutcome::FuelExhausted { residual } = big_step(&c, &State::new(), 2) else {
            panic!()
        };
        assert_eq!(residual, Some(parse_com("y := 2").unwrap()));
    }

    #[test]
    fn counting_loop() {
        let c = parse_com("while (i < 2) { i := i + 1 }").unwrap();
        let out = big_step(&c, &State::new(), 100);
        assert_eq!(out.final_state(), Some(&State::new().update("i", 2)));
        // Three guard evaluations plus two assignments.
        let BigStepOutcome::Terminated { rules_applied, .. } = out else { panic!() };
        assert_eq!(rules_applied, 5);
    }

    #[test]
    fn equivalence_spot_checks() {
        let c = parse_com("x := x + 1; y := x").unwrap();
        let states = [State::new(), State::new().update("x", 5)];
        assert!(equivalent_com(&Com::seq(Com::Skip, c.clone()), &c, &states, 100));
        assert!(!equivalent_com(
            &Com::assign("x", AExp::num(1)),
            &Com::assign("x", AExp::num(2)),
            &[State::new()],
            10
        ));
    }

    #[test]
    fn deep_sequence_chain() {
        const DEPTH: usize = 200_000;
        // Building and dropping the chain is recursive; evaluation is not.
        let handle = std::thread::Builder::new()
            .stack_size(512 << 20)
            .spawn(|| {
                let mut c = Com::Skip;
                for _ in 0..DEPTH {
                    c = Com::seq(Com::assign("x", AExp::plus(AExp::var("x"), AExp::num(1))), c);
                }
                let c = Arc::new(c);
                let inner = c.clone();
                let result = std::thread::Builder::new()
                    .stack_size(64 << 10)
                    .spawn(move || big_step(&inner, &State::new(), usize::MAX))
                    .unwrap()
                    .join()
                    .unwrap();
                drop(c);
                result
            })
            .unwrap();
        let out = handle.join().unwrap();
        assert_eq!(out.final_state().map(|s| s.read("x")), Some(DEPTH as i64));
    }
}
