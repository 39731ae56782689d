//! Evaluates a program with fuelled big-step semantics.
//!
//!     cargo run --example big_step

use imp::{big_step, parse_com, BigStepOutcome, State};

fn main() {
    let source = "
        acc := 0;
        while (0 < n) {
          acc := acc + n;
          n := n + -1
        }";
    let c = parse_com(source).expect("valid program");
    let s = State::new().update("n", 10);
    match big_step(&c, &s, 10_000) {
        BigStepOutcome::Terminated { state, rules_applied } => {
            println!("terminated after {rules_applied} rule applications: {state}");
        }
        BigStepOutcome::FuelExhausted { .. } => println!("out of fuel"),
    }

    let spin = parse_com("while (true) { skip }").unwrap();
    if let BigStepOutcome::FuelExhausted { residual } = big_step(&spin, &s, 25) {
        println!("spin loop exhausted its fuel; remaining work: {residual:?}");
    }
}
