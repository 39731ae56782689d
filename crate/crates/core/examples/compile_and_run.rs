//! Compiles a program to stack-machine code, runs it, and compares the
//! result with big-step evaluation.
//!
//!     cargo run --example compile_and_run

use imp::machine::{exec_trace, trace_records};
use imp::{big_step, ccomp, exec_n, parse_com, pretty_asm, steps_to_halt, MachineConfig, State};

fn main() {
    let c = parse_com("while (i < 3) { if (i < 1) { j := j + 10 } else { j := j + 1 }; i := i + 1 }").unwrap();
    let program = ccomp(&c);
    print!("{}", pretty_asm(&program));

    let start = MachineConfig::start(State::new());
    let (configs, outcome) = exec_trace(&program, &start, 10_000);
    for record in trace_records(&program, &configs).iter().take(6) {
        println!("{}", serde_json::to_string(record).unwrap());
    }
    let halted = outcome.halted().expect("program halts");
    println!("halted at pc={} with {} and stack {:?}", halted.pc, halted.state, halted.stack);

    let expected = big_step(&c, &State::new(), 10_000);
    assert_eq!(expected.final_state(), Some(&halted.state));

    let n = steps_to_halt(&program, &start, 10_000).unwrap();
    assert_eq!(exec_n(&program, &start, n).as_ref(), Ok(halted));
    println!("exec_n reaches the same configuration in {n} steps");
}
