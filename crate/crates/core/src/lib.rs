//! An executable toolchain for IMP, the minimal imperative language with
//! assignment, sequencing, conditionals and `while` loops over a global
//! integer state.
//!
//! - [`syntax`], [`state`]: abstract syntax and the `aval`/`bval` evaluators.
//! - [`parser`]: `.imp` source, assertions and `.asm` listings.
//! - [`big_step`], [`small_step`]: fuelled operational semantics; [`star`]
//!   holds the closure shared with the machine.
//! - [`machine`], [`compiler`]: the stack machine and the compiler targeting it.
//! - [`hoare`]: assertions, weakest preconditions, VC generation and a
//!   bounded semantic oracle.
//! - [`harness`]: random programs and differential property suites.
//! - [`cli`]: the `imp` command-line tool.

pub mod big_step;
pub mod cli;
pub mod compiler;
pub mod harness;
pub mod hoare;
pub mod machine;
pub mod parser;
pub mod small_step;
pub mod star;
pub mod state;
pub mod syntax;

pub use big_step::{big_step, equivalent_com, BigStepOutcome};
pub use compiler::{acomp, bcomp, ccomp};
pub use machine::{exec, exec1, exec_n, steps_to_halt, Instr, MachineConfig, MachineOutcome};
pub use parser::{parse_annotated_com, parse_asm, parse_com, pretty_asm, pretty_com, ParseError};
pub use small_step::{small_step, star_run, ProgConfig, StepTrace, TraceStatus};
pub use state::{State, Value};
pub use syntax::{aval, bval, AExp, BExp, Com};
