//! Random program generation and the differential test suites built on it.

mod gen;
pub mod mutants;
mod suites;

pub use gen::{gen_com, rng_for, CaseRng, GenConfig, GenConfigError, Generator};
pub use suites::*;
