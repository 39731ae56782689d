//! Reflexive-transitive closure of a deterministic step function.
//!
//! Both the program semantics ([`crate::small_step`]) and the stack machine
//! ([`crate::machine`]) run through [`star_walk`], so "zero or more steps"
//! means the same thing for both.

use std::convert::Infallible;

/// Why an iteration stopped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StarEnd<E> {
    /// The step function reported no successor.
    Final,
    /// The step budget ran out on a configuration that still has a successor.
    FuelExhausted,
    /// The step function failed.
    Stuck(E),
}

/// All configurations visited, the start included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace<C, E = Infallible> {
    pub configs: Vec<C>,
    pub end: StarEnd<E>,
}

impl<C, E> Trace<C, E> {
    pub fn last(&self) -> &C {
        self.configs.last().expect("traces are never empty")
    }

    pub fn steps(&self) -> usize {
        self.configs.len() - 1
    }
}

/// Outcome of [`star_walk`]: the last configuration reached, how many steps
/// were taken, and why the walk stopped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk<C, E> {
    pub last: C,
    pub steps: usize,
    pub end: StarEnd<E>,
}

/// Applies `step` at most `fuel` times starting from `start`, calling `visit`
/// on every configuration reached after the start.
///
/// When the budget is spent the last configuration is probed once more so
/// that a final configuration is reported as [`StarEnd::Final`] rather than
/// as exhaustion.
pub fn star_walk<C, E>(
    mut step: impl FnMut(&C) -> Result<Option<C>, E>,
    start: C,
    fuel: usize,
    mut visit: impl FnMut(&C),
) -> Walk<C, E> {
    let mut cur = start;
    let mut steps = 0;
    loop {
        match step(&cur) {
            Ok(None) => {
                return Walk {
                    last: cur,
                    steps,
                    end: StarEnd::Final,
                }
            }
            Ok(Some(_)) | Err(_) if steps == fuel => {
                return Walk {
                    last: cur,
                    steps,
                    end: StarEnd::FuelExhausted,
                }
            }
            Err(e) => {
                return Walk {
                    last: cur,
                    steps,
                    end: StarEnd::Stuck(e),
                }
            }
            Ok(Some(next)) => {
                visit(&next);
                cur = next;
                steps += 1;
            }
        }
    }
}

/// [`star_walk`] that records every configuration.
pub fn star_closure<C: Clone, E>(
    step: impl FnMut(&C) -> Result<Option<C>, E>,
    start: C,
    fuel: usize,
) -> Trace<C, E> {
    let mut configs = vec![start.clone()];
    let walk = star_walk(step, start, fuel, |c| configs.push(c.clone()));
    Trace {
        configs,
        end: walk.end,
    }
}

/// Adapts an infallible `Option`-returning step function.
pub fn total<C>(mut step: impl FnMut(&C) -> Option<C>) -> impl FnMut(&C) -> Result<Option<C>, Infallible> {
    move |c| Ok(step(c))
}
