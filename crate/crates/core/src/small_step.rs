//! Single-step reduction of commands and its closure.

use std::sync::Arc;

use serde::Serialize;

use crate::parser::pretty_com;
use crate::star::{star_closure, total, StarEnd};
use crate::state::State;
use crate::syntax::{aval, bval, Com};

/// A command paired with the state it runs in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProgConfig {
    pub command: Arc<Com>,
    pub state: State,
}

impl ProgConfig {
    pub fn new(command: impl Into<Arc<Com>>, state: State) -> Self {
        ProgConfig {
            command: command.into(),
            state,
        }
    }

    pub fn is_final(&self) -> bool {
        self.command.is_skip()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceStatus {
    Completed,
    FuelExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepTrace {
    pub configs: Vec<ProgConfig>,
    pub status: TraceStatus,
}

impl StepTrace {
    pub fn last(&self) -> &ProgConfig {
        self.configs.last().expect("traces are never empty")
    }

    /// The final state, if the run completed.
    pub fn final_state(&self) -> Option<&State> {
        (self.status == TraceStatus::Completed).then(|| &self.last().state)
    }

    /// One serializable record per configuration.
    pub fn records(&self) -> Vec<TraceRecord> {
        self.configs
            .iter()
            .enumerate()
            .map(|(step_index, cfg)| TraceRecord {
                step_index,
                command_text: pretty_com(&cfg.command),
                state_bindings: cfg.state.clone(),
            })
            .collect()
    }
}

/// Serialized form of one trace entry.
#[derive(Clone, Debug, Serialize)]
pub struct TraceRecord {
    pub step_index: usize,
    pub command_text: String,
    pub state_bindings: State,
}

/// The unique successor of `cfg`, or `None` when `cfg` is final.
pub fn small_step(cfg: &ProgConfig) -> Option<ProgConfig> {
    let s = &cfg.state;
    let (command, state) = match &*cfg.command {
        Com::Skip => return None,
        Com::Assign(x, a) => (Arc::new(Com::Skip), s.update(x, aval(a, s))),
        Com::Seq(c1, c2) if c1.is_skip() => (c2.clone(), s.clone()),
        Com::Seq(c1, c2) => {
            let inner = small_step(&ProgConfig {
                command: c1.clone(),
                state: s.clone(),
            })?;
            (Arc::new(Com::Seq(inner.command, c2.clone())), inner.state)
        }
        Com::If(b, c1, c2) => {
            let branch = if bval(b, s) { c1 } else { c2 };
            (branch.clone(), s.clone())
        }
        Com::While(b, body) => (
            Arc::new(Com::If(
                b.clone(),
                Arc::new(Com::Seq(body.clone(), cfg.command.clone())),
                Arc::new(Com::Skip),
            )),
            s.clone(),
        ),
    };
    Some(ProgConfig { command, state })
}

/// Iterates [`small_step`] at most `max_steps` times.
pub fn star_run(cfg: ProgConfig, max_steps: usize) -> StepTrace {
    star_run_with(small_step, cfg, max_steps)
}

/// [`star_run`] over an arbitrary stepper; used to run the harness against
/// deliberately broken semantics.
pub fn star_run_with(
    step: impl Fn(&ProgConfig) -> Option<ProgConfig>,
    cfg: ProgConfig,
    max_steps: usize,
) -> StepTrace {
    let trace = star_closure(total(step), cfg, max_steps);
    let status = match trace.end {
        StarEnd::Final => TraceStatus::Completed,
        StarEnd::FuelExhausted => TraceStatus::FuelExhausted,
        StarEnd::Stuck(never) => match never {},
    };
    StepTrace {
        configs: trace.configs,
        status,
    }
}
