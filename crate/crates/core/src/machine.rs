//! The stack machine: instructions, single steps, counted and closure
//! execution.
//!
//! Jumps are relative: executing a jump with offset `i` at `pc` lands on
//! `pc + 1 + i`. Any pc outside `[0, len)` halts the machine, negative ones
//! included.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::star::{star_closure, star_walk, StarEnd};
use crate::state::{State, Value};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Instr {
    LoadI(Value),
    Load(String),
    Add,
    Store(String),
    Jmp(Value),
    JmpLess(Value),
    JmpGe(Value),
}

impl fmt::Display for Instr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instr::LoadI(n) => write!(f, "LOADI {n}"),
            Instr::Load(x) => write!(f, "LOAD {x}"),
            Instr::Add => f.write_str("ADD"),
            Instr::Store(x) => write!(f, "STORE {x}"),
            Instr::Jmp(i) => write!(f, "JMP {i}"),
            Instr::JmpLess(i) => write!(f, "JMPLESS {i}"),
            Instr::JmpGe(i) => write!(f, "JMPGE {i}"),
        }
    }
}

impl Instr {
    /// Net change in stack height.
    pub fn stack_effect(&self) -> i64 {
        match self {
            Instr::LoadI(_) | Instr::Load(_) => 1,
            Instr::Add | Instr::Store(_) => -1,
            Instr::Jmp(_) => 0,
            Instr::JmpLess(_) | Instr::JmpGe(_) => -2,
        }
    }

    pub fn jump_offset(&self) -> Option<Value> {
        match self {
            Instr::Jmp(i) | Instr::JmpLess(i) | Instr::JmpGe(i) => Some(*i),
            _ => None,
        }
    }
}

/// Program counter, variable state and operand stack.
///
/// `stack` is stored bottom first: the top of the stack is its last element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MachineConfig {
    pub pc: i64,
    pub state: State,
    pub stack: Vec<Value>,
}

impl MachineConfig {
    pub fn new(pc: i64, state: State, stack: Vec<Value>) -> Self {
        MachineConfig { pc, state, stack }
    }

    /// Fresh configuration at pc 0 with an empty stack.
    pub fn start(state: State) -> Self {
        MachineConfig::new(0, state, Vec::new())
    }

    pub fn stack_top_first(&self) -> Vec<Value> {
        self.stack.iter().rev().copied().collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("stack underflow")]
pub struct StackUnderflow;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    OutOfProgram,
    StackUnderflow,
    FuelExhausted,
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StopReason::OutOfProgram => "pc left the program",
            StopReason::StackUnderflow => "stack underflow",
            StopReason::FuelExhausted => "step budget exhausted",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MachineOutcome {
    Halted {
        config: MachineConfig,
        steps: usize,
    },
    Stopped {
        last: MachineConfig,
        steps: usize,
        reason: StopReason,
    },
}

impl MachineOutcome {
    pub fn config(&self) -> &MachineConfig {
        match self {
            MachineOutcome::Halted { config, .. } => config,
            MachineOutcome::Stopped { last, .. } => last,
        }
    }

    pub fn steps(&self) -> usize {
        match self {
            MachineOutcome::Halted { steps, .. } | MachineOutcome::Stopped { steps, .. } => *steps,
        }
    }

    pub fn halted(&self) -> Option<&MachineConfig> {
        match self {
            MachineOutcome::Halted { config, .. } => Some(config),
            MachineOutcome::Stopped { .. } => None,
        }
    }
}

fn fetch(program: &[Instr], pc: i64) -> Option<&Instr> {
    usize::try_from(pc).ok().and_then(|i| program.get(i))
}

/// One machine step; `Ok(None)` when pc lies outside the program.
pub fn exec1(program: &[Instr], cfg: &MachineConfig) -> Result<Option<MachineConfig>, StackUnderflow> {
    let Some(instr) = fetch(program, cfg.pc) else {
        return Ok(None);
    };
    let mut next = cfg.clone();
    next.pc = cfg.pc.wrapping_add(1);
    let pop = |stack: &mut Vec<Value>| stack.pop().ok_or(StackUnderflow);
    match instr {
        Instr::LoadI(n) => next.stack.push(*n),
        Instr::Load(x) => next.stack.push(cfg.state.read(x)),
        Instr::Add => {
            let top = pop(&mut next.stack)?;
            let second = pop(&mut next.stack)?;
            next.stack.push(second.wrapping_add(top));
        }
        Instr::Store(x) => {
            let v = pop(&mut next.stack)?;
            next.state = cfg.state.update(x, v);
        }
        Instr::Jmp(i) => next.pc = next.pc.wrapping_add(*i),
        Instr::JmpLess(i) | Instr::JmpGe(i) => {
            let top = pop(&mut next.stack)?;
            let second = pop(&mut next.stack)?;
            let taken = match instr {
                Instr::JmpLess(_) => second < top,
                _ => second >= top,
            };
            if taken {
                next.pc = next.pc.wrapping_add(*i);
            }
        }
    }
    Ok(Some(next))
}

/// Failure of [`exec_n`] to take the requested number of steps.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("machine stopped after {steps_completed} steps: {reason}")]
pub struct ExecNFailure {
    pub steps_completed: usize,
    pub reason: StopReason,
    pub last: MachineConfig,
}

/// Exactly `n` successful steps.
pub fn exec_n(program: &[Instr], cfg: &MachineConfig, n: usize) -> Result<MachineConfig, ExecNFailure> {
    let walk = star_walk(|c| exec1(program, c), cfg.clone(), n, |_| {});
    if walk.steps == n {
        return Ok(walk.last);
    }
    let reason = match walk.end {
        StarEnd::Final => StopReason::OutOfProgram,
        StarEnd::Stuck(StackUnderflow) => StopReason::StackUnderflow,
        StarEnd::FuelExhausted => StopReason::FuelExhausted,
    };
    Err(ExecNFailure {
        steps_completed: walk.steps,
        reason,
        last: walk.last,
    })
}

/// Runs until the machine halts, underflows or `fuel` steps have been taken.
pub fn exec(program: &[Instr], cfg: &MachineConfig, fuel: usize) -> MachineOutcome {
    let walk = star_walk(|c| exec1(program, c), cfg.clone(), fuel, |_| {});
    outcome(walk.last, walk.steps, walk.end)
}

fn outcome(last: MachineConfig, steps: usize, end: StarEnd<StackUnderflow>) -> MachineOutcome {
    match end {
        StarEnd::Final => MachineOutcome::Halted { config: last, steps },
        StarEnd::FuelExhausted => MachineOutcome::Stopped {
            last,
            steps,
            reason: StopReason::FuelExhausted,
        },
        StarEnd::Stuck(StackUnderflow) => MachineOutcome::Stopped {
            last,
            steps,
            reason: StopReason::StackUnderflow,
        },
    }
}

/// Every configuration `exec` passes through, with the outcome.
pub fn exec_trace(program: &[Instr], cfg: &MachineConfig, fuel: usize) -> (Vec<MachineConfig>, MachineOutcome) {
    let trace = star_closure(|c| exec1(program, c), cfg.clone(), fuel);
    let steps = trace.steps();
    let last = trace.last().clone();
    (trace.configs, outcome(last, steps, trace.end))
}

/// The number of steps after which `exec` halts, if it does within `fuel`.
pub fn steps_to_halt(program: &[Instr], cfg: &MachineConfig, fuel: usize) -> Option<usize> {
    match exec(program, cfg, fuel) {
        MachineOutcome::Halted { steps, .. } => Some(steps),
        MachineOutcome::Stopped { .. } => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChangedBinding {
    pub name: String,
    pub value: Value,
}

/// Serialized form of one machine configuration in a trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MachineTraceRecord {
    pub step: usize,
    pub pc: i64,
    /// Top of stack first.
    pub stack: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub changed_binding: Option<ChangedBinding>,
}

pub fn trace_records(program: &[Instr], configs: &[MachineConfig]) -> Vec<MachineTraceRecord> {
    configs
        .iter()
        .enumerate()
        .map(|(step, cfg)| {
            let changed_binding = step
                .checked_sub(1)
                .and_then(|prev| fetch(program, configs[prev].pc))
                .and_then(|instr| match instr {
                    Instr::Store(x) => Some(ChangedBinding {
                        name: x.clone(),
                        value: cfg.state.read(x),
                    }),
                    _ => None,
                });
            MachineTraceRecord {
                step,
                pc: cfg.pc,
                stack: cfg.stack_top_first(),
                changed_binding,
            }
        })
        .collect()
}
