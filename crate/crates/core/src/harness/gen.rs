//! Seeded random generation of programs, states, assertions and machine code.
//!
//! Every generator draws from a [`CaseRng`] (ChaCha8 seeded with a `u64`),
//! so identical configuration and seed give identical output on every
//! platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::hoare::{Assertion, CmpOp};
use crate::machine::Instr;
use crate::state::{State, Value};
use crate::syntax::{AExp, BExp, Com};

pub type CaseRng = ChaCha8Rng;

pub fn rng_for(seed: u64) -> CaseRng {
    ChaCha8Rng::seed_from_u64(seed)
}

const BASE_NAMES: [&str; 4] = ["x", "y", "z", "w"];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GenConfig {
    pub max_depth: u32,
    pub max_vars: usize,
    /// Inclusive range for integer literals and initial state values.
    pub literal_range: (Value, Value),
    pub loop_probability: f64,
    pub seed: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_depth: 6,
            max_vars: 4,
            literal_range: (-4, 4),
            loop_probability: 0.25,
            seed: 0xC0FFEE,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GenConfigError {
    #[error("literal range is empty: {0} > {1}")]
    EmptyRange(Value, Value),
    #[error("loop probability {0} is outside [0, 1]")]
    Probability(String),
    #[error("at least one variable is required")]
    NoVars,
}

impl GenConfig {
    pub fn with_seed(seed: u64) -> Self {
        GenConfig {
            seed,
            ..GenConfig::default()
        }
    }

    pub fn validate(&self) -> Result<(), GenConfigError> {
        let (lo, hi) = self.literal_range;
        if lo > hi {
            return Err(GenConfigError::EmptyRange(lo, hi));
        }
        if !(0.0..=1.0).contains(&self.loop_probability) {
            return Err(GenConfigError::Probability(self.loop_probability.to_string()));
        }
        if self.max_vars == 0 {
            return Err(GenConfigError::NoVars);
        }
        Ok(())
    }

    /// Variable names available to generated programs: `x, y, z, w`, then
    /// `v4, v5, ...`.
    pub fn var_names(&self) -> Vec<String> {
        (0..self.max_vars)
            .map(|i| BASE_NAMES.get(i).map_or_else(|| format!("v{i}"), |s| (*s).to_owned()))
            .collect()
    }
}

pub struct Generator<'a> {
    cfg: &'a GenConfig,
    names: Vec<String>,
    rng: &'a mut CaseRng,
}

impl<'a> Generator<'a> {
    pub fn new(cfg: &'a GenConfig, rng: &'a mut CaseRng) -> Self {
        Generator {
            cfg,
            names: cfg.var_names(),
            rng,
        }
    }

    /// Restricts generation to the first `n` variable names.
    pub fn restrict_vars(&mut self, n: usize) {
        self.names.truncate(n.max(1));
    }

    pub fn rng(&mut self) -> &mut CaseRng {
        self.rng
    }

    fn literal(&mut self) -> Value {
        let (lo, hi) = self.cfg.literal_range;
        self.rng.random_range(lo..=hi)
    }

    pub fn name(&mut self) -> String {
        let i = self.rng.random_range(0..self.names.len());
        self.names[i].clone()
    }

    pub fn aexp(&mut self, depth: u32) -> AExp {
        if depth > 0 && self.rng.random_bool(0.35) {
            return AExp::plus(self.aexp(depth - 1), self.aexp(depth - 1));
        }
        if self.rng.random_bool(0.5) {
            AExp::NumLit(self.literal())
        } else {
            AExp::Var(self.name())
        }
    }

    pub fn bexp(&mut self, depth: u32) -> BExp {
        let roll = self.rng.random_range(0..10);
        match roll {
            0 if depth > 0 => BExp::not(self.bexp(depth - 1)),
            1 | 2 if depth > 0 => BExp::and(self.bexp(depth - 1), self.bexp(depth - 1)),
            3 => BExp::BoolLit(self.rng.random_bool(0.5)),
            _ => BExp::less(self.aexp(1), self.aexp(1)),
        }
    }

    /// A random command of nesting depth at most `depth`.
    pub fn com(&mut self, depth: u32) -> Com {
        let expr_depth = depth.min(2);
        if depth == 0 {
            return if self.rng.random_bool(0.2) {
                Com::Skip
            } else {
                Com::Assign(self.name(), self.aexp(0))
            };
        }
        if self.rng.random_bool(self.cfg.loop_probability) {
            return self.progressing_loop(depth);
        }
        match self.rng.random_range(0..20) {
            0 => Com::Skip,
            1..=7 => Com::Assign(self.name(), self.aexp(expr_depth)),
            8..=14 => Com::seq(self.com(depth - 1), self.com(depth - 1)),
            _ => Com::if_(self.bexp(expr_depth), self.com(depth - 1), self.com(depth - 1)),
        }
    }

    /// A loop whose body ends by moving its guard variable towards exit.
    fn progressing_loop(&mut self, depth: u32) -> Com {
        let v = self.name();
        let limit = self.literal();
        let step = self.rng.random_range(1..=self.cfg.literal_range.1.max(1));
        let upward = self.rng.random_bool(0.5);
        let (guard, delta) = if upward {
            (BExp::less(AExp::Var(v.clone()), AExp::NumLit(limit)), step)
        } else {
            (BExp::less(AExp::NumLit(limit), AExp::Var(v.clone())), -step)
        };
        let guard = if self.rng.random_bool(0.2) {
            BExp::and(guard, self.bexp(1))
        } else {
            guard
        };
        let advance = Com::assign(v.clone(), AExp::plus(AExp::Var(v), AExp::NumLit(delta)));
        let body = if self.rng.random_bool(0.3) {
            advance
        } else {
            Com::seq(self.com(depth - 1), advance)
        };
        Com::while_(guard, body)
    }

    /// A random loop-free command.
    pub fn loop_free_com(&mut self, depth: u32) -> Com {
        let saved = self.cfg;
        let no_loops = GenConfig {
            loop_probability: 0.0,
            ..saved.clone()
        };
        let mut inner = Generator {
            cfg: &no_loops,
            names: self.names.clone(),
            rng: self.rng,
        };
        inner.com(depth)
    }

    /// Binds every available variable to a random literal.
    pub fn state(&mut self) -> State {
        let names = self.names.clone();
        names.into_iter().map(|n| (n, self.literal())).collect()
    }

    pub fn assertion(&mut self, depth: u32) -> Assertion {
        let roll = self.rng.random_range(0..12);
        match roll {
            0 if depth > 0 => Assertion::not(self.assertion(depth - 1)),
            1 | 2 if depth > 0 => Assertion::and(self.assertion(depth - 1), self.assertion(depth - 1)),
            3 | 4 if depth > 0 => Assertion::or(self.assertion(depth - 1), self.assertion(depth - 1)),
            5 if depth > 0 => Assertion::imp(self.assertion(depth - 1), self.assertion(depth - 1)),
            6 => {
                if self.rng.random_bool(0.5) {
                    Assertion::True
                } else {
                    Assertion::False
                }
            }
            _ => {
                let op = [CmpOp::Lt, CmpOp::Le, CmpOp::Eq][self.rng.random_range(0..3)];
                Assertion::Cmp(op, self.aexp(1), self.aexp(1))
            }
        }
    }

    pub fn instr(&mut self) -> Instr {
        match self.rng.random_range(0..7) {
            0 => Instr::LoadI(self.rng.random()),
            1 => Instr::Load(self.name()),
            2 => Instr::Add,
            3 => Instr::Store(self.name()),
            4 => Instr::Jmp(self.rng.random_range(-20..=20)),
            5 => Instr::JmpLess(self.rng.random_range(-20..=20)),
            _ => Instr::JmpGe(self.rng.random()),
        }
    }
}

/// A random program for `cfg`, drawing from `rng`.
pub fn gen_com(cfg: &GenConfig, rng: &mut CaseRng) -> Com {
    Generator::new(cfg, rng).com(cfg.max_depth)
}
