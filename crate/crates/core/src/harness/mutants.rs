//! Deliberately wrong semantics, for checking that the suites notice.

use std::sync::Arc;

use crate::small_step::ProgConfig;
use crate::syntax::{bval, Com};

/// Small-step semantics with the branches of `if` exchanged.
pub fn swapped_if_step(cfg: &ProgConfig) -> Option<ProgConfig> {
    match &*cfg.command {
        Com::If(b, c1, c2) => {
            let branch = if bval(b, &cfg.state) { c2 } else { c1 };
            Some(ProgConfig {
                command: branch.clone(),
                state: cfg.state.clone(),
            })
        }
        Com::Seq(c1, c2) if !c1.is_skip() => {
            let inner = swapped_if_step(&ProgConfig {
                command: c1.clone(),
                state: cfg.state.clone(),
            })?;
            Some(ProgConfig {
                command: Arc::new(Com::Seq(inner.command, c2.clone())),
                state: inner.state,
            })
        }
        _ => crate::small_step::small_step(cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{suite_small_big_with, GenConfig};

    #[test]
    fn swapped_branches_are_caught() {
        let r = suite_small_big_with(300, &GenConfig::default(), swapped_if_step);
        assert!(!r.failures.is_empty(), "{r}");
    }
}
