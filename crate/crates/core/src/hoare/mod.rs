//! Hoare logic for IMP: assertions, weakest preconditions, verification
//! condition generation, and a bounded semantic oracle.
//!
//! Entailment is decided by enumerating every state whose relevant
//! variables lie in `[-bound, bound]`. A `Valid` verdict therefore means
//! "valid within the bound"; counterexamples are always genuine.

mod assertion;
mod check;
mod vcgen;

use std::collections::BTreeSet;

use serde::Serialize;

pub use assertion::{
    bexp_to_assertion, eval_assertion, subst_assertion, AnnotatedCom, AnnotatedLoop, Assertion,
    CmpOp,
};
pub use check::{
    check_triple, entails, enumerate_states, state_space_size, valid, Mode, StateEnumeration,
    Verdict, MAX_ENUMERATED_STATES,
};
pub use vcgen::{snapshot_var, vcgen, wp_loop_free, HoareError, Vc, VcSet};

use crate::state::State;

/// Serialized verdict: a label plus the counterexample, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictRecord {
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<State>,
}

impl From<&Verdict> for VerdictRecord {
    fn from(v: &Verdict) -> Self {
        VerdictRecord {
            verdict: v.label(),
            counterexample: v.counterexample().cloned(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VcRecord {
    pub label: String,
    pub formula_text: String,
    #[serde(flatten)]
    pub verdict: VerdictRecord,
}

/// Result of checking `{pre} c {post}` both through its verification
/// conditions and by direct execution.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub mode: Mode,
    pub bound: u32,
    pub precondition: Assertion,
    pub vcs: Vec<(Vc, Verdict)>,
    pub triple: Verdict,
}

impl VerificationReport {
    pub fn all_valid(&self) -> bool {
        self.triple.is_valid() && self.vcs.iter().all(|(_, v)| v.is_valid())
    }

    pub fn has_counterexample(&self) -> bool {
        self.triple.counterexample().is_some()
            || self.vcs.iter().any(|(_, v)| v.counterexample().is_some())
    }

    pub fn to_serializable(&self) -> VerificationReportRecord {
        VerificationReportRecord {
            mode: self.mode,
            bound: self.bound,
            precondition_text: self.precondition.to_string(),
            vcs: self
                .vcs
                .iter()
                .map(|(vc, v)| VcRecord {
                    label: vc.label.clone(),
                    formula_text: vc.formula.to_string(),
                    verdict: v.into(),
                })
                .collect(),
            triple_verdict: (&self.triple).into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReportRecord {
    pub mode: Mode,
    pub bound: u32,
    pub precondition_text: String,
    pub vcs: Vec<VcRecord>,
    pub triple_verdict: VerdictRecord,
}

/// Generates the VCs of `c` against `post`, adds the entry condition
/// `pre -> precondition`, checks every VC within `bound`, and checks the
/// triple itself by execution with `fuel`.
pub fn verify(
    pre: &Assertion,
    c: &AnnotatedCom,
    post: &Assertion,
    bound: u32,
    fuel: usize,
    mode: Mode,
) -> Result<VerificationReport, HoareError> {
    let generated = vcgen(c, post, mode)?;
    let program = c.erase();
    let vars: BTreeSet<String> = program.vars();
    let entry = Vc {
        label: "precondition implies computed precondition".to_owned(),
        formula: Assertion::imp(pre.clone(), generated.precondition.clone()),
    };
    let vcs = std::iter::once(entry)
        .chain(generated.vcs)
        .map(|vc| {
            let verdict = valid(&vc.formula, &vars, bound);
            (vc, verdict)
        })
        .collect();
    let triple = check_triple(pre, &program, post, &vars, bound, fuel, mode);
    Ok(VerificationReport {
        mode,
        bound,
        precondition: generated.precondition,
        vcs,
        triple,
    })
}
