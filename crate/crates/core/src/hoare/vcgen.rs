use thiserror::Error;

use super::{bexp_to_assertion, subst_assertion, AnnotatedCom, AnnotatedLoop, Assertion, Mode};
use crate::parser::{SourceSpan, RESERVED_PREFIX};
use crate::syntax::{AExp, Com};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum HoareError {
    #[error("weakest preconditions are only computed for loop-free commands")]
    ContainsLoop,
    #[error("loop at {} has no invariant", where_(.span))]
    MissingInvariant { span: Option<SourceSpan> },
    #[error("loop at {} has no measure (required for total correctness)", where_(.span))]
    MissingMeasure { span: Option<SourceSpan> },
}

fn where_(span: &Option<SourceSpan>) -> String {
    span.map_or_else(|| "<unknown>".to_owned(), |s| s.to_string())
}

/// Weakest precondition of a loop-free command.
pub fn wp_loop_free(c: &Com, q: &Assertion) -> Result<Assertion, HoareError> {
    Ok(match c {
        Com::Skip => q.clone(),
        Com::Assign(x, a) => subst_assertion(q, x, a),
        Com::Seq(c1, c2) => wp_loop_free(c1, &wp_loop_free(c2, q)?)?,
        Com::If(b, c1, c2) => {
            let b = bexp_to_assertion(b);
            Assertion::and(
                Assertion::imp(b.clone(), wp_loop_free(c1, q)?),
                Assertion::imp(Assertion::not(b), wp_loop_free(c2, q)?),
            )
        }
        Com::While(..) => return Err(HoareError::ContainsLoop),
    })
}

/// A labelled verification condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vc {
    pub label: String,
    pub formula: Assertion,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VcSet {
    pub vcs: Vec<Vc>,
    /// Precondition computed for the whole command.
    pub precondition: Assertion,
}

/// Name of the `index`-th measure snapshot variable.
pub fn snapshot_var(index: usize) -> String {
    format!("{RESERVED_PREFIX}z{index}")
}

/// Generates verification conditions for `c` against postcondition `q`.
///
/// For each loop `while b inv I { body }`:
/// - partial mode: `I && b -> pre(body, I)`;
/// - total mode, with measure `f` and fresh snapshot `z`:
///   `I && b && f = z -> pre(body, I && f < z)` and `I && b -> 0 <= f`;
/// - both modes: `I && !b -> Q`.
pub fn vcgen(c: &AnnotatedCom, q: &Assertion, mode: Mode) -> Result<VcSet, HoareError> {
    let mut gen = Gen {
        mode,
        vcs: Vec::new(),
        loops: 0,
        snapshots: 0,
    };
    let precondition = gen.pre(c, q)?;
    Ok(VcSet {
        vcs: gen.vcs,
        precondition,
    })
}

struct Gen {
    mode: Mode,
    vcs: Vec<Vc>,
    loops: usize,
    snapshots: usize,
}

impl Gen {
    fn pre(&mut self, c: &AnnotatedCom, q: &Assertion) -> Result<Assertion, HoareError> {
        Ok(match c {
            AnnotatedCom::Skip => q.clone(),
            AnnotatedCom::Assign(x, a) => subst_assertion(q, x, a),
            AnnotatedCom::Seq(c1, c2) => {
                let mid = self.pre(c2, q)?;
                self.pre(c1, &mid)?
            }
            AnnotatedCom::If(b, c1, c2) => {
                let b = bexp_to_assertion(b);
                let p1 = self.pre(c1, q)?;
                let p2 = self.pre(c2, q)?;
                Assertion::and(
                    Assertion::imp(b.clone(), p1),
                    Assertion::imp(Assertion::not(b), p2),
                )
            }
            AnnotatedCom::While(l) => self.while_pre(l, q)?,
        })
    }

    fn while_pre(&mut self, l: &AnnotatedLoop, q: &Assertion) -> Result<Assertion, HoareError> {
        let inv = l
            .invariant
            .clone()
            .ok_or(HoareError::MissingInvariant { span: l.span })?;
        let name = match l.span {
            Some(span) => format!("loop at {span}"),
            None => format!("loop #{}", self.loops),
        };
        self.loops += 1;
        let b = bexp_to_assertion(&l.cond);
        let inv_and_b = Assertion::and(inv.clone(), b.clone());
        match self.mode {
            Mode::Partial => {
                let body_pre = self.pre(&l.body, &inv)?;
                self.push(format!("{name}: invariant preserved"), Assertion::imp(inv_and_b, body_pre));
            }
            Mode::Total => {
                let measure = l
                    .measure
                    .clone()
                    .ok_or(HoareError::MissingMeasure { span: l.span })?;
                let z = AExp::Var(snapshot_var(self.snapshots));
                self.snapshots += 1;
                let post = Assertion::and(inv.clone(), Assertion::lt(measure.clone(), z.clone()));
                let body_pre = self.pre(&l.body, &post)?;
                self.push(
                    format!("{name}: invariant preserved and measure decreases"),
                    Assertion::imp(
                        Assertion::and(inv_and_b.clone(), Assertion::eq(measure.clone(), z)),
                        body_pre,
                    ),
                );
                self.push(
                    format!("{name}: measure non-negative"),
                    Assertion::imp(inv_and_b, Assertion::le(AExp::num(0), measure)),
                );
            }
        }
        self.push(
            format!("{name}: exit establishes postcondition"),
            Assertion::imp(Assertion::and(inv.clone(), Assertion::not(b)), q.clone()),
        );
        Ok(inv)
    }

    fn push(&mut self, label: String, formula: Assertion) {
        self.vcs.push(Vc { label, formula });
    }
}
