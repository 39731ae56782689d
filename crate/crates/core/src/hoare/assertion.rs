use std::collections::BTreeSet;
use std::fmt;

use crate::parser::SourceSpan;
use crate::state::State;
use crate::syntax::{aval, AExp, BExp, Com};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CmpOp {
    Lt,
    Le,
    Eq,
}

impl CmpOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Eq => "=",
        }
    }
}

/// Quantifier-free state predicates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Assertion {
    True,
    False,
    Cmp(CmpOp, AExp, AExp),
    Not(Box<Assertion>),
    And(Box<Assertion>, Box<Assertion>),
    Or(Box<Assertion>, Box<Assertion>),
    Imp(Box<Assertion>, Box<Assertion>),
}

impl Assertion {
    pub fn cmp(op: CmpOp, left: AExp, right: AExp) -> Self {
        Assertion::Cmp(op, left, right)
    }

    pub fn lt(left: AExp, right: AExp) -> Self {
        Assertion::Cmp(CmpOp::Lt, left, right)
    }

    pub fn le(left: AExp, right: AExp) -> Self {
        Assertion::Cmp(CmpOp::Le, left, right)
    }

    pub fn eq(left: AExp, right: AExp) -> Self {
        Assertion::Cmp(CmpOp::Eq, left, right)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(inner: Assertion) -> Self {
        Assertion::Not(Box::new(inner))
    }

    pub fn and(left: Assertion, right: Assertion) -> Self {
        Assertion::And(Box::new(left), Box::new(right))
    }

    pub fn or(left: Assertion, right: Assertion) -> Self {
        Assertion::Or(Box::new(left), Box::new(right))
    }

    pub fn imp(left: Assertion, right: Assertion) -> Self {
        Assertion::Imp(Box::new(left), Box::new(right))
    }

    /// Conjunction of all items; `True` when empty.
    pub fn all(items: impl IntoIterator<Item = Assertion>) -> Self {
        items
            .into_iter()
            .reduce(Assertion::and)
            .unwrap_or(Assertion::True)
    }

    pub fn vars_into(&self, out: &mut BTreeSet<String>) {
        match self {
            Assertion::True | Assertion::False => {}
            Assertion::Cmp(_, l, r) => {
                l.vars_into(out);
                r.vars_into(out);
            }
            Assertion::Not(a) => a.vars_into(out),
            Assertion::And(l, r) | Assertion::Or(l, r) | Assertion::Imp(l, r) => {
                l.vars_into(out);
                r.vars_into(out);
            }
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.vars_into(&mut out);
        out
    }
}

impl From<&BExp> for Assertion {
    fn from(b: &BExp) -> Self {
        bexp_to_assertion(b)
    }
}

impl fmt::Display for Assertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parser::pretty_assertion(self))
    }
}

pub fn bexp_to_assertion(b: &BExp) -> Assertion {
    match b {
        BExp::BoolLit(true) => Assertion::True,
        BExp::BoolLit(false) => Assertion::False,
        BExp::Not(inner) => Assertion::not(bexp_to_assertion(inner)),
        BExp::And(l, r) => Assertion::and(bexp_to_assertion(l), bexp_to_assertion(r)),
        BExp::Less(l, r) => Assertion::lt(l.clone(), r.clone()),
    }
}

pub fn eval_assertion(a: &Assertion, s: &State) -> bool {
    match a {
        Assertion::True => true,
        Assertion::False => false,
        Assertion::Cmp(op, l, r) => {
            let (l, r) = (aval(l, s), aval(r, s));
            match op {
                CmpOp::Lt => l < r,
                CmpOp::Le => l <= r,
                CmpOp::Eq => l == r,
            }
        }
        Assertion::Not(inner) => !eval_assertion(inner, s),
        Assertion::And(l, r) => eval_assertion(l, s) && eval_assertion(r, s),
        Assertion::Or(l, r) => eval_assertion(l, s) || eval_assertion(r, s),
        Assertion::Imp(l, r) => !eval_assertion(l, s) || eval_assertion(r, s),
    }
}

/// Replaces every `Var(x)` inside the arithmetic subterms of `a` by `by`.
pub fn subst_assertion(a: &Assertion, x: &str, by: &AExp) -> Assertion {
    match a {
        Assertion::True | Assertion::False => a.clone(),
        Assertion::Cmp(op, l, r) => Assertion::Cmp(*op, l.subst(x, by), r.subst(x, by)),
        Assertion::Not(inner) => Assertion::not(subst_assertion(inner, x, by)),
        Assertion::And(l, r) => Assertion::and(subst_assertion(l, x, by), subst_assertion(r, x, by)),
        Assertion::Or(l, r) => Assertion::or(subst_assertion(l, x, by), subst_assertion(r, x, by)),
        Assertion::Imp(l, r) => Assertion::imp(subst_assertion(l, x, by), subst_assertion(r, x, by)),
    }
}

/// A command whose loops may carry an invariant and a measure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnnotatedCom {
    Skip,
    Assign(String, AExp),
    Seq(Box<AnnotatedCom>, Box<AnnotatedCom>),
    If(BExp, Box<AnnotatedCom>, Box<AnnotatedCom>),
    While(AnnotatedLoop),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnotatedLoop {
    pub cond: BExp,
    pub invariant: Option<Assertion>,
    pub measure: Option<AExp>,
    pub body: Box<AnnotatedCom>,
    /// Location of the `while` keyword, when parsed from text.
    pub span: Option<SourceSpan>,
}

impl AnnotatedCom {
    pub fn seq(first: AnnotatedCom, second: AnnotatedCom) -> Self {
        AnnotatedCom::Seq(Box::new(first), Box::new(second))
    }

    pub fn while_(
        cond: BExp,
        invariant: Option<Assertion>,
        measure: Option<AExp>,
        body: AnnotatedCom,
    ) -> Self {
        AnnotatedCom::While(AnnotatedLoop {
            cond,
            invariant,
            measure,
            body: Box::new(body),
            span: None,
        })
    }

    /// Drops every annotation.
    pub fn erase(&self) -> Com {
        match self {
            AnnotatedCom::Skip => Com::Skip,
            AnnotatedCom::Assign(x, a) => Com::Assign(x.clone(), a.clone()),
            AnnotatedCom::Seq(c1, c2) => Com::seq(c1.erase(), c2.erase()),
            AnnotatedCom::If(b, c1, c2) => Com::if_(b.clone(), c1.erase(), c2.erase()),
            AnnotatedCom::While(l) => Com::while_(l.cond.clone(), l.body.erase()),
        }
    }
}

impl From<&Com> for AnnotatedCom {
    fn from(c: &Com) -> Self {
        match c {
            Com::Skip => AnnotatedCom::Skip,
            Com::Assign(x, a) => AnnotatedCom::Assign(x.clone(), a.clone()),
            Com::Seq(c1, c2) => AnnotatedCom::seq(c1.as_ref().into(), c2.as_ref().into()),
            Com::If(b, c1, c2) => AnnotatedCom::If(
                b.clone(),
                Box::new(c1.as_ref().into()),
                Box::new(c2.as_ref().into()),
            ),
            Com::While(b, body) => AnnotatedCom::while_(b.clone(), None, None, body.as_ref().into()),
        }
    }
}
