//! Abstract syntax of IMP and the expression evaluators.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::state::{State, Value};

/// Arithmetic expressions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AExp {
    NumLit(Value),
    Var(String),
    Plus(Box<AExp>, Box<AExp>),
}

/// Boolean expressions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BExp {
    BoolLit(bool),
    Not(Box<BExp>),
    And(Box<BExp>, Box<BExp>),
    Less(AExp, AExp),
}

/// Commands. Sub-commands are reference counted so that small-step
/// rewriting can share unchanged subtrees.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Com {
    Skip,
    Assign(String, AExp),
    Seq(Arc<Com>, Arc<Com>),
    If(BExp, Arc<Com>, Arc<Com>),
    While(BExp, Arc<Com>),
}

impl AExp {
    pub fn num(n: Value) -> Self {
        AExp::NumLit(n)
    }

    pub fn var(name: impl Into<String>) -> Self {
        AExp::Var(name.into())
    }

    pub fn plus(left: AExp, right: AExp) -> Self {
        AExp::Plus(Box::new(left), Box::new(right))
    }

    pub fn vars_into(&self, out: &mut BTreeSet<String>) {
        match self {
            AExp::NumLit(_) => {}
            AExp::Var(x) => {
                out.insert(x.clone());
            }
            AExp::Plus(l, r) => {
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

    /// Replaces every `Var(name)` by `by`.
    pub fn subst(&self, name: &str, by: &AExp) -> AExp {
        match self {
            AExp::Var(x) if x == name => by.clone(),
            AExp::NumLit(_) | AExp::Var(_) => self.clone(),
            AExp::Plus(l, r) => AExp::plus(l.subst(name, by), r.subst(name, by)),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            AExp::NumLit(_) | AExp::Var(_) => 1,
            AExp::Plus(l, r) => 1 + l.size() + r.size(),
        }
    }
}

impl BExp {
    pub fn not(inner: BExp) -> Self {
        BExp::Not(Box::new(inner))
    }

    pub fn and(left: BExp, right: BExp) -> Self {
        BExp::And(Box::new(left), Box::new(right))
    }

    pub fn less(left: AExp, right: AExp) -> Self {
        BExp::Less(left, right)
    }

    pub fn vars_into(&self, out: &mut BTreeSet<String>) {
        match self {
            BExp::BoolLit(_) => {}
            BExp::Not(b) => b.vars_into(out),
            BExp::And(l, r) => {
                l.vars_into(out);
                r.vars_into(out);
            }
            BExp::Less(l, r) => {
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

    pub fn size(&self) -> usize {
        match self {
            BExp::BoolLit(_) => 1,
            BExp::Not(b) => 1 + b.size(),
            BExp::And(l, r) => 1 + l.size() + r.size(),
            BExp::Less(l, r) => 1 + l.size() + r.size(),
        }
    }
}

impl Com {
    pub fn assign(target: impl Into<String>, rhs: AExp) -> Self {
        Com::Assign(target.into(), rhs)
    }

    pub fn seq(first: Com, second: Com) -> Self {
        Com::Seq(Arc::new(first), Arc::new(second))
    }

    pub fn if_(cond: BExp, then_branch: Com, else_branch: Com) -> Self {
        Com::If(cond, Arc::new(then_branch), Arc::new(else_branch))
    }

    pub fn while_(cond: BExp, body: Com) -> Self {
        Com::While(cond, Arc::new(body))
    }

    pub fn is_skip(&self) -> bool {
        matches!(self, Com::Skip)
    }

    pub fn vars_into(&self, out: &mut BTreeSet<String>) {
        // Iterative so that very long `;` chains do not exhaust the stack.
        let mut todo = vec![self];
        while let Some(c) = todo.pop() {
            match c {
                Com::Skip => {}
                Com::Assign(x, a) => {
                    out.insert(x.clone());
                    a.vars_into(out);
                }
                Com::Seq(c1, c2) => {
                    todo.push(c2);
                    todo.push(c1);
                }
                Com::If(b, c1, c2) => {
                    b.vars_into(out);
                    todo.push(c2);
                    todo.push(c1);
                }
                Com::While(b, body) => {
                    b.vars_into(out);
                    todo.push(body);
                }
            }
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.vars_into(&mut out);
        out
    }

    /// Number of AST nodes, expressions included.
    pub fn size(&self) -> usize {
        let mut n = 0;
        let mut todo = vec![self];
        while let Some(c) = todo.pop() {
            n += 1;
            match c {
                Com::Skip => {}
                Com::Assign(_, a) => n += a.size(),
                Com::Seq(c1, c2) => {
                    todo.push(c2);
                    todo.push(c1);
                }
                Com::If(b, c1, c2) => {
                    n += b.size();
                    todo.push(c2);
                    todo.push(c1);
                }
                Com::While(b, body) => {
                    n += b.size();
                    todo.push(body);
                }
            }
        }
        n
    }

    pub fn contains_while(&self) -> bool {
        match self {
            Com::Skip | Com::Assign(..) => false,
            Com::Seq(c1, c2) | Com::If(_, c1, c2) => c1.contains_while() || c2.contains_while(),
            Com::While(..) => true,
        }
    }
}

pub fn aval(a: &AExp, s: &State) -> Value {
    match a {
        AExp::NumLit(n) => *n,
        AExp::Var(x) => s.read(x),
        AExp::Plus(l, r) => aval(l, s).wrapping_add(aval(r, s)),
    }
}

pub fn bval(b: &BExp, s: &State) -> bool {
    match b {
        BExp::BoolLit(v) => *v,
        BExp::Not(inner) => !bval(inner, s),
        BExp::And(l, r) => bval(l, s) && bval(r, s),
        BExp::Less(l, r) => aval(l, s) < aval(r, s),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x_is(v: Value) -> State {
        State::new().update("x", v)
    }

    #[test]
    fn aval_cases() {
        assert_eq!(aval(&AExp::num(5), &x_is(9)), 5);
        assert_eq!(aval(&AExp::plus(AExp::var("x"), AExp::num(3)), &x_is(4)), 7);
        assert_eq!(aval(&AExp::plus(AExp::var("y"), AExp::var("y")), &State::new()), 0);
    }

    #[test]
    fn aval_wraps() {
        let a = AExp::plus(AExp::var("x"), AExp::num(1));
        assert_eq!(aval(&a, &x_is(Value::MAX)), Value::MIN);
    }

    #[test]
    fn bval_cases() {
        assert!(bval(&BExp::BoolLit(true), &State::new()));
        assert!(bval(&BExp::less(AExp::num(1), AExp::num(2)), &State::new()));
        let b = BExp::and(
            BExp::not(BExp::BoolLit(false)),
            BExp::less(AExp::var("x"), AExp::num(0)),
        );
        assert!(bval(&b, &x_is(-1)));
    }

    // Exhaustive truth-table check for the mixed expression above: the
    // conjunction holds exactly when x is negative.
    #[test]
    fn bval_and_not_less_truth_table() {
        for lit in [false, true] {
            for x in -3..=3 {
                let b = BExp::and(
                    BExp::not(BExp::BoolLit(lit)),
                    BExp::less(AExp::var("x"), AExp::num(0)),
                );
                assert_eq!(bval(&b, &x_is(x)), !lit && x < 0, "lit={lit} x={x}");
            }
        }
    }

    #[test]
    fn vars_of_commands() {
        assert!(Com::Skip.vars().is_empty());
        let c = Com::assign("x", AExp::plus(AExp::var("y"), AExp::num(1)));
        assert_eq!(c.vars(), ["x", "y"].map(String::from).into());
        let w = Com::while_(
            BExp::less(AExp::var("i"), AExp::num(3)),
            Com::assign("i", AExp::plus(AExp::var("i"), AExp::num(1))),
        );
        assert_eq!(w.vars(), ["i".to_owned()].into());
    }

    fn aexp() -> impl Strategy<Value = AExp> {
        let leaf = prop_oneof![
            (-10i64..10).prop_map(AExp::num),
            prop::sample::select(vec!["x", "y", "z"]).prop_map(AExp::var),
        ];
        leaf.prop_recursive(4, 16, 2, |inner| {
            (inner.clone(), inner).prop_map(|(l, r)| AExp::plus(l, r))
        })
    }

    proptest! {
        #[test]
        fn aval_depends_only_on_its_vars(a in aexp(), v in -100i64..100, base in -5i64..5) {
            let s = State::from_iter([("x", base), ("y", base + 1), ("z", base + 2)]);
            let outside = ["x", "y", "z", "w"].into_iter().find(|n| !a.vars().contains(*n)).unwrap();
            prop_assert_eq!(aval(&a, &s), aval(&a, &s.update(outside, v)));
        }

        #[test]
        fn aval_is_deterministic(a in aexp(), base in -5i64..5) {
            let s = State::from_iter([("x", base), ("y", -base)]);
            prop_assert_eq!(aval(&a, &s), aval(&a.clone(), &s.clone()));
        }
    }
}
