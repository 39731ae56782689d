use std::fmt::Write;

use crate::hoare::{AnnotatedCom, Assertion};
use crate::syntax::{AExp, BExp, Com};

pub fn pretty_aexp(a: &AExp) -> String {
    let mut out = String::new();
    write_aexp(&mut out, a);
    out
}

fn write_aexp(out: &mut String, a: &AExp) {
    match a {
        AExp::NumLit(n) => {
            let _ = write!(out, "{n}");
        }
        AExp::Var(x) => out.push_str(x),
        AExp::Plus(l, r) => {
            write_aexp(out, l);
            out.push_str(" + ");
            if matches!(**r, AExp::Plus(..)) {
                out.push('(');
                write_aexp(out, r);
                out.push(')');
            } else {
                write_aexp(out, r);
            }
        }
    }
}

pub fn pretty_bexp(b: &BExp) -> String {
    let mut out = String::new();
    write_bexp(&mut out, b);
    out
}

fn write_bexp(out: &mut String, b: &BExp) {
    match b {
        BExp::BoolLit(v) => {
            let _ = write!(out, "{v}");
        }
        BExp::Not(inner) => {
            out.push('!');
            write_batom(out, inner);
        }
        BExp::And(l, r) => {
            write_bexp(out, l);
            out.push_str(" && ");
            write_batom(out, r);
        }
        BExp::Less(l, r) => {
            write_aexp(out, l);
            out.push_str(" < ");
            write_aexp(out, r);
        }
    }
}

fn write_batom(out: &mut String, b: &BExp) {
    if matches!(b, BExp::And(..) | BExp::Less(..)) {
        out.push('(');
        write_bexp(out, b);
        out.push(')');
    } else {
        write_bexp(out, b);
    }
}

pub fn pretty_assertion(a: &Assertion) -> String {
    let mut out = String::new();
    write_assertion(&mut out, a, 0);
    out
}

fn assertion_prec(a: &Assertion) -> u8 {
    match a {
        Assertion::Imp(..) => 0,
        Assertion::Or(..) => 1,
        Assertion::And(..) => 2,
        _ => 3,
    }
}

// `min` is the loosest precedence allowed without parentheses.
fn write_assertion(out: &mut String, a: &Assertion, min: u8) {
    if assertion_prec(a) < min {
        out.push('(');
        write_assertion(out, a, 0);
        out.push(')');
        return;
    }
    match a {
        Assertion::True => out.push_str("true"),
        Assertion::False => out.push_str("false"),
        Assertion::Cmp(op, l, r) => {
            write_aexp(out, l);
            let _ = write!(out, " {} ", op.symbol());
            write_aexp(out, r);
        }
        Assertion::Not(inner) => {
            out.push('!');
            // Comparisons are parenthesized for readability: `!(x < 1)`.
            let min = if matches!(**inner, Assertion::Cmp(..)) { 4 } else { 3 };
            write_assertion(out, inner, min);
        }
        Assertion::And(l, r) => {
            write_assertion(out, l, 2);
            out.push_str(" && ");
            write_assertion(out, r, 3);
        }
        Assertion::Or(l, r) => {
            write_assertion(out, l, 1);
            out.push_str(" || ");
            write_assertion(out, r, 2);
        }
        Assertion::Imp(l, r) => {
            write_assertion(out, l, 1);
            out.push_str(" -> ");
            write_assertion(out, r, 0);
        }
    }
}

fn indent(out: &mut String, level: usize) {
    for _ in 0..level {
        out.push_str("  ");
    }
}

/// Renders `c` as multi-line source text that parses back to `c`.
pub fn pretty_com(c: &Com) -> String {
    let mut out = String::new();
    write_com(&mut out, c, 0);
    out
}

fn write_com(out: &mut String, c: &Com, level: usize) {
    // Walk the right spine of `;` iteratively.
    let mut cur = c;
    loop {
        match cur {
            Com::Seq(first, second) => {
                write_seq_item(out, first, level);
                out.push_str(";\n");
                cur = second;
            }
            last => {
                write_seq_item(out, last, level);
                return;
            }
        }
    }
}

fn write_seq_item(out: &mut String, c: &Com, level: usize) {
    indent(out, level);
    match c {
        Com::Skip => out.push_str("skip"),
        Com::Assign(x, a) => {
            let _ = write!(out, "{x} := ");
            write_aexp(out, a);
        }
        Com::Seq(..) => {
            out.push_str("{\n");
            write_com(out, c, level + 1);
            out.push('\n');
            indent(out, level);
            out.push('}');
        }
        Com::If(b, c1, c2) => {
            out.push_str("if (");
            write_bexp(out, b);
            out.push_str(") {\n");
            write_com(out, c1, level + 1);
            out.push('\n');
            indent(out, level);
            out.push_str("} else {\n");
            write_com(out, c2, level + 1);
            out.push('\n');
            indent(out, level);
            out.push('}');
        }
        Com::While(b, body) => {
            out.push_str("while (");
            write_bexp(out, b);
            out.push_str(") {\n");
            write_com(out, body, level + 1);
            out.push('\n');
            indent(out, level);
            out.push('}');
        }
    }
}

/// Like [`pretty_com`], keeping loop annotations.
pub fn pretty_annotated(c: &AnnotatedCom) -> String {
    let mut out = String::new();
    write_annotated(&mut out, c, 0);
    out
}

fn write_annotated(out: &mut String, c: &AnnotatedCom, level: usize) {
    let mut cur = c;
    loop {
        match cur {
            AnnotatedCom::Seq(first, second) => {
                write_annotated_item(out, first, level);
                out.push_str(";\n");
                cur = second;
            }
            last => {
                write_annotated_item(out, last, level);
                return;
            }
        }
    }
}

fn write_annotated_item(out: &mut String, c: &AnnotatedCom, level: usize) {
    indent(out, level);
    match c {
        AnnotatedCom::Skip => out.push_str("skip"),
        AnnotatedCom::Assign(x, a) => {
            let _ = write!(out, "{x} := ");
            write_aexp(out, a);
        }
        AnnotatedCom::Seq(..) => {
            out.push_str("{\n");
            write_annotated(out, c, level + 1);
            out.push('\n');
            indent(out, level);
            out.push('}');
        }
        AnnotatedCom::If(b, c1, c2) => {
            out.push_str("if (");
            write_bexp(out, b);
            out.push_str(") {\n");
            write_annotated(out, c1, level + 1);
            out.push('\n');
            indent(out, level);
            out.push_str("} else {\n");
            write_annotated(out, c2, level + 1);
            out.push('\n');
            indent(out, level);
            out.push('}');
        }
        AnnotatedCom::While(l) => {
            out.push_str("while (");
            write_bexp(out, &l.cond);
            out.push(')');
            if let Some(inv) = &l.invariant {
                out.push_str(" invariant (");
                write_assertion(out, inv, 0);
                out.push(')');
                if let Some(m) = &l.measure {
                    out.push_str(" measure (");
                    write_aexp(out, m);
                    out.push(')');
                }
            }
            out.push_str(" {\n");
            write_annotated(out, &l.body, level + 1);
            out.push('\n');
            indent(out, level);
            out.push('}');
        }
    }
}
