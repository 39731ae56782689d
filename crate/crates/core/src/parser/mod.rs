//! Concrete syntax for `.imp` programs, assertions and `.asm` listings.
//!
//! ```text
//! com    ::= simple (";" simple)*                      (right associative)
//! simple ::= "skip" | ident ":=" aexp | "{" com "}"
//!          | "if" "(" bexp ")" "{" com "}" "else" "{" com "}"
//!          | "while" "(" bexp ")" annot? "{" com "}"
//! annot  ::= "invariant" "(" assn ")" ("measure" "(" aexp ")")?
//! aexp   ::= aexp "+" aatom | aatom
//! aatom  ::= int | ident | "(" aexp ")"
//! bexp   ::= bexp "&&" batom | batom
//! batom  ::= "true" | "false" | "!" batom | aexp "<" aexp | "(" bexp ")"
//! assn   ::= disj ("->" assn)?
//! disj   ::= conj ("||" conj)*
//! conj   ::= unary ("&&" unary)*
//! unary  ::= "true" | "false" | "!" unary | aexp ("<" | "<=" | "=") aexp | "(" assn ")"
//! ```
//!
//! Integer literals may carry a leading `-`; there is no subtraction.
//! Identifiers starting with `__` are reserved for generated names.

mod asm;
mod grammar;
mod lexer;
mod pretty;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use asm::{parse_asm, pretty_asm};
pub use lexer::{is_valid_identifier, RESERVED_PREFIX};
pub use pretty::{pretty_aexp, pretty_annotated, pretty_assertion, pretty_bexp, pretty_com};

use crate::hoare::{AnnotatedCom, Assertion};
use crate::syntax::{AExp, BExp, Com};
use grammar::Parser;

/// 1-based, inclusive source range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SourceSpan {
    pub start_line: usize,
    pub start_col: usize,
    pub end_line: usize,
    pub end_col: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.start_line, self.start_col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{span}: {message}")]
pub struct ParseError {
    pub message: String,
    pub span: SourceSpan,
    pub expected: Vec<String>,
}

impl ParseError {
    pub(crate) fn new(message: impl Into<String>, span: SourceSpan, expected: Vec<String>) -> Self {
        ParseError {
            message: message.into(),
            span,
            expected,
        }
    }
}

fn parse_all<T>(text: &str, rule: impl FnOnce(&mut Parser) -> Result<T, ParseError>) -> Result<T, ParseError> {
    let mut p = Parser::new(text)?;
    let v = rule(&mut p)?;
    p.finish()?;
    Ok(v)
}

/// Parses a program. Loop annotations are accepted and discarded.
pub fn parse_com(text: &str) -> Result<Com, ParseError> {
    parse_annotated_com(text).map(|c| c.erase())
}

pub fn parse_annotated_com(text: &str) -> Result<AnnotatedCom, ParseError> {
    parse_all(text, Parser::com)
}

pub fn parse_aexp(text: &str) -> Result<AExp, ParseError> {
    parse_all(text, Parser::aexp)
}

pub fn parse_bexp(text: &str) -> Result<BExp, ParseError> {
    parse_all(text, Parser::bexp)
}

pub fn parse_assertion(text: &str) -> Result<Assertion, ParseError> {
    parse_all(text, Parser::assertion)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::Instr;

    #[test]
    fn parses_simple_commands() {
        assert_eq!(parse_com("skip").unwrap(), Com::Skip);
        assert_eq!(
            parse_com("x := x + 1").unwrap(),
            Com::assign("x", AExp::plus(AExp::var("x"), AExp::num(1)))
        );
    }

    #[test]
    fn while_golden() {
        let expected = Com::while_(
            BExp::less(AExp::var("i"), AExp::num(3)),
            Com::assign("i", AExp::plus(AExp::var("i"), AExp::num(1))),
        );
        let c = parse_com("while (i < 3) { i := i + 1 }").unwrap();
        assert_eq!(c, expected);
        assert_eq!(parse_com(&pretty_com(&c)).unwrap(), c);
    }

    #[test]
    fn associativity() {
        let a = || Com::assign("a", AExp::num(1));
        let b = || Com::assign("b", AExp::num(2));
        let c = || Com::assign("c", AExp::num(3));
        assert_eq!(
            parse_com("a := 1; b := 2; c := 3").unwrap(),
            Com::seq(a(), Com::seq(b(), c()))
        );
        assert_eq!(
            parse_com("{ a := 1; b := 2 }; c := 3").unwrap(),
            Com::seq(Com::seq(a(), b()), c())
        );
        assert_eq!(
            parse_aexp("1 + 2 + 3").unwrap(),
            AExp::plus(AExp::plus(AExp::num(1), AExp::num(2)), AExp::num(3))
        );
    }

    #[test]
    fn boolean_precedence() {
        let b = parse_bexp("!x < 1 && (y < 2 && true)").unwrap();
        assert_eq!(
            b,
            BExp::and(
                BExp::not(BExp::less(AExp::var("x"), AExp::num(1))),
                BExp::and(BExp::less(AExp::var("y"), AExp::num(2)), BExp::BoolLit(true))
            )
        );
        assert_eq!(
            parse_bexp("(x + 1) < (2)").unwrap(),
            BExp::less(AExp::plus(AExp::var("x"), AExp::num(1)), AExp::num(2))
        );
    }

    #[test]
    fn chained_less_is_rejected() {
        let err = parse_bexp("1 < 2 < 3").unwrap_err();
        assert!(err.message.contains("chained"), "{err}");
    }

    #[test]
    fn keywords_are_not_identifiers() {
        assert!(parse_com("while := 1").is_err());
        assert!(parse_com("x := measure").is_err());
    }

    #[test]
    fn annotated_loops() {
        let c = parse_annotated_com("while (0 < x) invariant (true) measure (x) { x := x + -1 }")
            .unwrap();
        let AnnotatedCom::While(l) = &c else { panic!("{c:?}") };
        assert_eq!(l.invariant, Some(Assertion::True));
        assert_eq!(l.measure, Some(AExp::var("x")));
        assert_eq!(l.span.unwrap().start_col, 1);

        assert_eq!(parse_annotated_com("skip").unwrap(), AnnotatedCom::Skip);

        let c = parse_annotated_com("while (0 < x) { skip }").unwrap();
        let AnnotatedCom::While(l) = &c else { panic!("{c:?}") };
        assert_eq!((l.invariant.as_ref(), l.measure.as_ref()), (None, None));
    }

    #[test]
    fn assertion_grammar() {
        let a = parse_assertion("0 <= x && !(x = 3) -> x < 5 || false").unwrap();
        assert_eq!(
            a,
            Assertion::imp(
                Assertion::and(
                    Assertion::le(AExp::num(0), AExp::var("x")),
                    Assertion::not(Assertion::eq(AExp::var("x"), AExp::num(3)))
                ),
                Assertion::or(Assertion::lt(AExp::var("x"), AExp::num(5)), Assertion::False)
            )
        );
        assert_eq!(parse_assertion(&pretty_assertion(&a)).unwrap(), a);
        // `->` is right associative.
        assert_eq!(
            parse_assertion("true -> false -> true").unwrap(),
            Assertion::imp(Assertion::True, Assertion::imp(Assertion::False, Assertion::True))
        );
    }

    #[test]
    fn error_positions() {
        let err = parse_com("x := 1;\ny := ").unwrap_err();
        assert_eq!(err.span.start_line, 2);
        assert!(err.expected.iter().any(|e| e == "integer"));
        let err = parse_com("if (true) { skip }").unwrap_err();
        assert!(err.expected.contains(&"`else`".to_owned()), "{err:?}");
    }

    #[test]
    fn asm_parsing() {
        assert_eq!(
            parse_asm("LOADI 5\nSTORE x").unwrap(),
            vec![Instr::LoadI(5), Instr::Store("x".into())]
        );
        assert_eq!(parse_asm("JMP -7").unwrap(), vec![Instr::Jmp(-7)]);
        assert_eq!(
            parse_asm("// header\n\nADD // sum\nJMPLESS 2\nJMPGE 0\nLOAD y\n").unwrap(),
            vec![Instr::Add, Instr::JmpLess(2), Instr::JmpGe(0), Instr::Load("y".into())]
        );
        let err = parse_asm("FOO 1").unwrap_err();
        assert_eq!(err.span.start_line, 1);
        assert!(parse_asm("LOADI x").is_err());
        assert!(parse_asm("STORE 1").is_err());
        assert!(parse_asm("ADD 1").is_err());
        assert_eq!(parse_asm("LOADI 1\n  JMP").unwrap_err().span.start_line, 2);
    }
}
