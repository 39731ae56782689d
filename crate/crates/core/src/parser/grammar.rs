use super::lexer::{tokenize, Tok};
use super::{ParseError, SourceSpan};
use crate::hoare::{AnnotatedCom, AnnotatedLoop, Assertion, CmpOp};
use crate::syntax::{AExp, BExp};

type PResult<T> = Result<T, ParseError>;

pub(crate) struct Parser {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
}

impl Parser {
    pub(crate) fn new(text: &str) -> PResult<Self> {
        Ok(Parser {
            toks: tokenize(text)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let tok = self.toks[self.pos].0.clone();
        if tok != Tok::Eof {
            self.pos += 1;
        }
        tok
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let found = self.peek().describe();
        let expected: Vec<String> = expected.iter().map(|s| (*s).to_owned()).collect();
        ParseError::new(
            format!("expected {}, found {found}", expected.join(" or ")),
            self.span(),
            expected,
        )
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.error(&[&format!("`{}`", tok.text())]))
        }
    }

    pub(crate) fn finish(&mut self) -> PResult<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.error(&["end of input"]))
        }
    }

    /// Runs `first`; on failure rewinds and runs `second`. When both fail the
    /// error that got further into the input wins.
    fn either<T>(
        &mut self,
        first: impl FnOnce(&mut Self) -> PResult<T>,
        second: impl FnOnce(&mut Self) -> PResult<T>,
    ) -> PResult<T> {
        let start = self.pos;
        match first(self) {
            Ok(v) => Ok(v),
            Err(e1) => {
                let reached1 = self.pos;
                self.pos = start;
                second(self).map_err(|e2| {
                    if reached1 > self.pos {
                        e1
                    } else {
                        e2
                    }
                })
            }
        }
    }

    // com ::= simple (";" simple)*, folded to the right.
    pub(crate) fn com(&mut self) -> PResult<AnnotatedCom> {
        let mut items = vec![self.simple_com()?];
        while self.eat(&Tok::Semi) {
            items.push(self.simple_com()?);
        }
        let mut acc = items.pop().unwrap_or(AnnotatedCom::Skip);
        while let Some(prev) = items.pop() {
            acc = AnnotatedCom::seq(prev, acc);
        }
        Ok(acc)
    }

    fn block(&mut self) -> PResult<AnnotatedCom> {
        self.expect(Tok::LBrace)?;
        let c = self.com()?;
        self.expect(Tok::RBrace)?;
        Ok(c)
    }

    fn simple_com(&mut self) -> PResult<AnnotatedCom> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Skip => {
                self.bump();
                Ok(AnnotatedCom::Skip)
            }
            Tok::Ident(name) => {
                self.bump();
                self.expect(Tok::Assign)?;
                Ok(AnnotatedCom::Assign(name, self.aexp()?))
            }
            Tok::If => {
                self.bump();
                self.expect(Tok::LParen)?;
                let cond = self.bexp()?;
                self.expect(Tok::RParen)?;
                let then_branch = self.block()?;
                self.expect(Tok::Else)?;
                let else_branch = self.block()?;
                Ok(AnnotatedCom::If(
                    cond,
                    Box::new(then_branch),
                    Box::new(else_branch),
                ))
            }
            Tok::While => {
                self.bump();
                self.expect(Tok::LParen)?;
                let cond = self.bexp()?;
                self.expect(Tok::RParen)?;
                let (mut invariant, mut measure) = (None, None);
                if self.eat(&Tok::Invariant) {
                    self.expect(Tok::LParen)?;
                    invariant = Some(self.assertion()?);
                    self.expect(Tok::RParen)?;
                    if self.eat(&Tok::Measure) {
                        self.expect(Tok::LParen)?;
                        measure = Some(self.aexp()?);
                        self.expect(Tok::RParen)?;
                    }
                }
                let body = self.block()?;
                Ok(AnnotatedCom::While(AnnotatedLoop {
                    cond,
                    invariant,
                    measure,
                    body: Box::new(body),
                    span: Some(span),
                }))
            }
            // Grouping, needed to print left-nested sequences.
            Tok::LBrace => self.block(),
            _ => Err(self.error(&["`skip`", "identifier", "`if`", "`while`", "`{`"])),
        }
    }

    // aexp ::= aatom ("+" aatom)*, left associative.
    pub(crate) fn aexp(&mut self) -> PResult<AExp> {
        let mut acc = self.aatom()?;
        while self.eat(&Tok::Plus) {
            acc = AExp::plus(acc, self.aatom()?);
        }
        Ok(acc)
    }

    fn aatom(&mut self) -> PResult<AExp> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(AExp::NumLit(n))
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(AExp::Var(name))
            }
            Tok::LParen => {
                self.bump();
                let a = self.aexp()?;
                self.expect(Tok::RParen)?;
                Ok(a)
            }
            _ => Err(self.error(&["integer", "identifier", "`(`"])),
        }
    }

    // bexp ::= batom ("&&" batom)*, left associative.
    pub(crate) fn bexp(&mut self) -> PResult<BExp> {
        let mut acc = self.batom()?;
        while self.eat(&Tok::AndAnd) {
            acc = BExp::and(acc, self.batom()?);
        }
        Ok(acc)
    }

    fn batom(&mut self) -> PResult<BExp> {
        match self.peek() {
            Tok::True => {
                self.bump();
                Ok(BExp::BoolLit(true))
            }
            Tok::False => {
                self.bump();
                Ok(BExp::BoolLit(false))
            }
            Tok::Bang => {
                self.bump();
                Ok(BExp::not(self.batom()?))
            }
            Tok::LParen => self.either(Self::less, |p| {
                p.bump();
                let b = p.bexp()?;
                p.expect(Tok::RParen)?;
                Ok(b)
            }),
            _ => self.less(),
        }
    }

    fn less(&mut self) -> PResult<BExp> {
        let left = self.aexp()?;
        self.expect(Tok::Lt)?;
        let right = self.aexp()?;
        if *self.peek() == Tok::Lt {
            return Err(ParseError::new(
                "comparisons cannot be chained",
                self.span(),
                vec!["`&&`".to_owned(), "`)`".to_owned()],
            ));
        }
        Ok(BExp::less(left, right))
    }

    // assertion ::= disj ("->" assertion)?
    pub(crate) fn assertion(&mut self) -> PResult<Assertion> {
        let left = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            Ok(Assertion::imp(left, self.assertion()?))
        } else {
            Ok(left)
        }
    }

    fn disjunction(&mut self) -> PResult<Assertion> {
        let mut acc = self.conjunction()?;
        while self.eat(&Tok::OrOr) {
            acc = Assertion::or(acc, self.conjunction()?);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> PResult<Assertion> {
        let mut acc = self.assertion_unary()?;
        while self.eat(&Tok::AndAnd) {
            acc = Assertion::and(acc, self.assertion_unary()?);
        }
        Ok(acc)
    }

    fn assertion_unary(&mut self) -> PResult<Assertion> {
        match self.peek() {
            Tok::True => {
                self.bump();
                Ok(Assertion::True)
            }
            Tok::False => {
                self.bump();
                Ok(Assertion::False)
            }
            Tok::Bang => {
                self.bump();
                Ok(Assertion::not(self.assertion_unary()?))
            }
            Tok::LParen => self.either(Self::comparison, |p| {
                p.bump();
                let a = p.assertion()?;
                p.expect(Tok::RParen)?;
                Ok(a)
            }),
            _ => self.comparison(),
        }
    }

    fn comparison(&mut self) -> PResult<Assertion> {
        let left = self.aexp()?;
        let op = match self.peek() {
            Tok::Lt => CmpOp::Lt,
            Tok::Le => CmpOp::Le,
            Tok::Eq => CmpOp::Eq,
            _ => return Err(self.error(&["`<`", "`<=`", "`=`"])),
        };
        self.bump();
        let right = self.aexp()?;
        if matches!(self.peek(), Tok::Lt | Tok::Le | Tok::Eq) {
            return Err(ParseError::new(
                "comparisons cannot be chained",
                self.span(),
                vec!["`&&`".to_owned(), "`)`".to_owned()],
            ));
        }
        Ok(Assertion::Cmp(op, left, right))
    }
}
