use super::{ParseError, SourceSpan};
use crate::state::Value;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Int(Value),
    Skip,
    If,
    Else,
    While,
    True,
    False,
    Invariant,
    Measure,
    Assign,
    Semi,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Plus,
    Lt,
    Le,
    Eq,
    Bang,
    AndAnd,
    OrOr,
    Arrow,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(name) => format!("identifier `{name}`"),
            Tok::Int(n) => format!("integer `{n}`"),
            Tok::Eof => "end of input".to_owned(),
            other => format!("`{}`", other.text()),
        }
    }

    pub(crate) fn text(&self) -> &'static str {
        match self {
            Tok::Ident(_) => "identifier",
            Tok::Int(_) => "integer",
            Tok::Skip => "skip",
            Tok::If => "if",
            Tok::Else => "else",
            Tok::While => "while",
            Tok::True => "true",
            Tok::False => "false",
            Tok::Invariant => "invariant",
            Tok::Measure => "measure",
            Tok::Assign => ":=",
            Tok::Semi => ";",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Plus => "+",
            Tok::Lt => "<",
            Tok::Le => "<=",
            Tok::Eq => "=",
            Tok::Bang => "!",
            Tok::AndAnd => "&&",
            Tok::OrOr => "||",
            Tok::Arrow => "->",
            Tok::Eof => "end of input",
        }
    }
}

pub(crate) const KEYWORDS: &[(&str, Tok)] = &[
    ("skip", Tok::Skip),
    ("if", Tok::If),
    ("else", Tok::Else),
    ("while", Tok::While),
    ("true", Tok::True),
    ("false", Tok::False),
    ("invariant", Tok::Invariant),
    ("measure", Tok::Measure),
];

pub(crate) fn is_keyword(word: &str) -> bool {
    KEYWORDS.iter().any(|(k, _)| *k == word)
}

/// Prefix reserved for generated names such as measure snapshots.
pub const RESERVED_PREFIX: &str = "__";

/// Whether `name` is usable as a variable in source text.
pub fn is_valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    let head_ok = chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
    head_ok
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !is_keyword(name)
        && !name.starts_with(RESERVED_PREFIX)
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    line: usize,
    col: usize,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().map(|&(_, c)| c)
    }

    fn bump(&mut self) -> Option<char> {
        let (_, c) = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn pos(&self) -> (usize, usize) {
        (self.line, self.col)
    }
}

fn span(start: (usize, usize), end: (usize, usize)) -> SourceSpan {
    SourceSpan {
        start_line: start.0,
        start_col: start.1,
        end_line: end.0,
        end_col: end.1,
    }
}

/// Splits `text` into tokens. The end position of each span is the last
/// character of the token (inclusive).
pub(crate) fn tokenize(text: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let mut cur = Cursor {
        chars: text.char_indices().peekable(),
        line: 1,
        col: 1,
    };
    let mut out = Vec::new();
    loop {
        while cur.peek().is_some_and(char::is_whitespace) {
            cur.bump();
        }
        let start = cur.pos();
        let Some(c) = cur.bump() else {
            // EOF sits one column past the last consumed character.
            out.push((Tok::Eof, span(start, start)));
            return Ok(out);
        };
        let mut end = start;
        let tok = match c {
            '/' if cur.peek() == Some('/') => {
                while cur.peek().is_some_and(|c| c != '\n') {
                    cur.bump();
                }
                continue;
            }
            ';' => Tok::Semi,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '+' => Tok::Plus,
            '=' => Tok::Eq,
            '!' => Tok::Bang,
            ':' | '&' | '|' | '<' => {
                let (second, two, one) = match c {
                    ':' => ('=', Tok::Assign, None),
                    '&' => ('&', Tok::AndAnd, None),
                    '|' => ('|', Tok::OrOr, None),
                    _ => ('=', Tok::Le, Some(Tok::Lt)),
                };
                if cur.peek() == Some(second) {
                    end = cur.pos();
                    cur.bump();
                    two
                } else if let Some(one) = one {
                    one
                } else {
                    return Err(ParseError::new(
                        format!("unexpected character `{c}`"),
                        span(start, start),
                        vec![format!("`{c}{second}`")],
                    ));
                }
            }
            '-' if cur.peek() == Some('>') => {
                end = cur.pos();
                cur.bump();
                Tok::Arrow
            }
            '-' | '0'..='9' => {
                let mut digits = String::from(c);
                while cur.peek().is_some_and(|c| c.is_ascii_digit()) {
                    end = cur.pos();
                    digits.push(cur.bump().unwrap_or_default());
                }
                if digits == "-" {
                    return Err(ParseError::new(
                        "`-` is only allowed as the sign of an integer literal",
                        span(start, start),
                        vec!["integer".to_owned(), "`->`".to_owned()],
                    ));
                }
                match digits.parse::<Value>() {
                    Ok(n) => Tok::Int(n),
                    Err(_) => {
                        return Err(ParseError::new(
                            format!("integer literal `{digits}` out of range"),
                            span(start, end),
                            vec!["64-bit integer".to_owned()],
                        ))
                    }
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut word = String::from(c);
                while cur
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
                {
                    end = cur.pos();
                    word.push(cur.bump().unwrap_or_default());
                }
                if let Some((_, kw)) = KEYWORDS.iter().find(|(k, _)| *k == word) {
                    kw.clone()
                } else if word.starts_with(RESERVED_PREFIX) {
                    return Err(ParseError::new(
                        format!("identifier `{word}` uses the reserved `{RESERVED_PREFIX}` prefix"),
                        span(start, end),
                        vec!["identifier".to_owned()],
                    ));
                } else {
                    Tok::Ident(word)
                }
            }
            other => {
                return Err(ParseError::new(
                    format!("unexpected character `{other}`"),
                    span(start, start),
                    Vec::new(),
                ))
            }
        };
        out.push((tok, span(start, end)));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(text: &str) -> Vec<Tok> {
        tokenize(text).unwrap().into_iter().map(|(t, _)| t).collect()
    }

    #[test]
    fn negative_literals_and_arrows() {
        assert_eq!(
            toks("x + -1 -> y<=2"),
            vec![
                Tok::Ident("x".into()),
                Tok::Plus,
                Tok::Int(-1),
                Tok::Arrow,
                Tok::Ident("y".into()),
                Tok::Le,
                Tok::Int(2),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn comments_are_skipped() {
        assert_eq!(toks("skip // trailing\n// whole line\n"), vec![Tok::Skip, Tok::Eof]);
    }

    #[test]
    fn bare_minus_is_rejected() {
        let err = tokenize("x := y - 1").unwrap_err();
        assert_eq!((err.span.start_line, err.span.start_col), (1, 8));
    }

    #[test]
    fn reserved_prefix_is_rejected() {
        assert!(tokenize("__z0 := 1").is_err());
        assert!(!is_valid_identifier("__z0"));
        assert!(!is_valid_identifier("while"));
        assert!(is_valid_identifier("_x1"));
    }

    #[test]
    fn spans_track_lines() {
        let t = tokenize("skip;\n  x := 10").unwrap();
        let (tok, sp) = &t[4];
        assert_eq!(tok, &Tok::Int(10));
        assert_eq!((sp.start_line, sp.start_col, sp.end_line, sp.end_col), (2, 8, 2, 9));
    }
}
