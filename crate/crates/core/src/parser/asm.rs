//! Line-oriented assembly listings: one `MNEMONIC operand` per line, `//`
//! comments, blank lines ignored.

use super::lexer::is_valid_identifier;
use super::{ParseError, SourceSpan};
use crate::machine::Instr;
use crate::state::Value;

const MNEMONICS: &[&str] = &["LOADI", "LOAD", "ADD", "STORE", "JMP", "JMPLESS", "JMPGE"];

fn line_span(line: usize, start_col: usize, len: usize) -> SourceSpan {
    SourceSpan {
        start_line: line,
        start_col,
        end_line: line,
        end_col: start_col + len.max(1) - 1,
    }
}

pub fn parse_asm(text: &str) -> Result<Vec<Instr>, ParseError> {
    let mut program = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let code = raw.find("//").map_or(raw, |at| &raw[..at]);
        // Columns are 1-based character offsets into the raw line.
        let words: Vec<(usize, &str)> = code
            .split_whitespace()
            .map(|w| {
                let byte = w.as_ptr() as usize - code.as_ptr() as usize;
                (code[..byte].chars().count() + 1, w)
            })
            .collect();
        let Some(&(col, mnemonic)) = words.first() else {
            continue;
        };
        let operand = words.get(1).copied();
        if let Some(&(extra_col, extra)) = words.get(2) {
            return Err(ParseError::new(
                format!("unexpected trailing `{extra}`"),
                line_span(line, extra_col, extra.chars().count()),
                vec!["end of line".to_owned()],
            ));
        }
        let whole = line_span(line, col, code.trim_end().chars().count() + 1 - col);
        let need_int = |what: &str| -> Result<Value, ParseError> {
            let (ocol, text) = operand.ok_or_else(|| {
                ParseError::new(
                    format!("{mnemonic} needs {what}"),
                    whole,
                    vec![what.to_owned()],
                )
            })?;
            text.parse::<Value>().map_err(|_| {
                ParseError::new(
                    format!("malformed integer operand `{text}`"),
                    line_span(line, ocol, text.chars().count()),
                    vec!["decimal integer".to_owned()],
                )
            })
        };
        let need_ident = || -> Result<String, ParseError> {
            let (ocol, text) = operand.ok_or_else(|| {
                ParseError::new(
                    format!("{mnemonic} needs a variable name"),
                    whole,
                    vec!["identifier".to_owned()],
                )
            })?;
            if is_valid_identifier(text) {
                Ok(text.to_owned())
            } else {
                Err(ParseError::new(
                    format!("malformed variable operand `{text}`"),
                    line_span(line, ocol, text.chars().count()),
                    vec!["identifier".to_owned()],
                ))
            }
        };
        let instr = match mnemonic {
            "LOADI" => Instr::LoadI(need_int("an integer")?),
            "LOAD" => Instr::Load(need_ident()?),
            "STORE" => Instr::Store(need_ident()?),
            "JMP" => Instr::Jmp(need_int("an offset")?),
            "JMPLESS" => Instr::JmpLess(need_int("an offset")?),
            "JMPGE" => Instr::JmpGe(need_int("an offset")?),
            "ADD" => {
                if let Some((ocol, text)) = operand {
                    return Err(ParseError::new(
                        format!("ADD takes no operand, found `{text}`"),
                        line_span(line, ocol, text.chars().count()),
                        vec!["end of line".to_owned()],
                    ));
                }
                Instr::Add
            }
            other => {
                return Err(ParseError::new(
                    format!("unknown mnemonic `{other}`"),
                    line_span(line, col, other.chars().count()),
                    MNEMONICS.iter().map(|m| (*m).to_owned()).collect(),
                ))
            }
        };
        program.push(instr);
    }
    Ok(program)
}

/// One instruction per line, newline terminated.
pub fn pretty_asm(program: &[Instr]) -> String {
    let mut out = String::new();
    for instr in program {
        out.push_str(&instr.to_string());
        out.push('\n');
    }
    out
}
