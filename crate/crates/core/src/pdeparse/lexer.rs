use crate::exprcore::{Rational, MAGNITUDE_LIMIT};

use super::ParseError;

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    Number(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Pipe,
    Underscore,
    Prime,
    Equals,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Number(r) => format!("number `{r}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::Underscore => "`_`".into(),
            Tok::Prime => "`'`".into(),
            Tok::Equals => "`=`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub pos: usize,
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let simple = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b'|' => Some(Tok::Pipe),
            b'_' => Some(Tok::Underscore),
            b'\'' => Some(Tok::Prime),
            b'=' => Some(Tok::Equals),
            _ => None,
        };
        if let Some(tok) = simple {
            i += 1;
            out.push(Token { tok, pos: start });
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i < bytes.len() && bytes[i] == b'.' {
                return Err(ParseError::at(
                    src,
                    i,
                    "integer or p/q rational literal",
                    None,
                ));
            }
            let numer = parse_int(src, start, i)?;
            let mut value = Rational::from_integer(numer);
            // `p/q` is a single literal only when a digit follows the slash.
            if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                let dstart = i + 1;
                let mut j = dstart;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                let denom = parse_int(src, dstart, j)?;
                if denom == 0 {
                    return Err(ParseError::at(src, dstart, "nonzero denominator", None));
                }
                value = Rational::new(numer, denom);
                i = j;
            }
            out.push(Token {
                tok: Tok::Number(value),
                pos: start,
            });
            continue;
        }
        if c.is_ascii_alphabetic() {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric()) {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(src[start..i].to_string()),
                pos: start,
            });
            continue;
        }
        return Err(ParseError::at(src, start, "a token", None));
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: src.len(),
    });
    Ok(out)
}

fn parse_int(src: &str, start: usize, end: usize) -> Result<i128, ParseError> {
    src[start..end]
        .parse::<i128>()
        .ok()
        .filter(|v| *v <= MAGNITUDE_LIMIT)
        .ok_or_else(|| ParseError::at(src, start, "integer literal of at most 2^40", None))
}
