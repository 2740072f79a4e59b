//! Hand-transcribed scale relations, for checking engine output against
//! published formulas.
//!
//! ```text
//! relation := sum [ "=" sum ]
//! sum      := [sign] term { sign term }          sign: + - ± ∓ (or +- -+)
//! term     := power { ("*" | "/") power }
//! power    := primary [ "^" exponent ]
//! primary  := NUMBER | A | V | L | IDENT | F'…'(A) | sin(A) | cos(A)
//!           | "(" sum ")" | "|" sum "|"
//! exponent := ["-"] INT | IDENT | "(" linear ")"
//! ```
//!
//! All `±` share one sign and `∓` takes the opposite one. Each `|X|` becomes
//! `±X` with its own sign. Every sign assignment yields one variant.

use std::fmt;

use crate::exprcore::{Coefficient, ElemKind, ExponentExpr, FuncName, Rational};

use super::ansatz::parse_linear;
use super::scale::{Mode, ScaleRelation, ScaleTerm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for RelParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "relation parse error at {}: {}",
            self.position, self.message
        )
    }
}

impl std::error::Error for RelParseError {}

/// A transcribed relation and its sign variants.
#[derive(Clone, Debug, PartialEq)]
pub struct PaperRelation {
    pub text: String,
    pub variants: Vec<ScaleRelation>,
}

const MAX_ABS: usize = 6;

pub fn parse_relation(src: &str) -> Result<PaperRelation, RelParseError> {
    let chars: Vec<char> = src.chars().collect();
    let pipes = chars.iter().filter(|c| **c == '|').count();
    if pipes % 2 != 0 {
        let position = chars.iter().rposition(|c| *c == '|').unwrap_or(0);
        return Err(RelParseError {
            position,
            message: "unbalanced `|`".into(),
        });
    }
    let n_abs = pipes / 2;
    if n_abs > MAX_ABS {
        return Err(RelParseError {
            position: 0,
            message: "too many `|…|` groups".into(),
        });
    }
    let mut variants: Vec<ScaleRelation> = Vec::new();
    for mask in 0..(1u32 << (n_abs + 1)) {
        let pm = if mask & 1 == 0 { 1 } else { -1 };
        let abs: Vec<i8> = (0..n_abs)
            .map(|i| if mask >> (i + 1) & 1 == 0 { 1 } else { -1 })
            .collect();
        let mut p = Parser {
            chars: &chars,
            pos: 0,
            pm,
            abs: &abs,
            abs_used: 0,
            pm_used: false,
        };
        let rel = p.relation()?;
        if pm < 0 && !p.pm_used {
            continue;
        }
        if !variants.contains(&rel) {
            variants.push(rel);
        }
    }
    Ok(PaperRelation {
        text: src.to_string(),
        variants,
    })
}

type Poly = Vec<ScaleTerm>;

struct Parser<'a> {
    chars: &'a [char],
    pos: usize,
    pm: i8,
    abs: &'a [i8],
    abs_used: usize,
    pm_used: bool,
}

fn mul(a: &Poly, b: &Poly) -> Option<Poly> {
    merge(a.iter().flat_map(|x| b.iter().map(|y| x.mul(y))))
}

/// Merges like terms one at a time, giving up once any number leaves the
/// moderate range, so no single step can overflow.
fn merge(terms: impl IntoIterator<Item = ScaleTerm>) -> Option<Poly> {
    let mut acc: Poly = Vec::new();
    for t in terms {
        if !t.is_moderate() {
            return None;
        }
        acc.push(t);
        acc = ScaleRelation::new(acc, Mode::Real).terms;
        if !acc.iter().all(ScaleTerm::is_moderate) {
            return None;
        }
    }
    Some(acc)
}

fn scale(a: &Poly, k: i128) -> Poly {
    a.iter()
        .map(|t| {
            let mut t = t.clone();
            t.coeff = t.coeff.scale(Rational::from_integer(k));
            t
        })
        .collect()
}

fn atom_poly(t: ScaleTerm) -> Poly {
    vec![t]
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, RelParseError> {
        Err(RelParseError {
            position: self.pos,
            message: message.into(),
        })
    }

    fn bounded(&self, p: Option<Poly>) -> Result<Poly, RelParseError> {
        p.map_or_else(|| self.err("number too large"), Ok)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn peek2(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos + 1).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn relation(&mut self) -> Result<ScaleRelation, RelParseError> {
        let lhs = self.sum()?;
        let rhs = if self.eat('=') {
            self.sum()?
        } else {
            Vec::new()
        };
        if self.peek().is_some() {
            return self.err("unexpected trailing input");
        }
        let mut terms = lhs;
        terms.extend(scale(&rhs, -1));
        let r = ScaleRelation::new(self.bounded(merge(terms))?, Mode::Real);
        if r.is_empty() {
            return self.err("relation vanishes identically");
        }
        Ok(r)
    }

    /// Sign token at the cursor: `+`, `-`, `±`, `∓`, `+-`, `-+`.
    fn sign(&mut self) -> Option<i128> {
        let c = self.peek()?;
        let pm = self.pm as i128;
        let (value, width) = match (c, self.peek2()) {
            ('+', Some('-')) => (pm, 2),
            ('-', Some('+')) => (-pm, 2),
            ('±', _) => (pm, 1),
            ('∓', _) => (-pm, 1),
            ('+', _) => (1, 1),
            ('-', _) => (-1, 1),
            _ => return None,
        };
        if width == 2 || c == '±' || c == '∓' {
            self.pm_used = true;
        }
        self.pos += width;
        Some(value)
    }

    fn sum(&mut self) -> Result<Poly, RelParseError> {
        let mut acc = Vec::new();
        let first = self.sign().unwrap_or(1);
        acc.extend(scale(&self.term()?, first));
        while let Some(s) = {
            match self.peek() {
                Some('+' | '-' | '±' | '∓') => self.sign(),
                _ => None,
            }
        } {
            acc.extend(scale(&self.term()?, s));
        }
        self.bounded(merge(acc))
    }

    fn term(&mut self) -> Result<Poly, RelParseError> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                let rhs = self.power()?;
                acc = self.bounded(mul(&acc, &rhs))?;
            } else if self.peek() == Some('/') {
                self.pos += 1;
                self.skip_ws();
                let at = self.pos;
                let rhs = self.power()?;
                if rhs.len() != 1 {
                    self.pos = at;
                    return self.err("division by a sum");
                }
                let Some(inv) = rhs[0].inverse() else {
                    self.pos = at;
                    return self.err("division by zero");
                };
                acc = self.bounded(mul(&acc, &atom_poly(inv)))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Poly, RelParseError> {
        let (base, symbolic_ok) = self.primary()?;
        if !self.eat('^') {
            return Ok(base);
        }
        self.skip_ws();
        let at = self.pos;
        let e = self.exponent()?;
        if let Some(k) = e.as_constant() {
            if base.len() == 1 {
                return self.monomial_pow(&base[0], &e, at);
            }
            if !(0..=16).contains(&k) {
                self.pos = at;
                return self.err("sums take small nonnegative integer powers");
            }
            let mut acc = atom_poly(ScaleTerm::one());
            for _ in 0..k {
                acc = self.bounded(mul(&acc, &base))?;
            }
            return Ok(acc);
        }
        if !symbolic_ok || base.len() != 1 {
            self.pos = at;
            return self.err("symbolic powers apply to A, L, or a parameter");
        }
        self.monomial_pow(&base[0], &e, at)
    }

    fn monomial_pow(
        &mut self,
        t: &ScaleTerm,
        e: &ExponentExpr,
        at: usize,
    ) -> Result<Poly, RelParseError> {
        if let Some(k) = e.as_constant() {
            if k.abs() > 64 {
                self.pos = at;
                return self.err("exponent too large");
            }
            let base = if k < 0 {
                match t.inverse() {
                    Some(inv) => inv,
                    None => {
                        self.pos = at;
                        return self.err("negative power of zero");
                    }
                }
            } else {
                t.clone()
            };
            let mut acc = ScaleTerm::one();
            for _ in 0..k.unsigned_abs() {
                acc = acc.mul(&base);
                if !acc.is_moderate() {
                    self.pos = at;
                    return self.err("number too large");
                }
            }
            return Ok(atom_poly(acc));
        }
        // Symbolic exponent on a single atom: A, L, or one parameter.
        let mut out = ScaleTerm::one();
        if !t.a_power.is_zero() && t.a_power == 1 && t.l_power.is_zero() && t.coeff.is_one() {
            out.a_power = e.clone();
        } else if t.l_power == 1 && t.a_power.is_zero() && t.coeff.is_one() {
            out.l_power = e.clone();
        } else if t.a_power.is_zero()
            && t.l_power.is_zero()
            && t.coeff.rational == Rational::from_integer(1)
            && t.coeff.symbols.params.len() == 1
            && t.coeff.symbols.params.values().all(|p| *p == 1)
        {
            let name = t.coeff.symbols.params.keys().next().unwrap();
            out.coeff = Coefficient::param_pow(name, e.clone());
        } else {
            self.pos = at;
            return self.err("symbolic powers apply to A, L, or a parameter");
        }
        Ok(atom_poly(out))
    }

    fn exponent(&mut self) -> Result<ExponentExpr, RelParseError> {
        let start = self.pos;
        let neg = self.eat('-');
        match self.peek() {
            Some('(') => {
                if neg {
                    return self.err("write negative linear exponents inside the parentheses");
                }
                self.pos += 1;
                let s = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos] != ')' {
                    self.pos += 1;
                }
                if self.pos >= self.chars.len() {
                    return self.err("missing `)`");
                }
                let inner: String = self.chars[s..self.pos]
                    .iter()
                    .filter(|c| !c.is_whitespace())
                    .collect();
                self.pos += 1;
                parse_linear(&inner).ok_or(RelParseError {
                    position: s,
                    message: "bad linear exponent".into(),
                })
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(ExponentExpr::constant(if neg { -n } else { n }))
            }
            Some(c) if c.is_ascii_alphabetic() && !neg => {
                let id = self.ident();
                Ok(ExponentExpr::param(&id))
            }
            _ => {
                self.pos = start;
                self.err("expected an exponent")
            }
        }
    }

    fn integer(&mut self) -> Result<i64, RelParseError> {
        let s = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text: String = self.chars[s..self.pos].iter().collect();
        match text.parse::<i64>() {
            Ok(v) if v <= 1_000_000_000 => Ok(v),
            _ => {
                self.pos = s;
                self.err("integer too large")
            }
        }
    }

    fn ident(&mut self) -> String {
        let s = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        self.chars[s..self.pos].iter().collect()
    }

    fn expect_arg_a(&mut self) -> Result<(), RelParseError> {
        if !self.eat('(') {
            return self.err("expected `(A)`");
        }
        if self.peek() != Some('A') {
            return self.err("expected `A`");
        }
        self.pos += 1;
        if !self.eat(')') {
            return self.err("expected `)`");
        }
        Ok(())
    }

    /// Returns the parsed value and whether a symbolic power may follow.
    fn primary(&mut self) -> Result<(Poly, bool), RelParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok((inner, false))
            }
            Some('|') => {
                self.pos += 1;
                let idx = self.abs_used;
                self.abs_used += 1;
                let inner = self.sum()?;
                if !self.eat('|') {
                    return self.err("expected `|`");
                }
                let s = self.abs.get(idx).copied().unwrap_or(1) as i128;
                Ok((scale(&inner, s), false))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok((
                    atom_poly(ScaleTerm::constant(Coefficient::int(n as i128))),
                    false,
                ))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let at = self.pos;
                let id = self.ident();
                let next = self.chars.get(self.pos).copied();
                let func = id.len() == 1 && matches!(next, Some('\'') | Some('('));
                if func {
                    if let Some(name) = id.chars().next().and_then(FuncName::from_char) {
                        let mut order = 0u32;
                        while self.chars.get(self.pos) == Some(&'\'') {
                            order += 1;
                            self.pos += 1;
                        }
                        self.expect_arg_a()?;
                        let mut t = ScaleTerm::one();
                        t.func_evals.insert((name, order), 1);
                        return Ok((atom_poly(t), false));
                    }
                }
                let elem = match id.as_str() {
                    "sin" => Some(ElemKind::Sin),
                    "cos" => Some(ElemKind::Cos),
                    _ => None,
                };
                if let Some(kind) = elem {
                    self.expect_arg_a()?;
                    let mut t = ScaleTerm::one();
                    t.elementary.insert(kind, 1);
                    return Ok((atom_poly(t), false));
                }
                if next == Some('(') {
                    self.pos = at;
                    return self.err(format!("unknown function `{id}`"));
                }
                let t = match id.as_str() {
                    "A" => ScaleTerm::one().with_a(ExponentExpr::one()),
                    "L" => ScaleTerm::one().with_l(1),
                    "V" => ScaleTerm::one().with_v(1),
                    _ => ScaleTerm::constant(Coefficient::param(&id)),
                };
                Ok((atom_poly(t), true))
            }
            Some(c) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }
}
