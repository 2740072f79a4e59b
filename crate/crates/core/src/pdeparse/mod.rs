//! Text front end: the equation DSL.
//!
//! ```text
//! equation   := expr "=" "0"
//! expr       := ["-"] term { ("+"|"-") term }
//! term       := factor { "*" factor | "/" coeffatom }
//! factor     := coeffatom | derivable | call
//! coeffatom  := NUMBER | PARAM ["^" expatom] | "i"
//! derivable  := base ["_" SUBS] ["^" expatom] | "(" expr ")" ["_" SUBS]
//! base       := FIELD | "|" FIELD "|"
//! call       := ("f"|"g"|"h") {"'"} "(" FIELD ")" ["^" INTEGER] ["_" SUBS]
//!             | ("sin"|"cos") "(" FIELD ")" ["^" INTEGER] ["_" SUBS]
//! expatom    := INTEGER | EXPPARAM | "(" linear form over EXPPARAMs ")"
//! ```
//!
//! Subscripts on groups are expanded eagerly with [`differentiate_x`];
//! time subscripts are only accepted directly on the field.

mod lexer;
mod render;

use std::fmt;

use crate::exprcore::{
    differentiate_x, Coefficient, ElemKind, ExponentExpr, Expr, ExprError, Factor, Field, FuncName,
    Monomial, Rational, TimeDeriv,
};
use lexer::{tokenize, Tok, Token};

pub use render::{render, render_monomial};

/// Name of the traveling velocity; always accepted as a coefficient.
pub const VELOCITY: &str = "V";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the source.
    pub position: usize,
    pub line: usize,
    pub column: usize,
    pub expected: String,
    pub found: String,
}

impl ParseError {
    pub(crate) fn at(src: &str, pos: usize, expected: &str, found: Option<String>) -> Self {
        let mut pos = pos.min(src.len().saturating_sub(1));
        while pos > 0 && !src.is_char_boundary(pos) {
            pos -= 1;
        }
        let before = &src[..pos];
        let line = before.matches('\n').count() + 1;
        let column = before
            .rsplit('\n')
            .next()
            .map(|s| s.chars().count())
            .unwrap_or(0)
            + 1;
        let found = found.unwrap_or_else(|| {
            let snippet: String = src[pos..].chars().take(12).collect();
            if snippet.is_empty() {
                "end of input".to_string()
            } else {
                format!("`{snippet}`")
            }
        });
        ParseError {
            position: pos,
            line,
            column,
            expected: expected.to_string(),
            found,
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at line {}, column {}: expected {}, found {}",
            self.line, self.column, self.expected, self.found
        )
    }
}

impl std::error::Error for ParseError {}

/// Parse `<expr> = 0` into a canonical [`Expr`]. `params` declares every
/// parameter name (coefficient or exponent) the source may use.
pub fn parse_equation(src: &str, params: &[&str]) -> Result<Expr, ParseError> {
    let tokens = tokenize(src)?;
    let mut p = Parser {
        src,
        tokens,
        idx: 0,
        params: params.iter().map(|s| s.to_string()).collect(),
        field: None,
    };
    let e = p.parse_expr()?;
    p.expect(&Tok::Equals, "`=`")?;
    match p.peek().clone() {
        Tok::Number(r) if r == Rational::from_integer(0) => {
            p.advance();
        }
        _ => return Err(p.error_here("`0` on the right-hand side")),
    }
    p.expect(&Tok::Eof, "end of input")?;
    if e.is_zero() {
        return Err(ParseError::at(
            src,
            0,
            "an equation that does not vanish identically",
            None,
        ));
    }
    Ok(e.with_field(p.field.unwrap_or(Field::U)).canonicalize())
}

struct Parser<'a> {
    src: &'a str,
    tokens: Vec<Token>,
    idx: usize,
    params: Vec<String>,
    field: Option<Field>,
}

const FUNCS: [&str; 5] = ["f", "g", "h", "sin", "cos"];

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.tokens[self.idx].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.idx + k).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    fn pos(&self) -> usize {
        self.tokens[self.idx].pos
    }

    fn advance(&mut self) -> Token {
        let t = self.tokens[self.idx].clone();
        if self.idx < self.tokens.len() - 1 {
            self.idx += 1;
        }
        t
    }

    fn error_here(&self, expected: &str) -> ParseError {
        let found = self.peek().describe();
        ParseError::at(self.src, self.pos(), expected, Some(found))
    }

    fn error_at(&self, pos: usize, expected: &str) -> ParseError {
        ParseError::at(self.src, pos, expected, None)
    }

    fn expect(&mut self, tok: &Tok, what: &str) -> Result<Token, ParseError> {
        if self.peek() == tok {
            Ok(self.advance())
        } else {
            Err(self.error_here(what))
        }
    }

    fn bounded(&self, e: Expr, at: usize) -> Result<Expr, ParseError> {
        if e.is_moderate() {
            Ok(e)
        } else {
            Err(self.error_at(at, "numbers of moderate size"))
        }
    }

    /// Adds the parts one at a time, so each step merges at most two
    /// moderate coefficients per term and cannot overflow.
    fn sum_bounded(
        &self,
        parts: impl IntoIterator<Item = Expr>,
        at: usize,
    ) -> Result<Expr, ParseError> {
        let mut acc = Expr::zero();
        for p in parts {
            let p = self.bounded(p, at)?;
            acc = self.bounded(acc.add(&p), at)?;
        }
        Ok(acc)
    }

    fn is_param(&self, name: &str) -> bool {
        name == VELOCITY || self.params.iter().any(|p| p == name)
    }

    fn parse_expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = Expr::zero();
        let mut negate = false;
        if matches!(self.peek(), Tok::Minus | Tok::Plus) {
            negate = *self.peek() == Tok::Minus;
            self.advance();
        }
        loop {
            let at = self.pos();
            let t = self.parse_term()?;
            acc = self.bounded(acc.add(&if negate { t.neg() } else { t }), at)?;
            match self.peek() {
                Tok::Plus => negate = false,
                Tok::Minus => negate = true,
                _ => break,
            }
            self.advance();
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.parse_factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.advance();
                    let at = self.pos();
                    let f = self.parse_factor()?;
                    acc = self.multiply(&acc, &f, at)?;
                }
                Tok::Slash => {
                    self.advance();
                    let at = self.pos();
                    let c = self
                        .parse_coeff_atom()?
                        .ok_or_else(|| self.error_at(at, "a number or parameter after `/`"))?;
                    let inv = c
                        .inverse()
                        .ok_or_else(|| self.error_at(at, "a nonzero divisor"))?;
                    acc = self.bounded(acc.scale(&inv), at)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    /// Product that keeps time-derivative entries representable: they may
    /// only be scaled by constants.
    fn multiply(&self, a: &Expr, b: &Expr, at: usize) -> Result<Expr, ParseError> {
        let only_consts = |e: &Expr| {
            e.time_derivs.is_empty() && e.monomials.iter().all(|m| m.factor_map().is_empty())
        };
        if a.time_derivs.is_empty() && b.time_derivs.is_empty() {
            let parts = b
                .monomials
                .iter()
                .map(|m| a.mul(&Expr::from_monomials(vec![m.clone()])));
            return self.sum_bounded(parts, at);
        }
        let (td, c) = if only_consts(a) {
            (b, a)
        } else if only_consts(b) {
            (a, b)
        } else {
            return Err(self.error_at(at, "a time derivative multiplied only by constants"));
        };
        let mut out = td.clone();
        out.monomials.clear();
        out.time_derivs.clear();
        for m in &c.monomials {
            let scaled = td.scale(&m.coeff);
            out.monomials.extend(scaled.monomials);
            out.time_derivs.extend(scaled.time_derivs);
        }
        self.bounded(out.canonicalize(), at)
    }

    fn set_field(&mut self, f: Field, at: usize) -> Result<(), ParseError> {
        match self.field {
            Some(existing) if existing != f => {
                Err(self.error_at(at, "a single field name per equation"))
            }
            _ => {
                self.field = Some(f);
                Ok(())
            }
        }
    }

    fn parse_field_name(&mut self) -> Result<Field, ParseError> {
        let at = self.pos();
        let f = match self.peek() {
            Tok::Ident(s) if s == "u" => Field::U,
            Tok::Ident(s) if s == "psi" => Field::Psi,
            _ => return Err(self.error_here("field `u` or `psi`")),
        };
        self.advance();
        self.set_field(f, at)?;
        Ok(f)
    }

    /// Number, declared parameter (optionally powered), or `i`.
    fn parse_coeff_atom(&mut self) -> Result<Option<Coefficient>, ParseError> {
        match self.peek().clone() {
            Tok::Number(r) => {
                self.advance();
                Ok(Some(Coefficient::rational(r)))
            }
            Tok::Ident(s) if s == "i" => {
                self.advance();
                Ok(Some(Coefficient::imaginary_unit()))
            }
            Tok::Ident(s) if self.is_param(&s) && !self.is_call_ahead() => {
                self.advance();
                let mut power = ExponentExpr::one();
                if *self.peek() == Tok::Caret {
                    self.advance();
                    power = self.parse_exp_atom()?;
                }
                Ok(Some(Coefficient::param_pow(&s, power)))
            }
            _ => Ok(None),
        }
    }

    fn is_call_ahead(&self) -> bool {
        matches!(self.peek_at(1), Tok::LParen | Tok::Prime)
    }

    fn parse_factor(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos();
        if let Some(c) = self.parse_coeff_atom()? {
            return Ok(Expr::from_monomials(vec![Monomial::constant(c)]));
        }
        match self.peek().clone() {
            Tok::Ident(s) if s == "u" || s == "psi" => {
                self.parse_field_name()?;
                self.parse_field_suffix(start)
            }
            Tok::Pipe => {
                self.advance();
                self.parse_field_name()?;
                self.expect(&Tok::Pipe, "closing `|`")?;
                if *self.peek() == Tok::Underscore {
                    return Err(self.error_here("no derivative subscript on |u|"));
                }
                let mut power = ExponentExpr::one();
                if *self.peek() == Tok::Caret {
                    self.advance();
                    power = self.parse_exp_atom()?;
                }
                Ok(Expr::from_monomials(vec![Monomial::new(
                    Coefficient::one(),
                    [Factor::Modulus { power }],
                )]))
            }
            Tok::Ident(s) if FUNCS.contains(&s.as_str()) => self.parse_call(start),
            Tok::LParen => {
                self.advance();
                let inner = self.parse_expr()?;
                self.expect(&Tok::RParen, "closing `)`")?;
                if *self.peek() == Tok::Underscore {
                    let sub_at = self.pos();
                    self.advance();
                    let (nx, nt) = self.parse_subs()?;
                    if nt > 0 {
                        return Err(
                            self.error_at(sub_at, "only x subscripts on a parenthesised group")
                        );
                    }
                    if !inner.time_derivs.is_empty() {
                        return Err(self.error_at(
                            sub_at,
                            "no subscript on a group containing time derivatives",
                        ));
                    }
                    return self.expand(&inner, nx, sub_at);
                }
                if *self.peek() == Tok::Caret {
                    return Err(self.error_here("a subscript or operator after `)`"));
                }
                Ok(inner)
            }
            Tok::Ident(s) => Err(ParseError::at(
                self.src,
                start,
                "a declared parameter, field, or function",
                Some(format!("unknown symbol `{s}`")),
            )),
            _ => Err(self.error_here("a factor")),
        }
    }

    /// `∂ₓⁿ e`, one order and one monomial at a time.
    fn expand(&self, e: &Expr, nx: u32, at: usize) -> Result<Expr, ParseError> {
        let mut cur = e.clone();
        for _ in 0..nx {
            let mut parts = Vec::with_capacity(cur.monomials.len());
            for m in &cur.monomials {
                let d =
                    differentiate_x(&Expr::from_monomials(vec![m.clone()])).map_err(
                        |err| match err {
                            ExprError::ModulusNotDifferentiable => {
                                self.error_at(at, "no derivative of a |u| factor")
                            }
                            ExprError::UnboundSymbol(s) => self.error_at(at, &s),
                        },
                    )?;
                parts.push(d);
            }
            cur = self.sum_bounded(parts, at)?;
        }
        Ok(cur)
    }

    /// After a bare field: optional `_SUBS` then optional `^exp`.
    fn parse_field_suffix(&mut self, start: usize) -> Result<Expr, ParseError> {
        let (mut nx, mut nt) = (0, 0);
        if *self.peek() == Tok::Underscore {
            self.advance();
            (nx, nt) = self.parse_subs()?;
        }
        let mut power = ExponentExpr::one();
        if *self.peek() == Tok::Caret {
            self.advance();
            power = self.parse_exp_atom()?;
        }
        if nt > 0 {
            if power != 1 {
                return Err(self.error_at(start, "a time derivative without a power"));
            }
            return Ok(Expr {
                field: Field::U,
                monomials: vec![],
                time_derivs: vec![TimeDeriv {
                    mono: Monomial::field_deriv(0),
                    t_order: nt,
                    x_order: nx,
                }],
            });
        }
        Ok(Expr::from_monomials(vec![Monomial::new(
            Coefficient::one(),
            [Factor::FieldDeriv { order: nx, power }],
        )]))
    }

    fn parse_call(&mut self, start: usize) -> Result<Expr, ParseError> {
        let name = match self.advance().tok {
            Tok::Ident(s) => s,
            _ => unreachable!(),
        };
        let mut primes = 0u32;
        while *self.peek() == Tok::Prime {
            self.advance();
            primes += 1;
        }
        let elem = match name.as_str() {
            "sin" => Some(ElemKind::Sin),
            "cos" => Some(ElemKind::Cos),
            _ => None,
        };
        if elem.is_some() && primes > 0 {
            return Err(self.error_at(start, "no primes on sin/cos"));
        }
        self.expect(&Tok::LParen, "`(` after function name")?;
        self.parse_field_name()?;
        self.expect(&Tok::RParen, "closing `)`")?;
        let mut power = 1u32;
        if *self.peek() == Tok::Caret {
            self.advance();
            let at = self.pos();
            power = match self.parse_exp_atom()?.as_constant() {
                Some(p) if p >= 1 && p <= 64 => p as u32,
                _ => return Err(self.error_at(at, "a positive integer power on a function call")),
            };
        }
        let factor = match elem {
            Some(kind) => Factor::Elementary { kind, power },
            None => Factor::FuncSym {
                name: FuncName::from_char(name.chars().next().unwrap()).unwrap(),
                deriv_order: primes,
                power,
            },
        };
        let e = Expr::from_monomials(vec![Monomial::new(Coefficient::one(), [factor])]);
        if *self.peek() == Tok::Underscore {
            let sub_at = self.pos();
            self.advance();
            let (nx, nt) = self.parse_subs()?;
            if nt > 0 {
                return Err(self.error_at(sub_at, "only x subscripts on a function call"));
            }
            return self.expand(&e, nx, sub_at);
        }
        Ok(e)
    }

    fn parse_subs(&mut self) -> Result<(u32, u32), ParseError> {
        let at = self.pos();
        match self.peek().clone() {
            Tok::Ident(s)
                if !s.is_empty() && s.chars().all(|c| c == 'x' || c == 't') && s.len() <= 16 =>
            {
                self.advance();
                let nx = s.chars().filter(|c| *c == 'x').count() as u32;
                Ok((nx, s.len() as u32 - nx))
            }
            _ => Err(self.error_at(at, "a subscript made of `x` and `t`")),
        }
    }

    /// `INTEGER | EXPPARAM | "(" linear ")"`. Negative values only inside
    /// parentheses.
    fn parse_exp_atom(&mut self) -> Result<ExponentExpr, ParseError> {
        let at = self.pos();
        let e = match self.peek().clone() {
            Tok::Number(r) => {
                if !r.is_integer() {
                    return Err(self.error_at(at, "integer exponent literal"));
                }
                self.advance();
                ExponentExpr::constant(*r.numer() as i64)
            }
            Tok::Ident(s) if self.is_param(&s) && s != VELOCITY => {
                self.advance();
                ExponentExpr::param(&s)
            }
            Tok::LParen => {
                self.advance();
                let e = self.parse_linear()?;
                self.expect(&Tok::RParen, "closing `)`")?;
                e
            }
            _ => return Err(self.error_here("integer or declared exponent parameter")),
        };
        if *self.peek() == Tok::Slash && matches!(self.peek_at(1), Tok::Number(_)) {
            return Err(
                self.error_here("integer exponent literal (fractional exponents unsupported)")
            );
        }
        Ok(e)
    }

    fn parse_linear(&mut self) -> Result<ExponentExpr, ParseError> {
        let mut acc = ExponentExpr::zero();
        let mut sign = 1i64;
        if matches!(self.peek(), Tok::Minus | Tok::Plus) {
            if *self.peek() == Tok::Minus {
                sign = -1;
            }
            self.advance();
        }
        loop {
            let at = self.pos();
            let item = match self.peek().clone() {
                Tok::Number(r) if r.is_integer() => {
                    self.advance();
                    let k = *r.numer() as i64;
                    if *self.peek() == Tok::Star {
                        self.advance();
                        match self.peek().clone() {
                            Tok::Ident(s) if self.is_param(&s) && s != VELOCITY => {
                                self.advance();
                                ExponentExpr::term(&s, k)
                            }
                            _ => return Err(self.error_here("exponent parameter")),
                        }
                    } else if let Tok::Ident(s) = self.peek().clone() {
                        if self.is_param(&s) && s != VELOCITY {
                            self.advance();
                            ExponentExpr::term(&s, k)
                        } else {
                            return Err(self.error_here("exponent parameter"));
                        }
                    } else {
                        ExponentExpr::constant(k)
                    }
                }
                Tok::Ident(s) if self.is_param(&s) && s != VELOCITY => {
                    self.advance();
                    ExponentExpr::param(&s)
                }
                _ => return Err(self.error_at(at, "integer or declared exponent parameter")),
            };
            acc = &acc + &item.scale(sign);
            if !acc.is_moderate() {
                return Err(self.error_at(at, "an exponent of moderate size"));
            }
            match self.peek() {
                Tok::Plus => sign = 1,
                Tok::Minus => sign = -1,
                _ => break,
            }
            self.advance();
        }
        Ok(acc)
    }
}
