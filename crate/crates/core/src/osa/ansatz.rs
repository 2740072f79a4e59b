use std::fmt;

use crate::exprcore::{Coefficient, ExponentExpr, FuncName, Rational};

use super::scale::ScaleRelation;
use super::OsaError;

/// `V = c · A^e`, or `V = c · φ⁽ʳ⁾(A)` for a profile-function ansatz.
#[derive(Clone, Debug, PartialEq)]
pub struct Ansatz {
    pub coeff: Coefficient,
    pub a_exp: ExponentExpr,
    pub func: Option<(FuncName, u32)>,
}

impl Ansatz {
    /// The power `e` in `V ∝ A^e`; `None` for function ansätze.
    pub fn velocity_exponent(&self) -> Option<&ExponentExpr> {
        self.func.is_none().then_some(&self.a_exp)
    }

    pub fn parse(src: &str) -> Result<Ansatz, OsaError> {
        let bad = |m: &str| OsaError::InvalidAnsatz(format!("{m} in `{src}`"));
        let compact: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        let rhs = compact
            .strip_prefix("V=")
            .ok_or_else(|| bad("expected `V = …`"))?;
        if rhs.is_empty() {
            return Err(bad("empty right-hand side"));
        }
        let mut out = Ansatz {
            coeff: Coefficient::one(),
            a_exp: ExponentExpr::zero(),
            func: None,
        };
        for factor in split_top(rhs, '*').ok_or_else(|| bad("unbalanced parentheses"))? {
            out.push_factor(factor).map_err(|m| bad(&m))?;
            if !out.coeff.is_moderate() || !out.a_exp.is_moderate() {
                return Err(bad("number too large"));
            }
        }
        Ok(out)
    }

    fn push_factor(&mut self, f: &str) -> Result<(), String> {
        if f.is_empty() {
            return Err("empty factor".into());
        }
        let (base, power) = match f.split_once('^') {
            Some((b, p)) => (b, Some(p)),
            None => (f, None),
        };
        if base == "A" {
            let p = match power {
                Some(p) => parse_exponent(p).ok_or_else(|| format!("bad exponent `{p}`"))?,
                None => ExponentExpr::one(),
            };
            self.a_exp = &self.a_exp + &p;
            return Ok(());
        }
        if let Some(inner) = base.strip_suffix("(A)") {
            let mut chars = inner.chars();
            let name = chars
                .next()
                .and_then(FuncName::from_char)
                .ok_or_else(|| format!("unknown function `{inner}`"))?;
            let primes = chars.as_str();
            if !primes.chars().all(|c| c == '\'') || power.is_some() || self.func.is_some() {
                return Err(format!("unsupported function factor `{f}`"));
            }
            self.func = Some((name, primes.len() as u32));
            return Ok(());
        }
        if base.starts_with(|c: char| c.is_ascii_digit()) {
            let r = parse_rational(base).ok_or_else(|| format!("bad number `{base}`"))?;
            if power.is_some() {
                return Err("powers of numbers are not supported".into());
            }
            self.coeff = self.coeff.scale(r);
            return Ok(());
        }
        if base.chars().all(|c| c.is_ascii_alphanumeric())
            && base.starts_with(|c: char| c.is_ascii_alphabetic())
        {
            if base == "V" {
                return Err("`V` on the right-hand side".into());
            }
            let p = match power {
                Some(p) => parse_exponent(p).ok_or_else(|| format!("bad exponent `{p}`"))?,
                None => ExponentExpr::one(),
            };
            self.coeff.mul_param(base, &p);
            return Ok(());
        }
        Err(format!("unrecognized factor `{f}`"))
    }
}

impl fmt::Display for Ansatz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.coeff.rational.numer() < &0 {
            parts.push("-".to_string());
        }
        let mag = self.coeff.render_magnitude();
        let mut body: Vec<String> = mag.into_iter().collect();
        if let Some((name, r)) = self.func {
            body.push(format!("{}(A)", crate::exprcore::func_label(name, r)));
        } else if !self.a_exp.is_zero() {
            if self.a_exp == 1 {
                body.push("A".into());
            } else {
                body.push(format!("A^{}", self.a_exp.render_atom()));
            }
        }
        if body.is_empty() {
            body.push("1".into());
        }
        write!(f, "V = {}{}", parts.concat(), body.join("*"))
    }
}

fn split_top(s: &str, sep: char) -> Option<Vec<&str>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
            }
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    (depth == 0).then(|| {
        out.push(&s[start..]);
        out
    })
}

fn parse_rational(s: &str) -> Option<Rational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: i128 = n.parse().ok()?;
    let d: i128 = d.parse().ok()?;
    (d != 0 && n.abs() <= 1_000_000_000 && d <= 1_000_000_000).then(|| Rational::new(n, d))
}

/// `2`, `-1`, `m`, or a parenthesized integer-linear form like `(2k-m+1)`.
pub(crate) fn parse_exponent(s: &str) -> Option<ExponentExpr> {
    if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        return parse_linear(inner);
    }
    parse_linear(s).filter(|e| e.terms().len() + usize::from(e.constant_part() != 0) <= 1)
}

/// Integer-linear form with optional implicit products (`2k`, `2*k`).
pub(crate) fn parse_linear(s: &str) -> Option<ExponentExpr> {
    let b = s.as_bytes();
    if b.is_empty() {
        return None;
    }
    let mut out = ExponentExpr::zero();
    let mut i = 0;
    let mut first = true;
    while i < b.len() {
        let mut sign = 1i64;
        if b[i] == b'+' || b[i] == b'-' {
            if b[i] == b'-' {
                sign = -1;
            }
            i += 1;
        } else if !first {
            return None;
        }
        first = false;
        let ds = i;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        let num: Option<i64> = if i > ds {
            Some(s[ds..i].parse().ok().filter(|v: &i64| *v <= 1_000_000)?)
        } else {
            None
        };
        if i < b.len() && b[i] == b'*' {
            num?;
            i += 1;
        }
        let is = i;
        while i < b.len() && b[i].is_ascii_alphanumeric() {
            if i == is && !b[i].is_ascii_alphabetic() {
                return None;
            }
            i += 1;
        }
        let k = sign * num.unwrap_or(1);
        if i > is {
            out = &out + &ExponentExpr::term(&s[is..i], k);
        } else {
            num?;
            out = &out + &ExponentExpr::constant(k);
        }
    }
    out.is_moderate().then_some(out)
}

/// Replace `V` by the ansatz in every term. The direction sign `τ` is kept,
/// so `τV` becomes `τ c A^e`.
pub fn apply_ansatz(r: &ScaleRelation, ansatz: &Ansatz) -> ScaleRelation {
    let terms = r
        .terms
        .iter()
        .map(|t| {
            let mut t = t.clone();
            let v = t.v_power;
            if v != 0 {
                let base = if v > 0 {
                    ansatz.coeff.clone()
                } else {
                    ansatz.coeff.inverse().unwrap_or_else(Coefficient::zero)
                };
                for _ in 0..v.unsigned_abs() {
                    t.coeff = &t.coeff * &base;
                }
                t.a_power = &t.a_power + &ansatz.a_exp.scale(v);
                if let Some(key) = ansatz.func {
                    let slot = t.func_evals.entry(key).or_insert(0);
                    *slot += v;
                    if *slot == 0 {
                        t.func_evals.remove(&key);
                    }
                }
                t.v_power = 0;
            }
            t
        })
        .collect();
    ScaleRelation {
        terms,
        mode: r.mode,
        part: r.part,
    }
    .canonical()
}
