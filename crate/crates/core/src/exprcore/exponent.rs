use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// Integer-linear form `constant + Σ cᵢ·nᵢ` over named integer parameters.
///
/// Used for every exponent that may be symbolic (`u^(m-1)`, `A^(k-m)`,
/// `L^(-l-4)`). Zero coefficients are never stored, so derived equality
/// is structural equality of the normalized form.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentExpr {
    constant: i64,
    terms: BTreeMap<String, i64>,
}

impl ExponentExpr {
    pub fn constant(c: i64) -> Self {
        ExponentExpr {
            constant: c,
            terms: BTreeMap::new(),
        }
    }

    pub fn zero() -> Self {
        Self::constant(0)
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn param(name: &str) -> Self {
        Self::term(name, 1)
    }

    pub fn term(name: &str, coeff: i64) -> Self {
        let mut e = Self::zero();
        e.add_term(name, coeff);
        e
    }

    pub fn from_parts(constant: i64, terms: impl IntoIterator<Item = (String, i64)>) -> Self {
        let mut e = Self::constant(constant);
        for (k, v) in terms {
            e.add_term(&k, v);
        }
        e
    }

    fn add_term(&mut self, name: &str, coeff: i64) {
        let slot = self.terms.entry(name.to_string()).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.terms.remove(name);
        }
    }

    pub fn constant_part(&self) -> i64 {
        self.constant
    }

    pub fn terms(&self) -> &BTreeMap<String, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.constant == 0 && self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<i64> {
        self.is_constant().then_some(self.constant)
    }

    /// Every integer within [`MAGNITUDE_LIMIT`](super::MAGNITUDE_LIMIT).
    pub fn is_moderate(&self) -> bool {
        let ok = |v: i64| (v as i128).abs() <= super::MAGNITUDE_LIMIT;
        ok(self.constant) && self.terms.values().all(|v| ok(*v))
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        ExponentExpr {
            constant: self.constant * k,
            terms: self.terms.iter().map(|(n, c)| (n.clone(), c * k)).collect(),
        }
    }

    /// Reduce every coefficient modulo 2 (for powers of a sign symbol).
    pub fn mod2(&self) -> Self {
        Self::from_parts(
            self.constant.rem_euclid(2),
            self.terms.iter().map(|(n, c)| (n.clone(), c.rem_euclid(2))),
        )
    }

    pub fn params(&self) -> impl Iterator<Item = &str> {
        self.terms.keys().map(|s| s.as_str())
    }

    /// Numeric value given integer bindings of the parameters.
    pub fn eval(&self, lookup: &dyn Fn(&str) -> Option<f64>) -> Result<f64, String> {
        let mut v = self.constant as f64;
        for (name, c) in &self.terms {
            let x = lookup(name).ok_or_else(|| name.clone())?;
            v += *c as f64 * x;
        }
        Ok(v)
    }

    /// Replace named parameters by integer values.
    pub fn substitute(&self, values: &BTreeMap<String, i64>) -> Self {
        let mut out = Self::constant(self.constant);
        for (name, c) in &self.terms {
            match values.get(name) {
                Some(v) => out.constant += c * v,
                None => out.add_term(name, *c),
            }
        }
        out
    }

    /// Replace one parameter by a linear form.
    pub fn substitute_linear(&self, name: &str, with: &ExponentExpr) -> Self {
        match self.terms.get(name) {
            Some(&c) => {
                let mut rest = self.clone();
                rest.terms.remove(name);
                &rest + &with.scale(c)
            }
            None => self.clone(),
        }
    }

    /// Render for use inside the equation DSL: bare integer or parameter,
    /// otherwise parenthesised, e.g. `(m-1)`.
    pub fn render_atom(&self) -> String {
        let s = self.to_string();
        if self.is_constant() && self.constant >= 0 {
            s
        } else if self.constant == 0
            && self.terms.len() == 1
            && *self.terms.values().next().unwrap() == 1
        {
            s
        } else {
            format!("({s})")
        }
    }
}

impl fmt::Display for ExponentExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (name, c) in &self.terms {
            let mag = c.abs();
            if out.is_empty() {
                if *c < 0 {
                    out.push('-');
                }
            } else {
                out.push(if *c < 0 { '-' } else { '+' });
            }
            if mag != 1 {
                out.push_str(&mag.to_string());
            }
            out.push_str(name);
        }
        if out.is_empty() {
            out = self.constant.to_string();
        } else if self.constant != 0 {
            out.push(if self.constant < 0 { '-' } else { '+' });
            out.push_str(&self.constant.abs().to_string());
        }
        f.write_str(&out)
    }
}

impl Add for &ExponentExpr {
    type Output = ExponentExpr;
    fn add(self, rhs: &ExponentExpr) -> ExponentExpr {
        let mut out = self.clone();
        out.constant += rhs.constant;
        for (n, c) in &rhs.terms {
            out.add_term(n, *c);
        }
        out
    }
}

impl Add for ExponentExpr {
    type Output = ExponentExpr;
    fn add(self, rhs: ExponentExpr) -> ExponentExpr {
        &self + &rhs
    }
}

impl Sub for &ExponentExpr {
    type Output = ExponentExpr;
    fn sub(self, rhs: &ExponentExpr) -> ExponentExpr {
        self + &rhs.scale(-1)
    }
}

impl Sub for ExponentExpr {
    type Output = ExponentExpr;
    fn sub(self, rhs: ExponentExpr) -> ExponentExpr {
        &self - &rhs
    }
}

impl Neg for ExponentExpr {
    type Output = ExponentExpr;
    fn neg(self) -> ExponentExpr {
        self.scale(-1)
    }
}

impl From<i64> for ExponentExpr {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl PartialEq<i64> for ExponentExpr {
    fn eq(&self, other: &i64) -> bool {
        self.as_constant() == Some(*other)
    }
}
