use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::exponent::ExponentExpr;

pub type Rational = num_rational::Ratio<i128>;

/// Symbolic part of a coefficient: named real parameters with exponent powers,
/// and a flag for one power of the imaginary unit (`i² = -1` is folded into
/// the rational).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoeffSymbols {
    pub params: BTreeMap<String, ExponentExpr>,
    pub imaginary: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coefficient {
    pub rational: Rational,
    pub symbols: CoeffSymbols,
}

impl Coefficient {
    pub fn rational(r: Rational) -> Self {
        Coefficient {
            rational: r,
            symbols: CoeffSymbols::default(),
        }
    }

    /// Numerator, denominator and every symbol exponent within
    /// [`MAGNITUDE_LIMIT`](super::MAGNITUDE_LIMIT).
    pub fn is_moderate(&self) -> bool {
        let lim = super::MAGNITUDE_LIMIT;
        self.rational.numer().abs() <= lim
            && *self.rational.denom() <= lim
            && self.symbols.params.values().all(ExponentExpr::is_moderate)
    }

    pub fn int(n: i128) -> Self {
        Self::rational(Rational::from_integer(n))
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn imaginary_unit() -> Self {
        let mut c = Self::one();
        c.symbols.imaginary = true;
        c
    }

    pub fn param(name: &str) -> Self {
        Self::param_pow(name, ExponentExpr::one())
    }

    pub fn param_pow(name: &str, power: ExponentExpr) -> Self {
        let mut c = Self::one();
        c.mul_param(name, &power);
        c
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rational.is_one() && self.symbols == CoeffSymbols::default()
    }

    pub fn mul_param(&mut self, name: &str, power: &ExponentExpr) {
        let slot = self
            .symbols
            .params
            .entry(name.to_string())
            .or_insert_with(ExponentExpr::zero);
        *slot = &*slot + power;
        if slot.is_zero() {
            self.symbols.params.remove(name);
        }
    }

    pub fn mul_imaginary(&mut self, power: u32) {
        for _ in 0..power % 4 {
            if self.symbols.imaginary {
                self.symbols.imaginary = false;
                self.rational = -self.rational;
            } else {
                self.symbols.imaginary = true;
            }
        }
    }

    pub fn scale(&self, r: Rational) -> Self {
        let mut c = self.clone();
        c.rational *= r;
        c
    }

    pub fn neg(&self) -> Self {
        self.scale(-Rational::one())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut c = Coefficient::rational(self.rational.recip());
        for (n, p) in &self.symbols.params {
            c.mul_param(n, &p.scale(-1));
        }
        if self.symbols.imaginary {
            // 1/i = -i
            c.symbols.imaginary = true;
            c.rational = -c.rational;
        }
        Some(c)
    }

    pub fn eval(&self, lookup: &dyn Fn(&str) -> Option<f64>) -> Result<Complex64, String> {
        let mut v = Complex64::new(rational_to_f64(&self.rational), 0.0);
        for (name, p) in &self.symbols.params {
            let base = lookup(name).ok_or_else(|| name.clone())?;
            let e = p.eval(lookup)?;
            v *= real_pow(base, e);
        }
        if self.symbols.imaginary {
            v *= Complex64::i();
        }
        Ok(v)
    }

    /// DSL text of the coefficient as a `*`-joined prefix, without sign.
    /// Returns `None` when the coefficient is exactly ±1 with no symbols.
    pub fn render_magnitude(&self) -> Option<String> {
        let mut parts = Vec::new();
        let mag = self.rational.abs();
        if !mag.is_one() {
            parts.push(render_rational(&mag));
        }
        if self.symbols.imaginary {
            parts.push("i".to_string());
        }
        for (name, p) in &self.symbols.params {
            if *p == 1 {
                parts.push(name.clone());
            } else {
                parts.push(format!("{name}^{}", p.render_atom()));
            }
        }
        (!parts.is_empty()).then(|| parts.join("*"))
    }
}

impl Mul for &Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &Coefficient) -> Coefficient {
        let mut out = self.clone();
        out.rational *= rhs.rational;
        for (n, p) in &rhs.symbols.params {
            out.mul_param(n, p);
        }
        if rhs.symbols.imaginary {
            out.mul_imaginary(1);
        }
        if out.rational.is_zero() {
            return Coefficient::zero();
        }
        out
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rational.is_negative() {
            f.write_str("-")?;
        }
        f.write_str(&self.render_magnitude().unwrap_or_else(|| "1".into()))
    }
}

pub fn render_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// `base^e` over the reals, using `powi` when the exponent is integral so
/// that negative bases stay real.
pub fn real_pow(base: f64, e: f64) -> f64 {
    if e.fract() == 0.0 && e.abs() < i32::MAX as f64 {
        base.powi(e as i32)
    } else {
        base.powf(e)
    }
}
