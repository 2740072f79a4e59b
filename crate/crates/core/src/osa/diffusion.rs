use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::exprcore::{
    real_pow, CoeffSymbols, Coefficient, ExponentExpr, Expr, Factor, Monomial, Rational,
};

use super::OsaError;

/// `c · A^p · log(A)^k`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesTerm {
    pub coeff: Coefficient,
    pub power: ExponentExpr,
    pub log: u32,
}

/// Finite sum of power-log terms in one variable, kept merged.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Series {
    pub terms: Vec<SeriesTerm>,
}

impl Series {
    pub fn power(coeff: Coefficient, power: ExponentExpr) -> Self {
        Series {
            terms: vec![SeriesTerm {
                coeff,
                power,
                log: 0,
            }],
        }
        .canonical()
    }

    pub fn log(coeff: Coefficient) -> Self {
        Series {
            terms: vec![SeriesTerm {
                coeff,
                power: ExponentExpr::zero(),
                log: 1,
            }],
        }
        .canonical()
    }

    pub fn constant(coeff: Coefficient) -> Self {
        Self::power(coeff, ExponentExpr::zero())
    }

    pub fn canonical(&self) -> Self {
        let mut merged: BTreeMap<(ExponentExpr, u32, CoeffSymbols), Rational> = BTreeMap::new();
        for t in &self.terms {
            *merged
                .entry((t.power.clone(), t.log, t.coeff.symbols.clone()))
                .or_insert_with(Rational::zero) += t.coeff.rational;
        }
        let terms = merged
            .into_iter()
            .filter(|(_, r)| !r.is_zero())
            .map(|((power, log, symbols), rational)| SeriesTerm {
                coeff: Coefficient { rational, symbols },
                power,
                log,
            })
            .collect();
        Series { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.canonical().terms.is_empty()
    }

    pub fn add(&self, o: &Series) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        Series { terms }.canonical()
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| SeriesTerm {
                coeff: &t.coeff * c,
                ..t.clone()
            })
            .collect();
        Series { terms }.canonical()
    }

    /// Multiply by `A^k`.
    pub fn shift(&self, k: i64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| SeriesTerm {
                power: &t.power + &ExponentExpr::constant(k),
                ..t.clone()
            })
            .collect();
        Series { terms }.canonical()
    }

    pub fn derivative(&self) -> Self {
        let mut out = Vec::new();
        for t in &self.terms {
            let lowered = &t.power - &ExponentExpr::one();
            if t.power.constant_part() != 0 {
                let c = t
                    .coeff
                    .scale(Rational::from_integer(t.power.constant_part() as i128));
                out.push(SeriesTerm {
                    coeff: c,
                    power: lowered.clone(),
                    log: t.log,
                });
            }
            for (name, k) in t.power.terms() {
                let c = (&t.coeff * &Coefficient::param(name))
                    .scale(Rational::from_integer(*k as i128));
                out.push(SeriesTerm {
                    coeff: c,
                    power: lowered.clone(),
                    log: t.log,
                });
            }
            if t.log > 0 {
                let c = t.coeff.scale(Rational::from_integer(t.log as i128));
                out.push(SeriesTerm {
                    coeff: c,
                    power: lowered.clone(),
                    log: t.log - 1,
                });
            }
        }
        Series { terms: out }.canonical()
    }

    /// Antiderivative without constant. Needs every `p + 1` to be zero, a
    /// nonzero integer, or a single bare parameter; log terms are rejected.
    pub fn integrate(&self) -> Result<Self, OsaError> {
        let mut out = Vec::new();
        for t in &self.terms {
            if t.log > 0 {
                return Err(OsaError::UnsupportedRhs(
                    "integral of a logarithmic term".into(),
                ));
            }
            let e = &t.power + &ExponentExpr::one();
            if e.is_zero() {
                out.push(SeriesTerm {
                    coeff: t.coeff.clone(),
                    power: ExponentExpr::zero(),
                    log: 1,
                });
                continue;
            }
            let coeff = if let Some(c) = e.as_constant() {
                t.coeff.scale(Rational::new(1, c as i128))
            } else if e.constant_part() == 0
                && e.terms().len() == 1
                && e.terms().values().all(|c| *c == 1)
            {
                let name = e.terms().keys().next().unwrap();
                &t.coeff * &Coefficient::param_pow(name, ExponentExpr::constant(-1))
            } else {
                return Err(OsaError::UnsupportedRhs(format!("division by `{e}`")));
            };
            out.push(SeriesTerm {
                coeff,
                power: e,
                log: 0,
            });
        }
        Ok(Series { terms: out }.canonical())
    }

    pub fn eval(&self, a: f64, params: &BTreeMap<String, f64>) -> Result<f64, String> {
        let lookup = |n: &str| params.get(n).copied();
        let mut v = 0.0;
        for t in &self.terms {
            let c = t.coeff.eval(&lookup)?.re;
            v += c * real_pow(a, t.power.eval(&lookup)?) * a.ln().powi(t.log as i32);
        }
        Ok(v)
    }

    /// As a polynomial expression in `u`; fails if a log term is present.
    pub fn to_expr(&self) -> Result<Expr, OsaError> {
        let mut monos = Vec::new();
        for t in &self.terms {
            if t.log > 0 {
                return Err(OsaError::UnsupportedRhs(
                    "logarithm in an expression".into(),
                ));
            }
            monos.push(Monomial::new(
                t.coeff.clone(),
                [Factor::FieldDeriv {
                    order: 0,
                    power: t.power.clone(),
                }],
            ));
        }
        Ok(Expr::from_monomials(monos))
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.rational < Rational::zero();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mut parts: Vec<String> = t.coeff.render_magnitude().into_iter().collect();
            if !t.power.is_zero() {
                parts.push(if t.power == 1 {
                    "u".into()
                } else {
                    format!("u^{}", t.power.render_atom())
                });
            }
            match t.log {
                0 => {}
                1 => parts.push("log(u)".into()),
                k => parts.push(format!("log(u)^{k}")),
            }
            if parts.is_empty() {
                parts.push("1".into());
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

/// `c₀ · u^q`
#[derive(Clone, Debug, PartialEq)]
pub struct PowerLaw {
    pub coeff: Coefficient,
    pub power: ExponentExpr,
}

impl PowerLaw {
    pub fn series(&self) -> Series {
        Series::power(self.coeff.clone(), self.power.clone())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Diffusion {
    pub g: Series,
    /// `(A g')' + L f'(1 - V₀) + (A² h''' + 3A h'' + h')/L`, which must vanish.
    pub residual: Series,
}

/// Left side of the reduced fixed-width relation divided by `L`:
/// `L f'(1 - V₀) + (A g')' + (A² h''' + 3A h'' + h')/L`.
pub fn reduced_residual(
    f: &Series,
    g: &Series,
    h: &Series,
    l: &Coefficient,
    v0: &Coefficient,
) -> Series {
    let fp = f.derivative();
    let one_minus_v0 = fp
        .scale(l)
        .add(&fp.scale(&(l * v0)).scale(&Coefficient::int(-1)));
    let h1 = h.derivative();
    let h2 = h1.derivative();
    let h3 = h2.derivative();
    let hterm = h3
        .shift(2)
        .add(&h2.shift(1).scale(&Coefficient::int(3)))
        .add(&h1);
    let linv = l.inverse().unwrap_or_else(Coefficient::zero);
    let ag = g.derivative().shift(1).derivative();
    one_minus_v0.add(&ag).add(&hterm.scale(&linv))
}

/// Diffusion `g` giving `A`-independent width for power-law `f` and `h`:
/// integrates `(A g')' = -[L f'(1 - V₀) + (A² h''' + 3A h'' + h')/L]` twice,
/// with constants `C3 log u + C4`.
pub fn compatible_diffusion(
    f: &PowerLaw,
    h: &PowerLaw,
    l: &Coefficient,
    v0: &Coefficient,
) -> Result<Diffusion, OsaError> {
    if l.is_zero() {
        return Err(OsaError::UnsupportedRhs("zero width".into()));
    }
    let zero = Series::default();
    let rhs = reduced_residual(&f.series(), &zero, &h.series(), l, v0).scale(&Coefficient::int(-1));
    let first = rhs.integrate()?;
    let g = first
        .shift(-1)
        .integrate()?
        .add(&Series::log(Coefficient::param("C3")))
        .add(&Series::constant(Coefficient::param("C4")));
    let residual = reduced_residual(&f.series(), &g, &h.series(), l, v0);
    Ok(Diffusion { g, residual })
}
