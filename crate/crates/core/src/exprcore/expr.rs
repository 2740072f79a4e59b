use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::coeff::{CoeffSymbols, Coefficient, Rational};
use super::exponent::ExponentExpr;

/// The three arbitrary functions of the general convection–diffusion–dispersion model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FuncName {
    F,
    G,
    H,
}

impl FuncName {
    pub fn as_char(self) -> char {
        match self {
            FuncName::F => 'f',
            FuncName::G => 'g',
            FuncName::H => 'h',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'f' => Some(FuncName::F),
            'g' => Some(FuncName::G),
            'h' => Some(FuncName::H),
            _ => None,
        }
    }
}

/// `φ⁽ʳ⁾` written with primes, e.g. `g''`.
pub fn func_label(name: FuncName, order: u32) -> String {
    let mut s = name.as_char().to_string();
    for _ in 0..order {
        s.push('\'');
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ElemKind {
    Sin,
    Cos,
}

impl ElemKind {
    pub fn name(self) -> &'static str {
        match self {
            ElemKind::Sin => "sin",
            ElemKind::Cos => "cos",
        }
    }
}

/// Which symbol the equation used for its field.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Field {
    #[default]
    U,
    Psi,
}

impl Field {
    pub fn name(self) -> &'static str {
        match self {
            Field::U => "u",
            Field::Psi => "psi",
        }
    }
}

/// Sort key of a factor. The derived order is the canonical factor order:
/// field derivatives by order, then function symbols, elementary functions,
/// and the modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FactorKey {
    Field(u32),
    Func(FuncName, u32),
    Elementary(ElemKind),
    Modulus,
}

/// One multiplicative factor with its power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    /// `(∂ₓᵏu)^p`
    FieldDeriv {
        order: u32,
        power: ExponentExpr,
    },
    /// `φ⁽ʳ⁾(u)^p`
    FuncSym {
        name: FuncName,
        deriv_order: u32,
        power: u32,
    },
    Elementary {
        kind: ElemKind,
        power: u32,
    },
    /// `|u|^p`
    Modulus {
        power: ExponentExpr,
    },
}

impl Factor {
    pub fn key_power(&self) -> (FactorKey, ExponentExpr) {
        match self {
            Factor::FieldDeriv { order, power } => (FactorKey::Field(*order), power.clone()),
            Factor::FuncSym {
                name,
                deriv_order,
                power,
            } => (
                FactorKey::Func(*name, *deriv_order),
                ExponentExpr::constant(*power as i64),
            ),
            Factor::Elementary { kind, power } => (
                FactorKey::Elementary(*kind),
                ExponentExpr::constant(*power as i64),
            ),
            Factor::Modulus { power } => (FactorKey::Modulus, power.clone()),
        }
    }

    fn from_key_power(key: FactorKey, power: &ExponentExpr) -> Factor {
        let small = || power.as_constant().unwrap_or(0).max(0) as u32;
        match key {
            FactorKey::Field(order) => Factor::FieldDeriv {
                order,
                power: power.clone(),
            },
            FactorKey::Func(name, deriv_order) => Factor::FuncSym {
                name,
                deriv_order,
                power: small(),
            },
            FactorKey::Elementary(kind) => Factor::Elementary {
                kind,
                power: small(),
            },
            FactorKey::Modulus => Factor::Modulus {
                power: power.clone(),
            },
        }
    }
}

/// Coefficient times a product of factors. The factor map is kept merged
/// and free of zero powers, so the stored form is canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coeff: Coefficient,
    factors: BTreeMap<FactorKey, ExponentExpr>,
}

impl Monomial {
    pub fn constant(coeff: Coefficient) -> Self {
        Monomial {
            coeff,
            factors: BTreeMap::new(),
        }
    }

    pub fn new(coeff: Coefficient, factors: impl IntoIterator<Item = Factor>) -> Self {
        let mut m = Self::constant(coeff);
        for f in factors {
            let (k, p) = f.key_power();
            m.mul_factor(k, &p);
        }
        m
    }

    /// `u^p`
    pub fn field_power(power: ExponentExpr) -> Self {
        Self::new(Coefficient::one(), [Factor::FieldDeriv { order: 0, power }])
    }

    /// `∂ₓᵏu`
    pub fn field_deriv(order: u32) -> Self {
        Self::new(
            Coefficient::one(),
            [Factor::FieldDeriv {
                order,
                power: ExponentExpr::one(),
            }],
        )
    }

    pub fn mul_factor(&mut self, key: FactorKey, power: &ExponentExpr) {
        let slot = self.factors.entry(key).or_insert_with(ExponentExpr::zero);
        *slot = &*slot + power;
        if slot.is_zero() {
            self.factors.remove(&key);
        }
    }

    pub fn factor_map(&self) -> &BTreeMap<FactorKey, ExponentExpr> {
        &self.factors
    }

    pub fn factors(&self) -> Vec<Factor> {
        self.factors
            .iter()
            .map(|(k, p)| Factor::from_key_power(*k, p))
            .collect()
    }

    pub fn has_modulus(&self) -> bool {
        self.factors.contains_key(&FactorKey::Modulus)
    }

    pub fn max_deriv_order(&self) -> u32 {
        self.factors
            .keys()
            .filter_map(|k| match k {
                FactorKey::Field(o) => Some(*o),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Monomial::constant(&self.coeff * &other.coeff);
        out.factors = self.factors.clone();
        for (k, p) in &other.factors {
            out.mul_factor(*k, p);
        }
        out
    }

    pub fn scaled(&self, c: &Coefficient) -> Monomial {
        let mut out = self.clone();
        out.coeff = &self.coeff * c;
        out
    }

    /// Merge key: everything except the rational part of the coefficient.
    fn merge_key(&self) -> (BTreeMap<FactorKey, ExponentExpr>, CoeffSymbols) {
        (self.factors.clone(), self.coeff.symbols.clone())
    }

    /// True when this monomial is exactly `c·u` (no other factors).
    pub fn is_bare_field(&self) -> bool {
        self.factors.len() == 1
            && self.factors.get(&FactorKey::Field(0)) == Some(&ExponentExpr::one())
    }
}

/// `∂ₜʲ∂ₓʳ` applied to a monomial, kept unexpanded until traveling reduction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TimeDeriv {
    pub mono: Monomial,
    pub t_order: u32,
    pub x_order: u32,
}

/// Sum of monomials and time-derivative terms; the left-hand side of `… = 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Expr {
    pub field: Field,
    pub monomials: Vec<Monomial>,
    pub time_derivs: Vec<TimeDeriv>,
}

impl Expr {
    pub fn zero() -> Self {
        Expr::default()
    }

    pub fn from_monomials(monomials: Vec<Monomial>) -> Self {
        Expr {
            field: Field::U,
            monomials,
            time_derivs: Vec::new(),
        }
        .canonicalize()
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty() && self.time_derivs.is_empty()
    }

    /// Every coefficient and exponent within
    /// [`MAGNITUDE_LIMIT`](super::MAGNITUDE_LIMIT).
    pub fn is_moderate(&self) -> bool {
        let mono = |m: &Monomial| {
            m.coeff.is_moderate() && m.factors.values().all(ExponentExpr::is_moderate)
        };
        self.monomials.iter().all(mono) && self.time_derivs.iter().all(|t| mono(&t.mono))
    }

    pub fn with_field(mut self, field: Field) -> Self {
        self.field = field;
        self
    }

    pub fn add(&self, other: &Expr) -> Expr {
        let mut out = self.clone();
        out.monomials.extend(other.monomials.iter().cloned());
        out.time_derivs.extend(other.time_derivs.iter().cloned());
        out.canonicalize()
    }

    pub fn scale(&self, c: &Coefficient) -> Expr {
        let mut out = self.clone();
        for m in &mut out.monomials {
            m.coeff = &m.coeff * c;
        }
        for t in &mut out.time_derivs {
            t.mono.coeff = &t.mono.coeff * c;
        }
        out.canonicalize()
    }

    pub fn neg(&self) -> Expr {
        self.scale(&Coefficient::int(-1))
    }

    /// Product of two x-only expressions.
    pub fn mul(&self, other: &Expr) -> Expr {
        let mut out = Expr::zero().with_field(self.field);
        for a in &self.monomials {
            for b in &other.monomials {
                out.monomials.push(a.mul(b));
            }
        }
        out.canonicalize()
    }

    /// Merge like terms, drop zeros, sort. Idempotent.
    pub fn canonicalize(&self) -> Expr {
        let mut merged: BTreeMap<_, Rational> = BTreeMap::new();
        for m in &self.monomials {
            *merged.entry(m.merge_key()).or_insert_with(Rational::zero) += m.coeff.rational;
        }
        let monomials = merged
            .into_iter()
            .filter(|(_, r)| !r.is_zero())
            .map(|((factors, symbols), rational)| Monomial {
                coeff: Coefficient { rational, symbols },
                factors,
            })
            .collect();

        let mut tmerged: BTreeMap<_, Rational> = BTreeMap::new();
        for t in &self.time_derivs {
            let key = (t.t_order, t.x_order, t.mono.merge_key());
            *tmerged.entry(key).or_insert_with(Rational::zero) += t.mono.coeff.rational;
        }
        let time_derivs = tmerged
            .into_iter()
            .filter(|(_, r)| !r.is_zero())
            .map(
                |((t_order, x_order, (factors, symbols)), rational)| TimeDeriv {
                    mono: Monomial {
                        coeff: Coefficient { rational, symbols },
                        factors,
                    },
                    t_order,
                    x_order,
                },
            )
            .collect();

        Expr {
            field: self.field,
            monomials,
            time_derivs,
        }
    }

    pub fn max_x_order(&self) -> u32 {
        let a = self
            .monomials
            .iter()
            .map(|m| m.max_deriv_order())
            .max()
            .unwrap_or(0);
        let b = self
            .time_derivs
            .iter()
            .map(|t| t.mono.max_deriv_order() + t.x_order)
            .max()
            .unwrap_or(0);
        a.max(b)
    }

    /// Names of all coefficient parameters and exponent parameters in use.
    pub fn parameter_names(&self) -> Vec<String> {
        let mut names = std::collections::BTreeSet::new();
        let monos = self
            .monomials
            .iter()
            .chain(self.time_derivs.iter().map(|t| &t.mono));
        for m in monos {
            for (n, p) in &m.coeff.symbols.params {
                names.insert(n.clone());
                names.extend(p.params().map(String::from));
            }
            for p in m.factors.values() {
                names.extend(p.params().map(String::from));
            }
        }
        names.into_iter().collect()
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::pdeparse::render(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u_pow(p: i64) -> Factor {
        Factor::FieldDeriv {
            order: 0,
            power: ExponentExpr::constant(p),
        }
    }

    #[test]
    fn commutative_merge() {
        let a = Monomial::new(
            Coefficient::one(),
            [
                u_pow(1),
                Factor::FieldDeriv {
                    order: 1,
                    power: 1.into(),
                },
            ],
        );
        let b = Monomial::new(
            Coefficient::one(),
            [
                Factor::FieldDeriv {
                    order: 1,
                    power: 1.into(),
                },
                u_pow(1),
            ],
        );
        let e = Expr::from_monomials(vec![a.clone(), b]);
        assert_eq!(e.monomials.len(), 1);
        assert_eq!(e.monomials[0].coeff, Coefficient::int(2));
        assert_eq!(e.monomials[0].factor_map(), a.factor_map());
    }

    #[test]
    fn cancellation_gives_empty() {
        let a = Monomial::new(Coefficient::int(3), [u_pow(1)]);
        let b = Monomial::new(Coefficient::int(-3), [u_pow(1)]);
        assert!(Expr::from_monomials(vec![a, b]).is_zero());
    }

    #[test]
    fn symbolic_power_addition() {
        let m = ExponentExpr::param("m");
        let a = Monomial::new(
            Coefficient::one(),
            [
                Factor::FieldDeriv {
                    order: 0,
                    power: m.clone(),
                },
                u_pow(2),
            ],
        );
        let expected = &m + &ExponentExpr::constant(2);
        assert_eq!(
            a.factors(),
            vec![Factor::FieldDeriv {
                order: 0,
                power: expected
            }]
        );
    }

    #[test]
    fn zero_power_not_stored() {
        let a = Monomial::new(Coefficient::one(), [u_pow(2), u_pow(-2)]);
        assert!(a.factors().is_empty());
    }
}
