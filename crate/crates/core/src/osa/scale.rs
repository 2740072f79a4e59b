use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exprcore::{
    func_label, real_pow, CoeffSymbols, Coefficient, ElemKind, ExponentExpr, FuncName, Rational,
};

/// Real profile vs. complex envelope substitution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Real,
    Envelope,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Real => "real",
            Mode::Envelope => "envelope",
        })
    }
}

/// Which component of an envelope-mode relation this is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    Whole,
    Real,
    Imaginary,
}

/// One term `c · A^a · L^l · σ^s · τ^t · V^v · Π φ⁽ʳ⁾(A)^k · Π sin/cos(A)^k`.
///
/// `σ` is the slope sign of the one-scale substitution and `τ` the
/// propagation-direction sign attached to odd powers of `V`; both square to
/// one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScaleTerm {
    pub coeff: Coefficient,
    pub a_power: ExponentExpr,
    pub l_power: ExponentExpr,
    pub sigma: ExponentExpr,
    pub tau: bool,
    pub v_power: i64,
    pub func_evals: BTreeMap<(FuncName, u32), i64>,
    pub elementary: BTreeMap<ElemKind, i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct TermShape {
    l_rev: std::cmp::Reverse<ExponentExpr>,
    v_rev: std::cmp::Reverse<i64>,
    a_power: ExponentExpr,
    func_evals: Vec<((FuncName, u32), i64)>,
    elementary: Vec<(ElemKind, i64)>,
    sigma: ExponentExpr,
    tau: bool,
    symbols: CoeffSymbols,
}

impl ScaleTerm {
    pub fn constant(coeff: Coefficient) -> Self {
        ScaleTerm {
            coeff,
            a_power: ExponentExpr::zero(),
            l_power: ExponentExpr::zero(),
            sigma: ExponentExpr::zero(),
            tau: false,
            v_power: 0,
            func_evals: BTreeMap::new(),
            elementary: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Coefficient::one())
    }

    pub fn with_a(mut self, p: ExponentExpr) -> Self {
        self.a_power = p;
        self
    }

    pub fn with_l(mut self, p: i64) -> Self {
        self.l_power = ExponentExpr::constant(p);
        self
    }

    pub fn with_v(mut self, p: i64) -> Self {
        self.v_power = p;
        self
    }

    pub(crate) fn shape(&self) -> TermShape {
        TermShape {
            l_rev: std::cmp::Reverse(self.l_power.clone()),
            v_rev: std::cmp::Reverse(self.v_power),
            a_power: self.a_power.clone(),
            func_evals: self.func_evals.iter().map(|(k, v)| (*k, *v)).collect(),
            elementary: self.elementary.iter().map(|(k, v)| (*k, *v)).collect(),
            sigma: self.sigma.clone(),
            tau: self.tau,
            symbols: self.coeff.symbols.clone(),
        }
    }

    pub fn mul(&self, other: &ScaleTerm) -> ScaleTerm {
        let mut out = self.clone();
        out.coeff = &self.coeff * &other.coeff;
        out.a_power = &self.a_power + &other.a_power;
        out.l_power = &self.l_power + &other.l_power;
        out.sigma = (&self.sigma + &other.sigma).mod2();
        out.tau = self.tau ^ other.tau;
        out.v_power += other.v_power;
        for (k, p) in &other.func_evals {
            add_power(&mut out.func_evals, *k, *p);
        }
        for (k, p) in &other.elementary {
            add_power(&mut out.elementary, *k, *p);
        }
        out
    }

    /// Coefficient and every exponent within
    /// [`MAGNITUDE_LIMIT`](crate::exprcore::MAGNITUDE_LIMIT).
    pub fn is_moderate(&self) -> bool {
        let ok = |v: &i64| (*v as i128).abs() <= crate::exprcore::MAGNITUDE_LIMIT;
        self.coeff.is_moderate()
            && self.a_power.is_moderate()
            && self.l_power.is_moderate()
            && ok(&self.v_power)
            && self.func_evals.values().all(ok)
            && self.elementary.values().all(ok)
    }

    /// Multiplicative inverse (`σ⁻¹ = σ`, `τ⁻¹ = τ`).
    pub fn inverse(&self) -> Option<ScaleTerm> {
        Some(ScaleTerm {
            coeff: self.coeff.inverse()?,
            a_power: self.a_power.scale(-1),
            l_power: self.l_power.scale(-1),
            sigma: self.sigma.clone(),
            tau: self.tau,
            v_power: -self.v_power,
            func_evals: self.func_evals.iter().map(|(k, v)| (*k, -v)).collect(),
            elementary: self.elementary.iter().map(|(k, v)| (*k, -v)).collect(),
        })
    }

    pub fn has_l(&self) -> bool {
        !self.l_power.is_zero()
    }

    pub fn eval(&self, env: &ScaleEnv) -> Result<Complex64, String> {
        let lookup = |n: &str| env.params.get(n).copied();
        let mut v = self.coeff.eval(&lookup)?;
        v *= real_pow(env.a, self.a_power.eval(&lookup)?);
        v *= real_pow(env.l, self.l_power.eval(&lookup)?);
        v *= real_pow(env.sigma, self.sigma.eval(&lookup)?);
        if self.tau {
            v *= env.tau;
        }
        v *= real_pow(env.v, self.v_power as f64);
        for ((name, r), p) in &self.func_evals {
            let f = env
                .funcs
                .get(&(*name, *r))
                .copied()
                .ok_or_else(|| format!("{}(A)", func_label(*name, *r)))?;
            v *= real_pow(f, *p as f64);
        }
        for (kind, p) in &self.elementary {
            let base = match kind {
                ElemKind::Sin => env.a.sin(),
                ElemKind::Cos => env.a.cos(),
            };
            v *= real_pow(base, *p as f64);
        }
        Ok(v)
    }

    /// Text of the term without its leading sign; second value is the sign.
    pub fn render_parts(&self) -> (bool, String) {
        let mut num = Vec::new();
        if let Some(c) = self.coeff.render_magnitude() {
            num.push(c);
        }
        if !self.sigma.is_zero() {
            num.push(power_text("σ", &self.sigma));
        }
        if self.tau {
            num.push("τ".to_string());
        }
        if self.v_power != 0 {
            num.push(power_text("V", &ExponentExpr::constant(self.v_power)));
        }
        if !self.a_power.is_zero() {
            num.push(power_text("A", &self.a_power));
        }
        for ((name, r), p) in &self.func_evals {
            num.push(power_text(
                &format!("{}(A)", func_label(*name, *r)),
                &ExponentExpr::constant(*p),
            ));
        }
        for (kind, p) in &self.elementary {
            num.push(power_text(
                &format!("{}(A)", kind.name()),
                &ExponentExpr::constant(*p),
            ));
        }
        let mut body = if num.is_empty() {
            "1".to_string()
        } else {
            num.join("*")
        };
        if !self.l_power.is_zero() {
            let lp = &self.l_power;
            let negative = match lp.as_constant() {
                Some(c) => c < 0,
                None => lp.constant_part() < 0 || lp.terms().values().all(|c| *c < 0),
            };
            if negative {
                body.push('/');
                body.push_str(&power_text("L", &lp.scale(-1)));
            } else if body == "1" {
                body = power_text("L", lp);
            } else {
                body.push('*');
                body.push_str(&power_text("L", lp));
            }
        }
        (self.coeff.rational.is_negative(), body)
    }
}

fn add_power<K: Ord + Copy>(map: &mut BTreeMap<K, i64>, k: K, p: i64) {
    let slot = map.entry(k).or_insert(0);
    *slot += p;
    if *slot == 0 {
        map.remove(&k);
    }
}

fn power_text(base: &str, p: &ExponentExpr) -> String {
    if *p == 1 {
        base.to_string()
    } else {
        format!("{base}^{}", p.render_atom())
    }
}

/// Numeric values for evaluating scale terms.
#[derive(Clone, Debug)]
pub struct ScaleEnv {
    pub a: f64,
    pub l: f64,
    pub v: f64,
    pub sigma: f64,
    pub tau: f64,
    pub params: BTreeMap<String, f64>,
    pub funcs: BTreeMap<(FuncName, u32), f64>,
}

impl ScaleEnv {
    pub fn new(a: f64, l: f64, v: f64) -> Self {
        ScaleEnv {
            a,
            l,
            v,
            sigma: 1.0,
            tau: 1.0,
            params: BTreeMap::new(),
            funcs: BTreeMap::new(),
        }
    }
}

/// `Σ terms = 0`, kept merged and sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScaleRelation {
    pub terms: Vec<ScaleTerm>,
    pub mode: Mode,
    pub part: Part,
}

impl ScaleRelation {
    pub fn new(terms: Vec<ScaleTerm>, mode: Mode) -> Self {
        ScaleRelation {
            terms,
            mode,
            part: Part::Whole,
        }
        .canonical()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Merge like terms, drop zeros, and sort into display order.
    pub fn canonical(&self) -> Self {
        let mut merged: BTreeMap<TermShape, (ScaleTerm, Rational)> = BTreeMap::new();
        for t in &self.terms {
            let mut t = t.clone();
            t.sigma = t.sigma.mod2();
            let entry = merged
                .entry(t.shape())
                .or_insert_with(|| (t.clone(), Rational::zero()));
            entry.1 += t.coeff.rational;
        }
        let terms = merged
            .into_values()
            .filter(|(_, r)| !r.is_zero())
            .map(|(mut t, r)| {
                t.coeff.rational = r;
                t
            })
            .collect();
        ScaleRelation {
            terms,
            mode: self.mode,
            part: self.part,
        }
    }

    pub fn scale_by(&self, t: &ScaleTerm) -> Self {
        ScaleRelation {
            terms: self.terms.iter().map(|x| x.mul(t)).collect(),
            mode: self.mode,
            part: self.part,
        }
        .canonical()
    }

    /// Divide out the common `A`, `L`, `σ`, and `τ` factors.
    ///
    /// The `A` divisor is the smallest exponent when all exponents differ by
    /// constants; otherwise the smallest purely numeric exponent, if any.
    /// `L` is divided only when every exponent is numeric and of one sign.
    pub fn normalize(&self) -> Self {
        let r = self.canonical();
        if r.terms.is_empty() {
            return r;
        }
        let mut divisor = ScaleTerm::one();
        divisor.a_power = common_a_power(r.terms.iter().map(|t| &t.a_power));
        let ls: Option<Vec<i64>> = r.terms.iter().map(|t| t.l_power.as_constant()).collect();
        if let Some(ls) = ls {
            let max = *ls.iter().max().unwrap();
            let min = *ls.iter().min().unwrap();
            if max <= 0 {
                divisor.l_power = ExponentExpr::constant(max);
            } else if min >= 0 {
                divisor.l_power = ExponentExpr::constant(min);
            }
        }
        let s0 = &r.terms[0].sigma;
        if !s0.is_zero() && r.terms.iter().all(|t| &t.sigma == s0) {
            divisor.sigma = s0.clone();
        }
        if r.terms.iter().all(|t| t.tau) {
            divisor.tau = true;
        }
        let inv = divisor.inverse().expect("unit coefficient");
        r.scale_by(&inv)
    }

    /// Impose a linear relation between exponent parameters, e.g. `n = 2k - m`.
    /// Parameters appearing as coefficient values keep their names.
    pub fn substitute_exponent(&self, name: &str, with: &ExponentExpr) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut t = t.clone();
                t.a_power = t.a_power.substitute_linear(name, with);
                t.l_power = t.l_power.substitute_linear(name, with);
                t.sigma = t.sigma.substitute_linear(name, with).mod2();
                for p in t.coeff.symbols.params.values_mut() {
                    *p = p.substitute_linear(name, with);
                }
                t.coeff.symbols.params.retain(|_, p| !p.is_zero());
                t
            })
            .collect();
        ScaleRelation {
            terms,
            mode: self.mode,
            part: self.part,
        }
        .canonical()
    }

    pub fn has_sigma(&self) -> bool {
        self.terms.iter().any(|t| !t.sigma.is_zero())
    }

    pub fn has_tau(&self) -> bool {
        self.terms.iter().any(|t| t.tau)
    }

    pub fn has_l(&self) -> bool {
        self.terms.iter().any(|t| t.has_l())
    }

    pub fn has_v(&self) -> bool {
        self.terms.iter().any(|t| t.v_power != 0)
    }

    /// Fix `σ` and/or `τ` to numeric signs, folding them into coefficients.
    /// Symbolic `σ` powers are left untouched.
    pub fn fix_signs(&self, sigma: Option<i8>, tau: Option<i8>) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut t = t.clone();
                if let (Some(s), Some(p)) = (sigma, t.sigma.as_constant()) {
                    if p % 2 != 0 && s < 0 {
                        t.coeff = t.coeff.neg();
                    }
                    t.sigma = ExponentExpr::zero();
                }
                if let Some(s) = tau {
                    if t.tau && s < 0 {
                        t.coeff = t.coeff.neg();
                    }
                    t.tau = false;
                }
                t
            })
            .collect();
        ScaleRelation {
            terms,
            mode: self.mode,
            part: self.part,
        }
        .canonical()
    }

    /// All sign assignments of `σ` and `τ` that occur in the relation.
    pub fn sign_variants(&self) -> Vec<(SignChoice, ScaleRelation)> {
        let sig: &[Option<i8>] = if self.has_sigma() {
            &[Some(1), Some(-1)]
        } else {
            &[None]
        };
        let tau: &[Option<i8>] = if self.has_tau() {
            &[Some(1), Some(-1)]
        } else {
            &[None]
        };
        let mut out = Vec::new();
        for s in sig {
            for t in tau {
                let choice = SignChoice { sigma: *s, tau: *t };
                out.push((choice, self.fix_signs(*s, *t)));
            }
        }
        out
    }

    pub fn eval(&self, env: &ScaleEnv) -> Result<Complex64, String> {
        self.terms.iter().map(|t| t.eval(env)).sum()
    }

    /// Largest single-term magnitude, for relative residuals.
    pub fn eval_scale(&self, env: &ScaleEnv) -> Result<f64, String> {
        let mut m: f64 = 0.0;
        for t in &self.terms {
            m = m.max(t.eval(env)?.norm());
        }
        Ok(m)
    }

    pub fn render_lhs(&self) -> String {
        render_sum(&self.terms)
    }
}

impl fmt::Display for ScaleRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = 0", self.render_lhs())
    }
}

pub fn render_sum(terms: &[ScaleTerm]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        let (neg, body) = t.render_parts();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

fn common_a_power<'a>(powers: impl Iterator<Item = &'a ExponentExpr>) -> ExponentExpr {
    let powers: Vec<&ExponentExpr> = powers.collect();
    let first = powers[0];
    let all_comparable = powers.iter().all(|p| (*p - first).is_constant());
    if all_comparable {
        return powers
            .iter()
            .min_by(|a, b| cmp_const((**a - first).constant_part(), (**b - first).constant_part()))
            .map(|p| (*p).clone())
            .unwrap();
    }
    powers
        .iter()
        .filter_map(|p| p.as_constant())
        .min()
        .map(ExponentExpr::constant)
        .unwrap_or_else(ExponentExpr::zero)
}

fn cmp_const(a: i64, b: i64) -> Ordering {
    a.cmp(&b)
}

/// A concrete choice of the slope sign and the propagation direction.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct SignChoice {
    pub sigma: Option<i8>,
    pub tau: Option<i8>,
}

impl fmt::Display for SignChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(s) = self.sigma {
            parts.push(format!("σ={}", if s > 0 { "+1" } else { "-1" }));
        }
        if let Some(t) = self.tau {
            parts.push(format!("τ={}", if t > 0 { "+1" } else { "-1" }));
        }
        if parts.is_empty() {
            f.write_str("-")
        } else {
            f.write_str(&parts.join(","))
        }
    }
}
