use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exprcore::{render_rational, ExponentExpr, Rational};

use super::scale::ScaleRelation;
use super::OsaError;

/// Rational-linear form `c + Σ aᵢ pᵢ` in exponent parameters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearForm {
    pub constant: Rational,
    pub terms: BTreeMap<String, Rational>,
}

impl LinearForm {
    pub fn constant(c: Rational) -> Self {
        LinearForm {
            constant: c,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_exponent(e: &ExponentExpr) -> Self {
        let mut f = Self::constant(Rational::from_integer(e.constant_part() as i128));
        for (n, c) in e.terms() {
            f.terms
                .insert(n.clone(), Rational::from_integer(*c as i128));
        }
        f
    }

    fn clean(mut self) -> Self {
        self.terms.retain(|_, c| !c.is_zero());
        self
    }

    pub fn add(&self, o: &LinearForm) -> Self {
        let mut out = self.clone();
        out.constant += o.constant;
        for (n, c) in &o.terms {
            *out.terms.entry(n.clone()).or_insert_with(Rational::zero) += c;
        }
        out.clean()
    }

    pub fn scale(&self, k: Rational) -> Self {
        LinearForm {
            constant: self.constant * k,
            terms: self.terms.iter().map(|(n, c)| (n.clone(), c * k)).collect(),
        }
        .clean()
    }

    pub fn sub(&self, o: &LinearForm) -> Self {
        self.add(&o.scale(-Rational::one()))
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        self.terms.is_empty().then_some(self.constant)
    }

    /// Scaled to coprime integer coefficients (sign unchanged).
    fn integral(&self) -> Self {
        let mut lcm = 1i128;
        let mut gcd = 0i128;
        for c in self.terms.values().chain(std::iter::once(&self.constant)) {
            lcm = lcm.lcm(c.denom());
        }
        let scaled = self.scale(Rational::from_integer(lcm));
        for c in scaled
            .terms
            .values()
            .chain(std::iter::once(&scaled.constant))
        {
            gcd = gcd.gcd(c.numer());
        }
        if gcd > 1 {
            scaled.scale(Rational::new(1, gcd))
        } else {
            scaled
        }
    }

    pub fn eval(&self, values: &BTreeMap<String, f64>) -> Option<f64> {
        let mut v = crate::exprcore::rational_to_f64(&self.constant);
        for (n, c) in &self.terms {
            v += crate::exprcore::rational_to_f64(c) * values.get(n)?;
        }
        Some(v)
    }

    pub fn render_with(&self, order: &[String]) -> String {
        let mut parts: Vec<(bool, String)> = Vec::new();
        for n in order {
            if let Some(c) = self.terms.get(n) {
                let mag = c.abs();
                let body = if mag.is_one() {
                    n.clone()
                } else if mag.is_integer() {
                    format!("{}{n}", mag.numer())
                } else {
                    format!("{}*{n}", render_rational(&mag))
                };
                parts.push((c.is_negative(), body));
            }
        }
        if !self.constant.is_zero() || parts.is_empty() {
            parts.push((
                self.constant.is_negative(),
                render_rational(&self.constant.abs()),
            ));
        }
        join_signed(&parts)
    }
}

fn join_signed(parts: &[(bool, String)]) -> String {
    let mut s = String::new();
    for (i, (neg, body)) in parts.iter().enumerate() {
        if i == 0 {
            if *neg {
                s.push('-');
            }
        } else {
            s.push_str(if *neg { " - " } else { " + " });
        }
        s.push_str(body);
    }
    s
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order: Vec<String> = self.terms.keys().cloned().collect();
        f.write_str(&self.render_with(&order))
    }
}

/// What the width should do as the amplitude varies.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Objective {
    /// `L` independent of `A`.
    ConstantWidth,
    /// `A·L` fixed, i.e. `∫u dx` independent of `A`.
    MassInvariant,
    /// `L ∝ V`, given `V ∝ A^e`.
    WidthPropVelocity { velocity_exponent: String },
    /// `L ∝ A^q` for a prescribed rational `q`.
    PowerLaw { q: String },
}

impl Objective {
    pub fn parse(
        name: &str,
        velocity_exponent: Option<&ExponentExpr>,
    ) -> Result<Objective, OsaError> {
        let bad = || OsaError::InvalidAnsatz(format!("unknown objective `{name}`"));
        Ok(match name {
            "constant_width" => Objective::ConstantWidth,
            "mass_invariant" => Objective::MassInvariant,
            "width_prop_velocity" => Objective::WidthPropVelocity {
                velocity_exponent: velocity_exponent
                    .ok_or_else(|| {
                        OsaError::InvalidAnsatz(
                            "width_prop_velocity needs a power-law ansatz".into(),
                        )
                    })?
                    .to_string(),
            },
            other => {
                let q = other.strip_prefix("power_law:").ok_or_else(bad)?;
                parse_q(q).ok_or_else(bad)?;
                Objective::PowerLaw { q: q.to_string() }
            }
        })
    }

    fn target(&self, q: &LinearForm) -> Result<LinearForm, OsaError> {
        Ok(match self {
            Objective::ConstantWidth => q.clone(),
            Objective::MassInvariant => q.add(&LinearForm::constant(Rational::one())),
            Objective::WidthPropVelocity { velocity_exponent } => {
                let e = super::ansatz::parse_exponent(velocity_exponent)
                    .or_else(|| super::ansatz::parse_linear(velocity_exponent))
                    .ok_or_else(|| {
                        OsaError::InvalidAnsatz(format!("bad exponent `{velocity_exponent}`"))
                    })?;
                q.sub(&LinearForm::from_exponent(&e))
            }
            Objective::PowerLaw { q: q0 } => {
                let q0 = parse_q(q0)
                    .ok_or_else(|| OsaError::InvalidAnsatz(format!("bad power `{q0}`")))?;
                q.sub(&LinearForm::constant(q0))
            }
        })
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Objective::ConstantWidth => f.write_str("constant_width"),
            Objective::MassInvariant => f.write_str("mass_invariant"),
            Objective::WidthPropVelocity { .. } => f.write_str("width_prop_velocity"),
            Objective::PowerLaw { q } => write!(f, "power_law:{q}"),
        }
    }
}

fn parse_q(s: &str) -> Option<Rational> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: i128 = n.trim().parse().ok()?;
    let d: i128 = d.trim().parse().ok()?;
    (d > 0 && n.abs() <= 1_000_000 && d <= 1_000_000).then(|| Rational::new(n, d))
}

/// Outcome of balancing all terms under `L ∝ A^q`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExponentConstraint {
    /// `q` in `L ∝ A^q`, before imposing the objective.
    pub width_exponent: LinearForm,
    /// Equalities in integer form: balance conditions, then the objective.
    pub forms: Vec<LinearForm>,
    pub equalities: Vec<String>,
    pub satisfiable: bool,
    pub description: String,
}

/// Exponent balance of a relation with no remaining `V` or profile
/// functions. `order` fixes which parameters are eliminated first; unlisted
/// ones follow alphabetically.
pub fn exponent_balance(
    r: &ScaleRelation,
    objective: Option<&Objective>,
    order: &[String],
) -> Result<ExponentConstraint, OsaError> {
    if r.has_v() {
        return Err(OsaError::NotPowerLawStructured(
            "V is still present; apply an ansatz".into(),
        ));
    }
    if r.terms
        .iter()
        .any(|t| !t.func_evals.is_empty() || !t.elementary.is_empty())
    {
        return Err(OsaError::NotPowerLawStructured(
            "non-power function of A".into(),
        ));
    }
    let mut pairs: Vec<(&ExponentExpr, &ExponentExpr)> =
        r.terms.iter().map(|t| (&t.a_power, &t.l_power)).collect();
    pairs.sort();
    pairs.dedup();
    let mut q = None;
    'outer: for (i, pi) in pairs.iter().enumerate() {
        for pj in &pairs[i + 1..] {
            if let Some(dl) = (pi.1 - pj.1).as_constant() {
                if dl != 0 {
                    let da = LinearForm::from_exponent(&(pj.0 - pi.0));
                    q = Some((da.scale(Rational::new(1, dl as i128)), *pi));
                    break 'outer;
                }
            }
        }
    }
    let Some((q, reference)) = q else {
        return Err(OsaError::NotPowerLawStructured(
            "no pair of terms fixes the width exponent".into(),
        ));
    };
    let mut forms = Vec::new();
    for p in &pairs {
        let da = LinearForm::from_exponent(&(p.0 - reference.0));
        let dl = p.1 - reference.1;
        let form = if let Some(c) = dl.as_constant() {
            da.add(&q.scale(Rational::from_integer(c as i128)))
        } else if let Some(qc) = q.as_constant() {
            da.add(&LinearForm::from_exponent(&dl).scale(qc))
        } else {
            return Err(OsaError::NotPowerLawStructured(
                "exponent balance is nonlinear".into(),
            ));
        };
        push_unique(&mut forms, form);
    }
    if let Some(obj) = objective {
        push_unique(&mut forms, obj.target(&q)?);
    }
    let mut vars: Vec<String> = order.to_vec();
    let mut extra: Vec<String> = forms
        .iter()
        .flat_map(|f| f.terms.keys().cloned())
        .chain(q.terms.keys().cloned())
        .collect();
    extra.sort();
    extra.dedup();
    for v in extra {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    vars.retain(|v| forms.iter().any(|f| f.terms.contains_key(v)) || q.terms.contains_key(v));
    let equalities: Vec<String> = forms.iter().map(|f| render_equality(f, &vars)).collect();
    let (satisfiable, description) = describe(&forms, &vars);
    Ok(ExponentConstraint {
        width_exponent: q,
        forms,
        equalities,
        satisfiable,
        description,
    })
}

fn push_unique(forms: &mut Vec<LinearForm>, f: LinearForm) {
    if f.is_zero() {
        return;
    }
    let f = f.integral();
    let neg = f.scale(-Rational::one());
    if !forms.contains(&f) && !forms.contains(&neg) {
        forms.push(f);
    }
}

/// `f = 0` written as `lhs = rhs` with positive coefficients on both sides.
/// A nonzero constant goes on the left with positive sign; otherwise the
/// largest coefficient does. A single variable reads `m = 3`.
fn render_equality(f: &LinearForm, order: &[String]) -> String {
    let f = f.integral();
    if f.terms.len() == 1 && !f.constant.is_zero() {
        let (n, c) = f.terms.iter().next().unwrap();
        let value = -f.constant / c;
        return format!("{n} = {}", LinearForm::constant(value).render_with(&[]));
    }
    let flip = if !f.constant.is_zero() {
        f.constant.is_negative()
    } else {
        let mut best: Option<(&String, &Rational)> = None;
        for n in order {
            if let Some(c) = f.terms.get(n) {
                if best.map_or(true, |(_, b)| c.abs() > b.abs()) {
                    best = Some((n, c));
                }
            }
        }
        best.is_some_and(|(_, c)| c.is_negative())
    };
    let f = if flip { f.scale(-Rational::one()) } else { f };
    let pos = LinearForm {
        constant: if f.constant.is_positive() {
            f.constant
        } else {
            Rational::zero()
        },
        terms: f
            .terms
            .iter()
            .filter(|(_, c)| c.is_positive())
            .map(|(n, c)| (n.clone(), *c))
            .collect(),
    };
    let neg = LinearForm {
        constant: if f.constant.is_negative() {
            -f.constant
        } else {
            Rational::zero()
        },
        terms: f
            .terms
            .iter()
            .filter(|(_, c)| c.is_negative())
            .map(|(n, c)| (n.clone(), -c))
            .collect(),
    };
    format!("{} = {}", pos.render_with(order), neg.render_with(order))
}

/// Row-reduce and describe the solution set: a chain `m = n + 2 = k + 1`
/// when every pivot differs from one common form by a constant.
fn describe(forms: &[LinearForm], vars: &[String]) -> (bool, String) {
    if forms.is_empty() {
        return (true, "no constraint".into());
    }
    let mut rows: Vec<LinearForm> = forms.to_vec();
    let mut pivots: Vec<(String, LinearForm)> = Vec::new();
    for v in vars {
        let Some(idx) = rows.iter().position(|r| r.terms.contains_key(v)) else {
            continue;
        };
        let row = rows.remove(idx);
        let row = row.scale(row.terms[v].recip());
        for r in rows.iter_mut() {
            if let Some(c) = r.terms.get(v).copied() {
                *r = r.sub(&row.scale(c));
            }
        }
        for (_, p) in pivots.iter_mut() {
            if let Some(c) = p.terms.get(v).copied() {
                *p = p.sub(&row.scale(c));
            }
        }
        pivots.push((v.clone(), row));
    }
    if rows.iter().any(|r| !r.constant.is_zero()) {
        return (false, "unsatisfiable".into());
    }
    if pivots.len() == 1 {
        return (true, render_equality(&pivots[0].1, vars));
    }
    // value of each pivot: p = -(row - p)
    let values: Vec<(String, LinearForm)> = pivots
        .iter()
        .map(|(v, row)| {
            let mut rest = row.clone();
            rest.terms.remove(v);
            (v.clone(), rest.scale(-Rational::one()))
        })
        .collect();
    let free: Vec<LinearForm> = values
        .iter()
        .map(|(_, f)| LinearForm {
            constant: Rational::zero(),
            ..f.clone()
        })
        .collect();
    let chain_ok = !free[0].terms.is_empty()
        && free.iter().all(|f| *f == free[0])
        && free[0].terms.values().all(|c| c.is_integer())
        && values.iter().all(|(_, f)| f.constant.is_integer());
    if chain_ok {
        let top = values.iter().map(|(_, f)| f.constant).max().unwrap();
        let mut parts: Vec<String> = values
            .iter()
            .map(|(v, f)| {
                let off = top - f.constant;
                let mut lf = LinearForm::constant(off);
                lf.terms.insert(v.clone(), Rational::one());
                lf.render_with(vars)
            })
            .collect();
        let mut common = free[0].clone();
        common.constant = top;
        parts.push(common.render_with(vars));
        return (true, parts.join(" = "));
    }
    let text: Vec<String> = pivots
        .iter()
        .map(|(_, r)| render_equality(r, vars))
        .collect();
    (true, text.join(", "))
}
