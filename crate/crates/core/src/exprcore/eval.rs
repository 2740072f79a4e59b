use std::collections::BTreeMap;

use num_complex::Complex64;

use super::coeff::real_pow;
use super::expr::{ElemKind, Expr, FactorKey, FuncName, Monomial};
use super::ExprError;

/// Numeric values for everything an [`Expr`] may mention.
#[derive(Clone, Debug, Default)]
pub struct Bindings {
    /// `u, u_x, u_xx, …` at the evaluation point.
    pub field: Vec<Complex64>,
    /// `φ⁽ʳ⁾(u)` values.
    pub funcs: BTreeMap<(FuncName, u32), Complex64>,
    /// Real parameters, including exponent parameters and the velocity `V`.
    pub params: BTreeMap<String, f64>,
    /// `∂ₜʲ∂ₓʳu` values keyed by `(j, r)`.
    pub time: BTreeMap<(u32, u32), Complex64>,
}

impl Bindings {
    pub fn with_field(field: Vec<Complex64>) -> Self {
        Bindings {
            field,
            ..Default::default()
        }
    }

    pub fn real_field(values: &[f64]) -> Self {
        Self::with_field(values.iter().map(|v| Complex64::new(*v, 0.0)).collect())
    }

    pub fn param(mut self, name: &str, value: f64) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    fn lookup(&self) -> impl Fn(&str) -> Option<f64> + '_ {
        move |n: &str| self.params.get(n).copied()
    }
}

fn complex_pow(base: Complex64, e: f64) -> Complex64 {
    if e.fract() == 0.0 && e.abs() < i32::MAX as f64 {
        base.powi(e as i32)
    } else {
        base.powf(e)
    }
}

pub fn evaluate_monomial(m: &Monomial, b: &Bindings) -> Result<Complex64, ExprError> {
    let lookup = b.lookup();
    let mut v = m.coeff.eval(&lookup).map_err(ExprError::UnboundSymbol)?;
    for (key, power) in m.factor_map() {
        let p = power.eval(&lookup).map_err(ExprError::UnboundSymbol)?;
        let factor = match key {
            FactorKey::Field(k) => {
                let base = b
                    .field
                    .get(*k as usize)
                    .copied()
                    .ok_or_else(|| ExprError::UnboundSymbol(format!("d^{k}u/dx^{k}")))?;
                complex_pow(base, p)
            }
            FactorKey::Func(name, r) => {
                let base =
                    b.funcs.get(&(*name, *r)).copied().ok_or_else(|| {
                        ExprError::UnboundSymbol(super::expr::func_label(*name, *r))
                    })?;
                complex_pow(base, p)
            }
            FactorKey::Elementary(kind) => {
                let u = b
                    .field
                    .first()
                    .copied()
                    .ok_or_else(|| ExprError::UnboundSymbol("u".into()))?;
                let base = match kind {
                    ElemKind::Sin => u.sin(),
                    ElemKind::Cos => u.cos(),
                };
                complex_pow(base, p)
            }
            FactorKey::Modulus => {
                let u = b
                    .field
                    .first()
                    .copied()
                    .ok_or_else(|| ExprError::UnboundSymbol("u".into()))?;
                Complex64::new(real_pow(u.norm(), p), 0.0)
            }
        };
        v *= factor;
    }
    Ok(v)
}

/// Value of every additive term, monomials first then time-derivative terms.
pub fn evaluate_terms(e: &Expr, b: &Bindings) -> Result<Vec<Complex64>, ExprError> {
    let mut out = Vec::with_capacity(e.monomials.len() + e.time_derivs.len());
    for m in &e.monomials {
        out.push(evaluate_monomial(m, b)?);
    }
    for t in &e.time_derivs {
        if !t.mono.is_bare_field() {
            return Err(ExprError::UnboundSymbol(format!(
                "time derivative of a composite term ({})",
                crate::pdeparse::render_monomial(&t.mono, e.field)
            )));
        }
        let c = t
            .mono
            .coeff
            .eval(&b.lookup())
            .map_err(ExprError::UnboundSymbol)?;
        let d = b
            .time
            .get(&(t.t_order, t.x_order))
            .copied()
            .ok_or_else(|| ExprError::UnboundSymbol(format!("u_t^{}x^{}", t.t_order, t.x_order)))?;
        out.push(c * d);
    }
    Ok(out)
}

pub fn evaluate(e: &Expr, b: &Bindings) -> Result<Complex64, ExprError> {
    Ok(evaluate_terms(e, b)?.into_iter().sum())
}
