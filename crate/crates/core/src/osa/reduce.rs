use crate::exprcore::{
    differentiate_x_n, Coefficient, ExponentExpr, Expr, FactorKey, Monomial, Rational,
};
use crate::pdeparse::VELOCITY;

use super::scale::{Mode, Part, ScaleRelation, ScaleTerm};
use super::OsaError;

/// Replace every `∂ₜʲ∂ₓʳ(m)` by `(-V)ʲ ∂ₓʲ⁺ʳ(m)`, the traveling-frame form
/// for `u(x - Vt)`. The result has no time derivatives.
pub fn traveling_reduce(e: &Expr) -> Result<Expr, OsaError> {
    let mut out = Expr::from_monomials(e.monomials.clone()).with_field(e.field);
    for t in &e.time_derivs {
        let base = Expr::from_monomials(vec![t.mono.clone()]);
        let d = differentiate_x_n(&base, t.t_order + t.x_order)?;
        let sign = if t.t_order % 2 == 0 { 1 } else { -1 };
        let c = Coefficient::param_pow(VELOCITY, ExponentExpr::constant(t.t_order as i64))
            .scale(Rational::from_integer(sign));
        out = out.add(&d.scale(&c).with_field(e.field));
    }
    Ok(out.canonicalize())
}

fn monomial_to_term(m: &Monomial, mode: Mode) -> Result<ScaleTerm, OsaError> {
    let mut t = ScaleTerm::constant(m.coeff.clone());
    if let Some(p) = t.coeff.symbols.params.remove(VELOCITY) {
        t.v_power = p
            .as_constant()
            .ok_or_else(|| OsaError::InvalidAnsatz(format!("symbolic power of {VELOCITY}")))?;
    }
    t.tau = t.v_power % 2 != 0;
    for (key, p) in m.factor_map() {
        match key {
            FactorKey::Field(k) => {
                let kp = p.scale(*k as i64);
                t.a_power = &t.a_power + p;
                t.l_power = &t.l_power - &kp;
                if mode == Mode::Envelope {
                    let n = kp.as_constant().ok_or(OsaError::SymbolicEnvelopePower)?;
                    t.coeff.mul_imaginary(n.rem_euclid(4) as u32);
                } else {
                    t.sigma = (&t.sigma + &kp).mod2();
                }
            }
            FactorKey::Func(name, r) => {
                let k = p.as_constant().unwrap_or(0);
                *t.func_evals.entry((*name, *r)).or_insert(0) += k;
            }
            FactorKey::Elementary(kind) => {
                let k = p.as_constant().unwrap_or(0);
                *t.elementary.entry(*kind).or_insert(0) += k;
            }
            FactorKey::Modulus => {
                t.a_power = &t.a_power + p;
            }
        }
    }
    if mode == Mode::Envelope {
        // e^{iσx/L}: the slope sign multiplies each odd power of 1/L.
        t.sigma = t.l_power.mod2();
    }
    Ok(t)
}

/// One-scale substitution. Real mode maps `(∂ᵏu)^p` to `σ^{kp} A^p / L^{kp}`;
/// envelope mode uses `(iσ)^{kp}` and `|u| → A`, then splits the relation
/// into real and imaginary parts and keeps the nonempty ones.
///
/// Time derivatives are first removed by [`traveling_reduce`].
pub fn scale_substitute(e: &Expr, mode: Mode) -> Result<Vec<ScaleRelation>, OsaError> {
    let e = if e.time_derivs.is_empty() {
        e.canonicalize()
    } else {
        traveling_reduce(e)?
    };
    let mut terms = Vec::new();
    for m in &e.monomials {
        terms.push(monomial_to_term(m, mode)?);
    }
    let whole = ScaleRelation::new(terms, mode);
    if whole.is_empty() {
        return Err(OsaError::DegenerateRelation(
            "relation vanishes identically".into(),
        ));
    }
    if mode == Mode::Real {
        return Ok(vec![whole]);
    }
    let (imag, real): (Vec<ScaleTerm>, Vec<ScaleTerm>) = whole
        .terms
        .iter()
        .cloned()
        .partition(|t| t.coeff.symbols.imaginary);
    let mut out = Vec::new();
    if !real.is_empty() {
        let mut r = ScaleRelation::new(real, mode);
        r.part = if imag.is_empty() {
            Part::Whole
        } else {
            Part::Real
        };
        out.push(r);
    }
    if !imag.is_empty() {
        let stripped = imag
            .into_iter()
            .map(|mut t| {
                t.coeff.symbols.imaginary = false;
                t
            })
            .collect();
        let mut r = ScaleRelation::new(stripped, mode);
        r.part = if out.is_empty() {
            Part::Whole
        } else {
            Part::Imaginary
        };
        out.push(r);
    }
    Ok(out)
}
