use super::coeff::{Coefficient, Rational};
use super::exponent::ExponentExpr;
use super::expr::{ElemKind, Expr, FactorKey, Monomial, TimeDeriv};
use super::ExprError;

/// `p · m` where `p` is a linear exponent form: one monomial per component,
/// with the exponent parameters moving into the coefficient.
fn times_exponent(m: &Monomial, p: &ExponentExpr) -> Vec<Monomial> {
    let mut out = Vec::new();
    if p.constant_part() != 0 {
        out.push(m.scaled(&Coefficient::int(p.constant_part() as i128)));
    }
    for (name, c) in p.terms() {
        let coeff = Coefficient::param(name).scale(Rational::from_integer(*c as i128));
        out.push(m.scaled(&coeff));
    }
    out
}

fn differentiate_monomial(m: &Monomial) -> Result<Vec<Monomial>, ExprError> {
    let mut out = Vec::new();
    let one = ExponentExpr::one();
    let minus_one = ExponentExpr::constant(-1);
    for (key, power) in m.factor_map() {
        let mut rest = m.clone();
        rest.mul_factor(*key, &minus_one);
        match key {
            FactorKey::Field(k) => {
                rest.mul_factor(FactorKey::Field(k + 1), &one);
                out.extend(times_exponent(&rest, power));
            }
            FactorKey::Func(name, r) => {
                rest.mul_factor(FactorKey::Func(*name, r + 1), &one);
                rest.mul_factor(FactorKey::Field(1), &one);
                out.extend(times_exponent(&rest, power));
            }
            FactorKey::Elementary(kind) => {
                rest.mul_factor(FactorKey::Field(1), &one);
                match kind {
                    ElemKind::Sin => {
                        rest.mul_factor(FactorKey::Elementary(ElemKind::Cos), &one);
                        out.extend(times_exponent(&rest, power));
                    }
                    ElemKind::Cos => {
                        rest.mul_factor(FactorKey::Elementary(ElemKind::Sin), &one);
                        out.extend(times_exponent(&rest, &power.scale(-1)));
                    }
                }
            }
            FactorKey::Modulus => return Err(ExprError::ModulusNotDifferentiable),
        }
    }
    Ok(out)
}

/// `d/dx` by the product and chain rules; result is canonical.
///
/// Time-derivative entries gain one x-order, which is the same operator
/// applied after the time derivative.
pub fn differentiate_x(e: &Expr) -> Result<Expr, ExprError> {
    let mut out = Expr::zero().with_field(e.field);
    for m in &e.monomials {
        out.monomials.extend(differentiate_monomial(m)?);
    }
    for t in &e.time_derivs {
        if t.mono.has_modulus() {
            return Err(ExprError::ModulusNotDifferentiable);
        }
        out.time_derivs.push(TimeDeriv {
            mono: t.mono.clone(),
            t_order: t.t_order,
            x_order: t.x_order + 1,
        });
    }
    Ok(out.canonicalize())
}

pub fn differentiate_x_n(e: &Expr, n: u32) -> Result<Expr, ExprError> {
    let mut cur = e.canonicalize();
    for _ in 0..n {
        cur = differentiate_x(&cur)?;
    }
    Ok(cur)
}
