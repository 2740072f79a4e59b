//! Symbolic kernel: canonical sums of monomials in the field and its
//! x-derivatives, with exact rational coefficients, named parameters and
//! exponents that are integer-linear in named parameters.

mod coeff;
mod diff;
mod eval;
mod exponent;
mod expr;

pub use coeff::{rational_to_f64, real_pow, render_rational, CoeffSymbols, Coefficient, Rational};
pub use diff::{differentiate_x, differentiate_x_n};
pub use eval::{evaluate, evaluate_monomial, evaluate_terms, Bindings};
pub use exponent::ExponentExpr;
pub use expr::{
    func_label, ElemKind, Expr, Factor, FactorKey, Field, FuncName, Monomial, TimeDeriv,
};

use thiserror::Error;

/// Bound parsers enforce on every integer they build. One product or sum of
/// two such values stays far inside `i128`, so checking after each step is
/// enough to rule out overflow.
pub const MAGNITUDE_LIMIT: i128 = 1 << 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("|u| factors cannot be differentiated")]
    ModulusNotDifferentiable,
    #[error("unbound symbol `{0}`")]
    UnboundSymbol(String),
}
