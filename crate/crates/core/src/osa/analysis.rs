use crate::exprcore::Expr;

use super::reduce::scale_substitute;
use super::scale::{render_sum, Mode, ScaleRelation, ScaleTerm};
use super::solve::{solve_for_l, WidthSolution};
use super::OsaError;

#[derive(Clone, Debug, PartialEq)]
pub struct RelationAnalysis {
    pub relation: ScaleRelation,
    pub solution: Option<WidthSolution>,
    /// For relations without `L`: the condition they impose on `A` and `V`.
    pub constraint: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Analysis {
    pub mode: Mode,
    pub relations: Vec<RelationAnalysis>,
}

impl Analysis {
    pub fn primary(&self) -> &ScaleRelation {
        &self.relations[0].relation
    }
}

/// Scale relation(s) of an equation, each solved for `L` where possible.
pub fn analyze(e: &Expr, mode: Mode) -> Result<Analysis, OsaError> {
    let rels = scale_substitute(e, mode)?;
    if rels.is_empty() {
        return Err(OsaError::DegenerateRelation(
            "the equation vanishes identically".into(),
        ));
    }
    let mut relations = Vec::new();
    for r in rels {
        let relation = r.normalize();
        if !relation.has_l() {
            if !relation.has_v()
                && !relation.terms.iter().any(|t| {
                    !t.a_power.is_zero() || !t.func_evals.is_empty() || !t.elementary.is_empty()
                })
            {
                return Err(OsaError::DegenerateRelation(format!(
                    "`{relation}` involves none of A, L, V"
                )));
            }
            let constraint = Some(constraint_text(&relation));
            relations.push(RelationAnalysis {
                relation,
                solution: None,
                constraint,
            });
            continue;
        }
        let solution = solve_for_l(&relation)?;
        relations.push(RelationAnalysis {
            relation,
            solution: Some(solution),
            constraint: None,
        });
    }
    Ok(Analysis { mode, relations })
}

/// `V^k = rhs` when the relation is a pure velocity condition, the relation
/// itself otherwise. The direction sign is read as `τ = +1`, the wave
/// moving along `x - Vt` as written.
fn constraint_text(r: &ScaleRelation) -> String {
    let pure = |t: &ScaleTerm| {
        t.a_power.is_zero()
            && t.func_evals.is_empty()
            && t.elementary.is_empty()
            && t.sigma.is_zero()
    };
    if let [x, y] = r.terms.as_slice() {
        let (v, c) = if x.v_power > 0 { (x, y) } else { (y, x) };
        if v.v_power > 0 && c.v_power == 0 && pure(v) && pure(c) {
            if let Some(inv) = ScaleTerm::constant(v.coeff.clone()).inverse() {
                let mut rhs = c.mul(&inv);
                rhs.coeff = rhs.coeff.neg();
                rhs.tau = false;
                let lhs = if v.v_power == 1 {
                    "V".to_string()
                } else {
                    format!("V^{}", v.v_power)
                };
                return format!("{lhs} = {}", render_sum(&[rhs]));
            }
        }
    }
    r.to_string()
}
