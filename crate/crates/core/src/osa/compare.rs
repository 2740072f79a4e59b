use serde::{Deserialize, Serialize};

use super::ansatz::{apply_ansatz, Ansatz};
use super::balance::exponent_balance;
use super::relparse::PaperRelation;
use super::scale::{Mode, Part, ScaleRelation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatchFlag {
    Exact,
    ScalingOnly,
    Mismatch,
}

impl MatchFlag {
    pub fn as_str(self) -> &'static str {
        match self {
            MatchFlag::Exact => "exact",
            MatchFlag::ScalingOnly => "scaling-only",
            MatchFlag::Mismatch => "mismatch",
        }
    }
}

fn strip(r: &ScaleRelation) -> ScaleRelation {
    ScaleRelation {
        terms: r.terms.clone(),
        mode: Mode::Real,
        part: Part::Whole,
    }
    .canonical()
}

/// Equal up to one overall monomial factor (number, powers of `A`, `L`,
/// parameters): both sides are divided by each of their terms in turn and
/// compared.
pub fn equivalent(a: &ScaleRelation, b: &ScaleRelation) -> bool {
    let (a, b) = (strip(a), strip(b));
    if a.terms.len() != b.terms.len() || a.is_empty() {
        return false;
    }
    let Some(a0) = a.terms[0].inverse() else {
        return false;
    };
    let na = a.scale_by(&a0);
    b.terms
        .iter()
        .any(|t| t.inverse().is_some_and(|inv| b.scale_by(&inv) == na))
}

/// Concrete sign variants of an engine relation (σ, τ fixed).
pub fn engine_variants(r: &ScaleRelation) -> Vec<ScaleRelation> {
    let mut out: Vec<ScaleRelation> = Vec::new();
    for (_, v) in r.sign_variants() {
        if !out.iter().any(|o| equivalent(o, &v)) {
            out.push(v);
        }
    }
    out
}

fn subset(xs: &[ScaleRelation], ys: &[ScaleRelation]) -> bool {
    xs.iter().all(|x| ys.iter().any(|y| equivalent(x, y)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Comparison {
    pub flag: MatchFlag,
    pub note: Option<String>,
}

/// Width exponent of one relation under an optional ansatz, as text.
fn width_exponent(r: &ScaleRelation, ansatz: Option<&Ansatz>) -> Option<String> {
    let r = match ansatz {
        Some(a) => apply_ansatz(r, a),
        None => r.clone(),
    };
    let b = exponent_balance(&r.normalize(), None, &[]).ok()?;
    b.satisfiable.then(|| b.width_exponent.to_string())
}

/// `exact` when one variant set contains the other (up to a monomial
/// factor); `scaling-only` when the width exponents agree under the
/// ansatz; `mismatch` otherwise.
pub fn compare(
    engine: &ScaleRelation,
    paper: &PaperRelation,
    ansatz: Option<&Ansatz>,
) -> Comparison {
    let ev = engine_variants(&engine.normalize());
    let pv: Vec<ScaleRelation> = paper.variants.iter().map(|v| v.normalize()).collect();
    if subset(&ev, &pv) || subset(&pv, &ev) {
        return Comparison {
            flag: MatchFlag::Exact,
            note: None,
        };
    }
    let shown = ev.first().map(|r| r.to_string()).unwrap_or_default();
    let qe = ev.first().and_then(|r| width_exponent(r, ansatz));
    let qp = pv.first().and_then(|r| width_exponent(r, ansatz));
    match (qe, qp) {
        (Some(a), Some(b)) if a == b => Comparison {
            flag: MatchFlag::ScalingOnly,
            note: Some(format!(
                "coefficients differ (engine: {shown}; published: {}) but both give L ∝ A^({a})",
                paper.text
            )),
        },
        (a, b) => Comparison {
            flag: MatchFlag::Mismatch,
            note: Some(format!(
                "engine: {shown}; published: {}; width exponents {} vs {}",
                paper.text,
                a.as_deref().unwrap_or("undetermined"),
                b.as_deref().unwrap_or("undetermined")
            )),
        },
    }
}
