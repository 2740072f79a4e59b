use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::exprcore::{ExponentExpr, Rational};

use super::scale::{render_sum, Mode, ScaleEnv, ScaleRelation, ScaleTerm, SignChoice};
use super::OsaError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchKind {
    Explicit,
    Implicit,
}

/// How a branch determines `L`, with `y = L^s`.
#[derive(Clone, Debug, PartialEq)]
pub enum BranchForm {
    /// `y = numer / denom`
    Ratio {
        s: u32,
        numer: Vec<ScaleTerm>,
        denom: Vec<ScaleTerm>,
    },
    /// `a y² + b y + c = 0`, root sign `root` on the square root.
    Quadratic {
        s: u32,
        root: i8,
        a: Vec<ScaleTerm>,
        b: Vec<ScaleTerm>,
        c: Vec<ScaleTerm>,
    },
    Implicit,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BranchSolution {
    pub kind: BranchKind,
    pub signs: SignChoice,
    pub expression: String,
    pub validity: String,
    /// The relation with the signs of this branch fixed.
    pub relation: ScaleRelation,
    pub form: BranchForm,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WidthSolution {
    pub relation: ScaleRelation,
    pub branches: Vec<BranchSolution>,
    /// Both propagation directions in one `±` expression, when they fit one.
    pub joint: Option<String>,
}

fn sum(terms: &[ScaleTerm], env: &ScaleEnv) -> Option<Complex64> {
    terms
        .iter()
        .map(|t| t.eval(env))
        .sum::<Result<Complex64, String>>()
        .ok()
}

fn real_part(z: Complex64) -> Option<f64> {
    (z.im.abs() <= 1e-12 * z.re.abs().max(1e-300)).then_some(z.re)
}

impl BranchSolution {
    /// Numeric width for this branch, `None` when inadmissible (complex,
    /// nonpositive, or not finite). `env.l` is ignored.
    pub fn width(&self, env: &ScaleEnv) -> Option<f64> {
        let (s, y) = self.power_of_width(env)?;
        let l = if y > 0.0 {
            y.powf(1.0 / s as f64)
        } else {
            return None;
        };
        (l.is_finite() && l > 0.0).then_some(l)
    }

    /// `|y|^(1/s)` for `L^s = y`: the width read with the absolute value
    /// the published tables put around the denominators. Defined whenever
    /// `y` is real and nonzero.
    pub fn modulus_width(&self, env: &ScaleEnv) -> Option<f64> {
        let (s, y) = self.power_of_width(env)?;
        let l = y.abs().powf(1.0 / s as f64);
        (l.is_finite() && l > 0.0).then_some(l)
    }

    /// `(s, y)` with `L^s = y` on this branch.
    fn power_of_width(&self, env: &ScaleEnv) -> Option<(u32, f64)> {
        let env = ScaleEnv {
            l: 1.0,
            ..env.clone()
        };
        Some(match &self.form {
            BranchForm::Ratio { s, numer, denom } => {
                let y = real_part(sum(numer, &env)? / sum(denom, &env)?)?;
                (*s, y)
            }
            BranchForm::Quadratic { s, root, a, b, c } => {
                let a = real_part(sum(a, &env)?)?;
                let b = real_part(sum(b, &env)?)?;
                let c = real_part(sum(c, &env)?)?;
                let disc = b * b - 4.0 * a * c;
                if disc < 0.0 || a == 0.0 {
                    return None;
                }
                // Cancellation-free form of the two roots.
                let q = -0.5 * (b + b.signum_or_one() * disc.sqrt());
                let (r1, r2) = (q / a, c / q);
                let (lo, hi) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
                let pick_hi = (*root > 0) == (a > 0.0);
                (*s, if pick_hi { hi } else { lo })
            }
            BranchForm::Implicit => return None,
        })
    }
}

trait SignumOrOne {
    fn signum_or_one(self) -> f64;
}

impl SignumOrOne for f64 {
    fn signum_or_one(self) -> f64 {
        if self < 0.0 {
            -1.0
        } else {
            1.0
        }
    }
}

fn strip_l(terms: &[&ScaleTerm]) -> Vec<ScaleTerm> {
    terms
        .iter()
        .map(|t| {
            let mut t = (*t).clone();
            t.l_power = ExponentExpr::zero();
            t
        })
        .collect()
}

fn negate(terms: &[ScaleTerm]) -> Vec<ScaleTerm> {
    terms
        .iter()
        .map(|t| {
            let mut t = t.clone();
            t.coeff = t.coeff.neg();
            t
        })
        .collect()
}

fn paren(terms: &[ScaleTerm]) -> String {
    let s = render_sum(terms);
    if terms.len() > 1 || s.starts_with('-') {
        format!("({s})")
    } else {
        s
    }
}

fn poly_mul(x: &[ScaleTerm], y: &[ScaleTerm]) -> Vec<ScaleTerm> {
    collect(
        x.iter()
            .flat_map(|p| y.iter().map(move |q| p.mul(q)))
            .collect(),
    )
}

fn scale_terms(terms: &[ScaleTerm], k: i128) -> Vec<ScaleTerm> {
    terms
        .iter()
        .map(|t| {
            let mut t = t.clone();
            t.coeff = t.coeff.scale(Rational::from_integer(k));
            t
        })
        .collect()
}

/// Merge like terms.
fn collect(terms: Vec<ScaleTerm>) -> Vec<ScaleTerm> {
    ScaleRelation::new(terms, Mode::Real).terms
}

fn is_unit(terms: &[ScaleTerm]) -> bool {
    terms.len() == 1 && render_sum(terms) == "1"
}

/// Polynomial structure in `y = L^s`: coefficients indexed by degree.
fn poly_in_l(r: &ScaleRelation) -> Option<(u32, Vec<Vec<ScaleTerm>>)> {
    let ls: Option<Vec<i64>> = r.terms.iter().map(|t| t.l_power.as_constant()).collect();
    let ls = ls?;
    let min = *ls.iter().min()?;
    let g = ls.iter().fold(0i64, |g, l| g.gcd(&(l - min)));
    if g == 0 {
        return None;
    }
    let max_deg = ls.iter().map(|l| (l - min) / g).max()? as usize;
    let mut coeffs: Vec<Vec<&ScaleTerm>> = vec![Vec::new(); max_deg + 1];
    for (t, l) in r.terms.iter().zip(&ls) {
        coeffs[((l - min) / g) as usize].push(t);
    }
    Some((g as u32, coeffs.iter().map(|c| strip_l(c)).collect()))
}

fn ratio_text(s: u32, numer: &[ScaleTerm], denom_text: &str) -> String {
    if is_unit(numer) {
        if s == 1 {
            format!("L = 1/{denom_text}")
        } else {
            format!("L = {denom_text}^(-1/{s})")
        }
    } else if s == 1 {
        format!("L = {}/{denom_text}", paren(numer))
    } else {
        format!("L = ({}/{denom_text})^(1/{s})", paren(numer))
    }
}

fn ratio_form(c0: &[ScaleTerm], c1: &[ScaleTerm]) -> (Vec<ScaleTerm>, Vec<ScaleTerm>) {
    let mut numer = negate(c0);
    let mut denom = c1.to_vec();
    if numer.iter().all(|t| t.coeff.rational.is_negative()) {
        numer = negate(&numer);
        denom = negate(&denom);
    }
    (numer, denom)
}

fn branch_for(signs: SignChoice, rel: &ScaleRelation) -> Vec<BranchSolution> {
    let implicit = || BranchSolution {
        kind: BranchKind::Implicit,
        signs,
        expression: format!("{rel}"),
        validity: "L > 0 solving the relation".into(),
        relation: rel.clone(),
        form: BranchForm::Implicit,
    };
    let Some((s, coeffs)) = poly_in_l(rel) else {
        return vec![implicit()];
    };
    match coeffs.len() {
        2 => {
            let (numer, denom) = ratio_form(&coeffs[0], &coeffs[1]);
            let expression = ratio_text(s, &numer, &paren(&denom));
            let validity = if is_unit(&numer) {
                format!("{} > 0", render_sum(&denom))
            } else {
                format!("{}/{} > 0", paren(&numer), paren(&denom))
            };
            vec![BranchSolution {
                kind: BranchKind::Explicit,
                signs,
                expression,
                validity,
                relation: rel.clone(),
                form: BranchForm::Ratio { s, numer, denom },
            }]
        }
        3 => {
            let (c, b, a) = (&coeffs[0], &coeffs[1], &coeffs[2]);
            let y = if s == 1 {
                "L".to_string()
            } else {
                format!("L^{s}")
            };
            let disc = {
                let mut t = poly_mul(b, b);
                t.extend(scale_terms(&poly_mul(a, c), -4));
                collect(t)
            };
            let disc_text = render_sum(&disc);
            let two_a = if a.len() == 1 {
                render_sum(&scale_terms(a, 2))
            } else {
                format!("2*{}", paren(a))
            };
            let two_a = if two_a.contains(['+', '-', ' ', '*', '/', '^']) {
                format!("({two_a})")
            } else {
                two_a
            };
            [1i8, -1]
                .iter()
                .map(|root| {
                    let lead = if b.is_empty() {
                        if *root > 0 {
                            String::new()
                        } else {
                            "-".to_string()
                        }
                    } else {
                        format!(
                            "{} {} ",
                            render_sum(&negate(b)),
                            if *root > 0 { "+" } else { "-" }
                        )
                    };
                    let expression = format!("{y} = ({lead}sqrt({disc_text}))/{two_a}");
                    BranchSolution {
                        kind: BranchKind::Explicit,
                        signs,
                        expression,
                        validity: format!("{disc_text} >= 0 and {y} > 0"),
                        relation: rel.clone(),
                        form: BranchForm::Quadratic {
                            s,
                            root: *root,
                            a: a.clone(),
                            b: b.clone(),
                            c: c.clone(),
                        },
                    }
                })
                .collect()
        }
        _ => vec![implicit()],
    }
}

/// `L` from a scale relation: explicit when the relation is linear or
/// quadratic in a power of `L`, implicit otherwise. One branch per distinct
/// sign assignment (and root).
pub fn solve_for_l(r: &ScaleRelation) -> Result<WidthSolution, OsaError> {
    let rel = r.normalize();
    let distinct_l = {
        let mut ls: Vec<&ExponentExpr> = rel.terms.iter().map(|t| &t.l_power).collect();
        ls.sort();
        ls.dedup();
        ls.len()
    };
    if !rel.has_l() || distinct_l < 2 {
        return Err(OsaError::DegenerateRelation(
            "the relation does not involve L".into(),
        ));
    }
    let mut seen: Vec<ScaleRelation> = Vec::new();
    let mut branches = Vec::new();
    for (signs, variant) in rel.sign_variants() {
        let variant = variant.normalize();
        if seen.contains(&variant) {
            continue;
        }
        seen.push(variant.clone());
        branches.extend(branch_for(signs, &variant));
    }
    let joint = joint_expression(&rel);
    Ok(WidthSolution {
        relation: rel,
        branches,
        joint,
    })
}

/// Single `|…|` expression covering both propagation directions of a
/// ratio solution, e.g. `L = |V ± 6*A|^(-1/2)`.
fn joint_expression(rel: &ScaleRelation) -> Option<String> {
    if !rel.has_tau() {
        return None;
    }
    let (s, coeffs) = poly_in_l(rel)?;
    if coeffs.len() != 2 {
        return None;
    }
    let (mut numer, mut denom) = ratio_form(&coeffs[0], &coeffs[1]);
    if numer.len() != 1 || numer[0].tau || denom.len() < 2 {
        return None;
    }
    numer[0].sigma = ExponentExpr::zero();
    if denom.iter().all(|t| t.sigma == 1) {
        for t in &mut denom {
            t.sigma = ExponentExpr::zero();
        }
    }
    if denom.iter().any(|t| !t.sigma.is_zero()) {
        return None;
    }
    if denom[0].tau {
        for t in &mut denom {
            t.tau = !t.tau;
        }
    }
    if !denom.iter().any(|t| t.tau) {
        return None;
    }
    if denom[0].coeff.rational.is_negative() {
        denom = negate(&denom);
    }
    let mut text = String::from("|");
    for (i, t) in denom.iter().enumerate() {
        let (neg, body) = t.render_parts();
        if i == 0 {
            if neg {
                text.push('-');
            }
        } else if t.tau {
            text.push_str(" ± ");
        } else {
            text.push_str(if neg { " - " } else { " + " });
        }
        text.push_str(&body.replace("τ*", ""));
    }
    text.push('|');
    if numer[0].coeff.rational.is_zero() {
        return None;
    }
    if numer[0].coeff.rational.is_negative() {
        numer[0].coeff = numer[0].coeff.neg();
    }
    Some(ratio_text(s, &numer, &text))
}
