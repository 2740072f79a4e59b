use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_complex::Complex64;
use osa_core::catalog::{build_catalog, CatalogEntry};
use osa_core::exprcore::{evaluate, evaluate_terms, Bindings, FuncName};
use osa_core::osa::{
    apply_ansatz, scale_substitute, traveling_reduce, Ansatz, BranchForm, BranchKind,
    BranchSolution, Mode, ScaleEnv, ScaleRelation,
};
use osa_core::pdeparse::{parse_equation, VELOCITY};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn catalog() -> &'static [CatalogEntry] {
    static CAT: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CAT.get_or_init(build_catalog)
}

pub fn entry(id: &str) -> &'static CatalogEntry {
    catalog().iter().find(|e| e.id == id).unwrap()
}

/// Names that occur inside exponents; these get integer values.
pub fn exponent_params(r: &ScaleRelation) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for t in &r.terms {
        out.extend(t.a_power.params().map(String::from));
        out.extend(t.l_power.params().map(String::from));
        for p in t.coeff.symbols.params.values() {
            out.extend(p.params().map(String::from));
        }
    }
    out
}

fn real_relation(e: &CatalogEntry) -> ScaleRelation {
    let expr = parse_equation(&e.equation_src, &e.param_refs()).unwrap();
    scale_substitute(&expr, Mode::Real).unwrap().remove(0)
}

/// True when no exponent of the equation is symbolic.
pub fn has_concrete_exponents(e: &CatalogEntry) -> bool {
    exponent_params(&real_relation(e)).is_empty()
}

const FUNCS: [FuncName; 3] = [FuncName::F, FuncName::G, FuncName::H];

fn sign(rng: &mut ChaCha8Rng) -> f64 {
    if rng.gen_bool(0.5) {
        1.0
    } else {
        -1.0
    }
}

pub fn random_env(
    rng: &mut ChaCha8Rng,
    params: &[String],
    exponents: &BTreeSet<String>,
) -> ScaleEnv {
    let mut env = ScaleEnv::new(
        rng.gen_range(0.2..4.0),
        rng.gen_range(0.2..4.0),
        rng.gen_range(-5.0..5.0),
    );
    env.sigma = sign(rng);
    env.tau = sign(rng);
    for p in params.iter().chain(exponents) {
        let v = if exponents.contains(p) {
            rng.gen_range(2..=5) as f64
        } else {
            rng.gen_range(0.3..3.0) * sign(rng)
        };
        env.params.insert(p.clone(), v);
    }
    for name in FUNCS {
        for r in 0..6 {
            env.funcs.insert((name, r), rng.gen_range(-2.0..2.0));
        }
    }
    env
}

fn rel_err(value: Complex64, scale: f64) -> f64 {
    value.norm() / scale.max(1e-300)
}

/// `u = A exp(σx/L)` at `x = 0` fed through the evaluator, against the
/// one-scale relation at the same point. Returns the relative gap.
pub fn single_mode_gap(e: &CatalogEntry, rng: &mut ChaCha8Rng) -> f64 {
    let expr = parse_equation(&e.equation_src, &e.param_refs()).unwrap();
    let reduced = traveling_reduce(&expr).unwrap();
    let rel = scale_substitute(&expr, Mode::Real).unwrap().remove(0);
    let env = random_env(rng, &e.params, &exponent_params(&rel));
    let slope = env.sigma / env.l;
    let field: Vec<f64> = (0..=reduced.max_x_order())
        .map(|k| env.a * slope.powi(k as i32))
        .collect();
    // τ is the direction sign the engine attaches to odd powers of V.
    let mut b = Bindings::real_field(&field).param(VELOCITY, env.tau * env.v);
    b.params.extend(env.params.clone());
    for (k, v) in &env.funcs {
        b.funcs.insert(*k, Complex64::new(*v, 0.0));
    }
    let direct = evaluate(&reduced, &b).unwrap();
    let scale = evaluate_terms(&reduced, &b)
        .unwrap()
        .iter()
        .map(|t| t.norm())
        .fold(0.0, f64::max);
    rel_err(direct - rel.eval(&env).unwrap(), scale)
}

/// The branch's root in `L`: the admissible width, or for odd powers of `L`
/// the real root even when it is negative.
fn algebraic_root(br: &BranchSolution, env: &ScaleEnv) -> Option<f64> {
    if let Some(l) = br.width(env) {
        return Some(l);
    }
    let s = match &br.form {
        BranchForm::Ratio { s, .. } | BranchForm::Quadratic { s, .. } => *s,
        BranchForm::Implicit => return None,
    };
    let m = br.modulus_width(env)?;
    (s % 2 == 1).then_some(-m)
}

/// Every explicit branch of every catalog entry, substituted back at
/// `points` random admissible points. Returns the number of branches.
pub fn back_substitute_branches(
    rng: &mut ChaCha8Rng,
    points: usize,
    tol: f64,
) -> Result<usize, String> {
    let mut branches = 0;
    for e in catalog() {
        let exps = exponent_params(e.analysis.primary());
        for ra in &e.analysis.relations {
            let Some(sol) = &ra.solution else { continue };
            for br in sol
                .branches
                .iter()
                .filter(|b| b.kind == BranchKind::Explicit)
            {
                let mut hits = 0;
                for _ in 0..400 * points {
                    if hits == points {
                        break;
                    }
                    let mut env = random_env(rng, &e.params, &exps);
                    env.sigma = br.signs.sigma.map_or(env.sigma, f64::from);
                    env.tau = br.signs.tau.map_or(env.tau, f64::from);
                    let Some(l) = algebraic_root(br, &env) else {
                        continue;
                    };
                    env.l = l;
                    let scale = br.relation.eval_scale(&env).unwrap();
                    let err = rel_err(br.relation.eval(&env).unwrap(), scale);
                    if err >= tol {
                        return Err(format!(
                            "{} {}: residual {err:e} at L = {l}",
                            e.id, br.expression
                        ));
                    }
                    hits += 1;
                }
                if hits < points {
                    return Err(format!(
                        "{} {}: only {hits} admissible points",
                        e.id, br.expression
                    ));
                }
                branches += 1;
            }
        }
    }
    Ok(branches)
}

/// Smallest root of the relation in `L` on `[1e-3, 1e3]`, by a log scan
/// and bisection.
pub fn first_root(r: &ScaleRelation, env: &ScaleEnv) -> Option<f64> {
    let f = |l: f64| r.eval(&ScaleEnv { l, ..env.clone() }).ok().map(|z| z.re);
    let mut lo = 1e-3f64;
    let mut flo = f(lo)?;
    for i in 1..=600 {
        let hi = 1e-3 * 10f64.powf(i as f64 / 100.0);
        let fhi = f(hi)?;
        if flo == 0.0 {
            return Some(lo);
        }
        if flo.signum() != fhi.signum() {
            let (mut a, mut b) = (lo, hi);
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                if f(m)?.signum() == flo.signum() {
                    a = m;
                } else {
                    b = m;
                }
            }
            return Some(0.5 * (a + b));
        }
        (lo, flo) = (hi, fhi);
    }
    None
}

/// Solves the entry's relation under its ansatz for `L` at `A = 1, 2, 4`
/// and checks the log-ratios against the predicted exponent. Returns the
/// number of parameter draws that had a root.
pub fn balance_against_roots(
    id: &str,
    exponents: &[(&str, f64)],
    rng: &mut ChaCha8Rng,
) -> Result<usize, String> {
    let e = entry(id);
    let s = e.scaling.as_ref().ok_or(format!("{id} has no scaling"))?;
    let q = e
        .predicted_width_exponent(&exponents.iter().map(|(k, v)| (k.to_string(), *v)).collect())
        .ok_or(format!("{id}: no prediction for {exponents:?}"))?;
    let r = apply_ansatz(e.analysis.primary(), &Ansatz::parse(&s.ansatz).unwrap()).normalize();
    let mut hits = 0;
    for _ in 0..60 {
        let mut env = random_env(rng, &e.params, &BTreeSet::new());
        for (k, v) in exponents {
            env.params.insert(k.to_string(), *v);
        }
        for name in ["alpha", "V0"] {
            env.params.insert(name.into(), rng.gen_range(-8.0..8.0));
        }
        let widths: Option<Vec<f64>> = [1.0, 2.0, 4.0]
            .iter()
            .map(|a| {
                first_root(
                    &r,
                    &ScaleEnv {
                        a: *a,
                        ..env.clone()
                    },
                )
            })
            .collect();
        let Some(w) = widths else { continue };
        for (i, a) in [(1, 2.0f64), (2, 4.0)] {
            let slope = (w[i] / w[0]).ln() / a.ln();
            if (slope - q).abs() >= 1e-9 {
                return Err(format!("{id} {exponents:?}: slope {slope} vs {q}"));
            }
        }
        hits += 1;
    }
    Ok(hits)
}

/// Balance cases with exponents chosen to satisfy each entry's conditions.
pub fn balance_cases() -> Vec<(&'static str, Vec<(&'static str, f64)>)> {
    let mut cases = vec![
        ("kdv6", vec![]),
        ("mkdv", vec![]),
        ("k22", vec![]),
        ("burgers", vec![]),
        ("nls3", vec![]),
        ("nlburgers", vec![("m", 3.0), ("k", 2.0)]),
        ("diss_disp", vec![("m", 2.0), ("k", 3.0), ("n", 4.0)]),
        ("diss_disp", vec![("m", 3.0), ("k", 3.0), ("n", 3.0)]),
        (
            "gkdv5",
            vec![("m", 3.0), ("p", 3.0), ("n", 1.0), ("l", 2.0)],
        ),
    ];
    for n in 2..=6 {
        cases.push(("knn", vec![("n", n as f64)]));
    }
    cases
}
