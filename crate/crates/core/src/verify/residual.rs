use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::catalog::SolutionSpec;
use crate::exprcore::{evaluate_terms, Bindings, Expr};

use super::fd::{half_width, Stencil};
use super::{Grid, VerifyError};

/// Acceptance level for profiles with edges (compactons).
pub const RESIDUAL_TOLERANCE: f64 = 1e-6;
/// Acceptance level for smooth profiles.
pub const SMOOTH_TOLERANCE: f64 = 1e-8;

const MAX_STEPS: i32 = 24;
/// Ratio between successive ladder spacings.
const LADDER_RATIO: f64 = std::f64::consts::SQRT_2;
/// The ladder stops once the residual is this far above the floor.
const LADDER_TOP: f64 = 1e-4;
/// Ladder points within this factor of the smallest residual are treated
/// as rounding noise when fitting the convergence slope.
const FLOOR_FACTOR: f64 = 100.0;
/// Residuals above this are outside the asymptotic regime.
const CEILING: f64 = 1e-2;
/// Smallest band half-width, in stencil spacings.
const MIN_BAND: f64 = 5.0;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ResidualReport {
    pub solution_id: String,
    pub grid: Grid,
    pub relative_sup_residual: f64,
    pub excluded_bands: Vec<(f64, f64)>,
    /// Slope of log residual against log spacing, before the floor.
    pub convergence_slope: Option<f64>,
    /// `(stencil spacing, relative residual)` for the refinement ladder.
    pub ladder: Vec<(f64, f64)>,
    pub tolerance: f64,
}

impl ResidualReport {
    pub fn passed(&self) -> bool {
        self.relative_sup_residual <= self.tolerance
    }
}

struct Orders {
    x: u32,
    time: Vec<(u32, u32)>,
}

fn orders(eq: &Expr) -> Orders {
    let x = eq
        .monomials
        .iter()
        .map(|m| m.max_deriv_order())
        .max()
        .unwrap_or(0);
    let mut time: Vec<(u32, u32)> = eq
        .time_derivs
        .iter()
        .map(|t| (t.t_order, t.x_order))
        .collect();
    time.sort();
    time.dedup();
    Orders { x, time }
}

fn bands(sol: &SolutionSpec, o: &Orders, delta: f64) -> Vec<(f64, f64)> {
    // Reach of each stencil in `s = x - Vt`: spatial stencils at `t = 0`,
    // and nested stencils whose time offsets move the profile by `V·t`.
    let reach = o
        .time
        .iter()
        .map(|&(j, r)| half_width(r) as f64 + half_width(j) as f64 * sol.velocity.abs())
        .fold(half_width(o.x) as f64, f64::max);
    let r = reach.max(MIN_BAND) * delta;
    sol.edges.iter().map(|e| (e - r, e + r)).collect()
}

/// Residual magnitude and largest term magnitude at each sampled point.
struct Sampled {
    excluded: Vec<(f64, f64)>,
    points: Vec<(f64, f64, f64)>,
}

impl Sampled {
    fn relative(&self, keep: &dyn Fn(f64) -> bool) -> (f64, f64) {
        let (sup, scale) = self
            .points
            .iter()
            .filter(|p| keep(p.0))
            .fold((0.0f64, 0.0f64), |(s, m), p| (s.max(p.1), m.max(p.2)));
        (if scale == 0.0 { 0.0 } else { sup / scale }, scale)
    }
}

fn outside(bands: &[(f64, f64)], x: f64) -> bool {
    !bands.iter().any(|(a, b)| x >= *a && x <= *b)
}

/// Relative sup residual with derivative stencils of spacing `delta`,
/// sampled at the grid points outside the edge bands.
pub fn residual_at_spacing(
    eq: &Expr,
    sol: &SolutionSpec,
    grid: &Grid,
    delta: f64,
) -> Result<(f64, Vec<(f64, f64)>), VerifyError> {
    let s = sample(eq, sol, grid, delta)?;
    Ok((s.relative(&|_| true).0, s.excluded))
}

fn sample(eq: &Expr, sol: &SolutionSpec, grid: &Grid, delta: f64) -> Result<Sampled, VerifyError> {
    let f = sol
        .evaluator
        .as_ref()
        .ok_or_else(|| VerifyError::NoEvaluator(sol.id.clone()))?;
    let o = orders(eq);
    let excluded = bands(sol, &o, delta);
    let xs: Vec<Stencil> = (0..=o.x).map(Stencil::central).collect();
    let time: Vec<((u32, u32), Stencil, Stencil)> = o
        .time
        .iter()
        .map(|&(j, r)| ((j, r), Stencil::central(j), Stencil::central(r)))
        .collect();
    let params: BTreeMap<String, f64> = sol.parameters.clone();

    let mut points = Vec::with_capacity(grid.n);
    for x in grid.points().filter(|&x| outside(&excluded, x)) {
        let field: Vec<Complex64> = xs
            .iter()
            .map(|s| s.apply(delta, x, |y| f(y, 0.0)))
            .collect();
        let mut b = Bindings {
            field,
            params: params.clone(),
            ..Default::default()
        };
        for (key, st, sx) in &time {
            let v = st.apply(delta, 0.0, |t| sx.apply(delta, x, |y| f(y, t)));
            b.time.insert(*key, v);
        }
        let terms = evaluate_terms(eq, &b).map_err(|e| VerifyError::Evaluation(e.to_string()))?;
        let total: Complex64 = terms.iter().sum();
        let largest = terms.iter().map(|t| t.norm()).fold(0.0, f64::max);
        if !total.norm().is_finite() || !largest.is_finite() {
            return Err(VerifyError::Evaluation(format!(
                "non-finite residual for `{}` at x = {x}",
                sol.id
            )));
        }
        points.push((x, total.norm(), largest));
    }
    Ok(Sampled { excluded, points })
}

/// Residual on `grid`, with a ladder of stencil spacings `h, √2h, 2h, …`
/// for the observed order. The ladder climbs until the discretization
/// error clearly dominates rounding, and all its rungs are compared on the
/// points the widest rung still samples. No tolerance is applied.
pub fn residual_report(
    eq: &Expr,
    sol: &SolutionSpec,
    grid: &Grid,
) -> Result<ResidualReport, VerifyError> {
    let base = sample(eq, sol, grid, grid.h)?;
    let rel = base.relative(&|_| true).0;
    let mut rungs = vec![(grid.h, base)];
    for k in 1..MAX_STEPS {
        let d = grid.h * LADDER_RATIO.powi(k);
        let s = sample(eq, sol, grid, d)?;
        let (r, scale) = s.relative(&|_| true);
        if scale == 0.0 {
            break;
        }
        rungs.push((d, s));
        if r >= LADDER_TOP {
            break;
        }
    }
    let widest = rungs
        .last()
        .map(|r| r.1.excluded.clone())
        .unwrap_or_default();
    let keep = |x: f64| outside(&widest, x);
    let ladder: Vec<(f64, f64)> = rungs
        .iter()
        .map(|(d, s)| (*d, s.relative(&keep).0))
        .collect();
    let excluded = rungs.swap_remove(0).1.excluded;

    // Fit the rising branch beyond the rounding minimum.
    let (lowest, floor) = ladder.iter().enumerate().filter(|(_, l)| l.1 > 0.0).fold(
        (0, f64::INFINITY),
        |acc, (i, l)| if l.1 < acc.1 { (i, l.1) } else { acc },
    );
    let usable: Vec<(f64, f64)> = ladder[lowest..]
        .iter()
        .filter(|(_, r)| *r > FLOOR_FACTOR * floor && *r < CEILING)
        .map(|(d, r)| (d.ln(), r.ln()))
        .collect();
    let convergence_slope = (usable.len() >= 2).then(|| super::least_squares(&usable).0);
    Ok(ResidualReport {
        solution_id: sol.id.clone(),
        grid: *grid,
        relative_sup_residual: rel,
        excluded_bands: excluded,
        convergence_slope,
        ladder,
        tolerance: sol.tolerance(),
    })
}

/// As [`residual_report`], failing with `GridTooCoarse` above the
/// solution's tolerance.
pub fn residual(eq: &Expr, sol: &SolutionSpec, grid: &Grid) -> Result<ResidualReport, VerifyError> {
    let report = residual_report(eq, sol, grid)?;
    if report.passed() {
        Ok(report)
    } else {
        Err(VerifyError::GridTooCoarse {
            residual: report.relative_sup_residual,
            tolerance: report.tolerance,
            report: Box::new(report),
        })
    }
}
