use serde::Serialize;

use crate::catalog::{SolutionKind, SolutionSpec};

use super::{Grid, VerifyError};

/// Amplitude and width of a profile at `t = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Features {
    pub amplitude: f64,
    pub width: f64,
}

const FLAT: f64 = 1e-12;

/// Refine a sign change of `g - level` on `[a, b]` by bisection.
fn crossing(g: &dyn Fn(f64) -> f64, level: f64, mut a: f64, mut b: f64) -> f64 {
    let fa = g(a) - level;
    for _ in 0..80 {
        let m = 0.5 * (a + b);
        if (g(m) - level).signum() == fa.signum() {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Maximum of `g` over the grid, refined by golden-section search around
/// the best sample.
fn peak(g: &dyn Fn(f64) -> f64, grid: &Grid) -> f64 {
    let (i, _) =
        grid.points().map(g).enumerate().fold(
            (0, f64::MIN),
            |acc, (i, y)| if y > acc.1 { (i, y) } else { acc },
        );
    let (mut a, mut b) = (grid.x(i.saturating_sub(1)), grid.x((i + 1).min(grid.n - 1)));
    let r = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..60 {
        let (c, d) = (b - r * (b - a), a + r * (b - a));
        if g(c) > g(d) {
            b = d;
        } else {
            a = c;
        }
    }
    g(0.5 * (a + b)).max(g(grid.x(i)))
}

/// Outermost crossings of `level` on either side of the maximum of `g`.
fn span(g: &dyn Fn(f64) -> f64, level: f64, grid: &Grid) -> f64 {
    let xs: Vec<f64> = grid.points().collect();
    let ys: Vec<f64> = xs.iter().map(|&x| g(x)).collect();
    let first = ys.iter().position(|&y| y >= level).unwrap_or(0);
    let last = ys.iter().rposition(|&y| y >= level).unwrap_or(xs.len() - 1);
    let left = if first == 0 {
        xs[0]
    } else {
        crossing(g, level, xs[first - 1], xs[first])
    };
    let right = if last + 1 == xs.len() {
        xs[last]
    } else {
        crossing(g, level, xs[last], xs[last + 1])
    };
    right - left
}

/// Measure amplitude and width as appropriate for the profile kind:
/// full width at half maximum for humps and dips, the 25-75% rise for
/// kinks. Humps and dips are measured against the far field.
pub fn measure_features(spec: &SolutionSpec, grid: &Grid) -> Result<Features, VerifyError> {
    let f = spec
        .evaluator
        .as_ref()
        .ok_or_else(|| VerifyError::NoEvaluator(spec.id.clone()))?;
    let m = |x: f64| f(x, 0.0).norm();
    let (left, right) = (m(grid.xmin), m(grid.xmax));
    match spec.kind {
        SolutionKind::Kink => {
            let jump = right - left;
            if jump.abs() < FLAT {
                return Err(VerifyError::FlatProfile(jump.abs()));
            }
            let g = move |x: f64| (m(x) - left) / jump;
            let lo = span(&g, 0.25, grid);
            let hi = span(&g, 0.75, grid);
            Ok(Features {
                amplitude: jump.abs() / 2.0,
                width: (lo - hi).abs(),
            })
        }
        SolutionKind::Dark => {
            let bg = left.max(right);
            let g = move |x: f64| bg - m(x);
            let depth = peak(&g, grid);
            if depth < FLAT {
                return Err(VerifyError::FlatProfile(depth));
            }
            Ok(Features {
                amplitude: depth,
                width: span(&g, depth / 2.0, grid),
            })
        }
        SolutionKind::Bright | SolutionKind::Compacton | SolutionKind::PedestalCompacton => {
            let far = 0.5 * (left + right);
            let g = move |x: f64| (m(x) - far).abs();
            let top = peak(&g, grid);
            if top < FLAT {
                return Err(VerifyError::FlatProfile(top));
            }
            Ok(Features {
                amplitude: top,
                width: span(&g, top / 2.0, grid),
            })
        }
    }
}
