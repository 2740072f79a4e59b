use serde::Serialize;

use crate::catalog::SolutionSpec;

use super::{measure_features, Grid, VerifyError};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ScalingFit {
    pub family_id: String,
    /// Amplitudes as measured on the profiles.
    pub amplitudes: Vec<f64>,
    pub widths: Vec<f64>,
    pub slope: f64,
    pub slope_std_err: f64,
    pub predicted_exponent: Option<f64>,
}

impl ScalingFit {
    /// Deviation of the slope from the prediction, if there is one.
    pub fn deviation(&self) -> Option<f64> {
        self.predicted_exponent.map(|p| self.slope - p)
    }
}

/// `n` values from `a` to `b`, equally spaced in `ln`.
pub fn log_spaced(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    let (la, lb) = (a.ln(), b.ln());
    (0..n)
        .map(|i| (la + (lb - la) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Ordinary least squares `y = slope·x + intercept`; returns
/// `(slope, intercept, standard error of the slope)`.
pub fn least_squares(points: &[(f64, f64)]) -> (f64, f64, f64) {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let stderr = if points.len() > 2 {
        let sse: f64 = points
            .iter()
            .map(|p| (p.1 - intercept - slope * p.0).powi(2))
            .sum();
        (sse / (n - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    (slope, intercept, stderr)
}

/// Measure `W` against `A` across `amplitudes` and fit the exponent of
/// `W ∝ A^q`. Each profile is sampled with `n` points on its own domain.
pub fn fit_scaling(
    family_id: &str,
    family: &dyn Fn(f64) -> SolutionSpec,
    amplitudes: &[f64],
    n: usize,
    predicted_exponent: Option<f64>,
) -> Result<ScalingFit, VerifyError> {
    let increasing = amplitudes.windows(2).all(|w| w[1] > w[0]);
    let spans_decade = match (amplitudes.first(), amplitudes.last()) {
        (Some(a), Some(b)) => *a > 0.0 && b / a >= 10.0 * (1.0 - 1e-12),
        _ => false,
    };
    if amplitudes.len() < 5 || !increasing || !spans_decade {
        return Err(VerifyError::TooFewAmplitudes);
    }
    let mut measured = Vec::with_capacity(amplitudes.len());
    let mut widths = Vec::with_capacity(amplitudes.len());
    for &a in amplitudes {
        let spec = family(a);
        let grid = Grid::new(spec.domain.0, spec.domain.1, n)?;
        let f = measure_features(&spec, &grid)?;
        measured.push(f.amplitude);
        widths.push(f.width);
    }
    let pts: Vec<(f64, f64)> = measured
        .iter()
        .zip(&widths)
        .map(|(a, w)| (a.ln(), w.ln()))
        .collect();
    let (slope, _, slope_std_err) = least_squares(&pts);
    Ok(ScalingFit {
        family_id: family_id.into(),
        amplitudes: measured,
        widths,
        slope,
        slope_std_err,
        predicted_exponent,
    })
}
