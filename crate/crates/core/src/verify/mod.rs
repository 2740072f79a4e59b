//! Numerical ground truth: finite-difference residuals of exact solutions,
//! amplitude/width measurement, scaling fits, and the wavelet scale
//! spectrum.

mod fd;
mod features;
mod residual;
mod scaling;
mod spectrum;

use serde::Serialize;
use thiserror::Error;

pub use fd::{fornberg, half_width, Stencil};
pub use features::{measure_features, Features};
pub use residual::{
    residual, residual_at_spacing, residual_report, ResidualReport, RESIDUAL_TOLERANCE,
    SMOOTH_TOLERANCE,
};
pub use scaling::{fit_scaling, least_squares, log_spaced, ScalingFit};
pub use spectrum::{scale_spectrum, wavelet, ScaleSpectrum};

pub const MIN_POINTS: usize = 257;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("grid too coarse: residual {residual:.3e} above tolerance {tolerance:.1e}")]
    GridTooCoarse {
        residual: f64,
        tolerance: f64,
        report: Box<ResidualReport>,
    },
    #[error("flat profile: amplitude {0:.3e}")]
    FlatProfile(f64),
    #[error("scale range too narrow: dominant scale {0} on the boundary")]
    RangeTooNarrow(i32),
    #[error("solution `{0}` has no evaluator")]
    NoEvaluator(String),
    #[error("{0}")]
    Evaluation(String),
    #[error("scaling fit needs at least 5 amplitudes spanning a decade")]
    TooFewAmplitudes,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Grid {
    pub xmin: f64,
    pub xmax: f64,
    pub n: usize,
    pub h: f64,
}

impl Grid {
    pub fn new(xmin: f64, xmax: f64, n: usize) -> Result<Grid, VerifyError> {
        if n < MIN_POINTS {
            return Err(VerifyError::InvalidGrid(format!("n = {n} < {MIN_POINTS}")));
        }
        if !(xmin.is_finite() && xmax.is_finite() && xmax > xmin) {
            return Err(VerifyError::InvalidGrid(format!(
                "bad interval [{xmin}, {xmax}]"
            )));
        }
        Ok(Grid {
            xmin,
            xmax,
            n,
            h: (xmax - xmin) / (n - 1) as f64,
        })
    }

    pub fn x(&self, i: usize) -> f64 {
        self.xmin + i as f64 * self.h
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(|i| self.x(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_spacing() {
        let g = Grid::new(-1.0, 1.0, 257).unwrap();
        assert_eq!(g.h, 2.0 / 256.0);
        assert_eq!(g.x(256), 1.0);
        assert!(Grid::new(0.0, 1.0, 256).is_err());
        assert!(Grid::new(1.0, 1.0, 300).is_err());
    }
}
