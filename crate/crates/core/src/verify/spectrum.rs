//! Dyadic scale spectrum with the Gaussian-modulated wavelet
//! `Ψ(s) = π^{-1/4} exp(-is - s²/2)`.
//!
//! The coefficients are inner products against a redundant, non-orthogonal
//! family, so the energies are a diagnostic of which scale dominates. They
//! are not a decomposition of the profile's norm.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::{Grid, VerifyError};

/// Beyond this distance in `s` the Gaussian envelope is below 1e-17.
const CUTOFF: f64 = 9.0;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ScaleSpectrum {
    pub j_range: (i32, i32),
    pub energies: Vec<f64>,
    pub dominant_j: i32,
    pub dominance_ratio: f64,
}

impl ScaleSpectrum {
    pub fn energy(&self, j: i32) -> Option<f64> {
        usize::try_from(j - self.j_range.0)
            .ok()
            .and_then(|i| self.energies.get(i).copied())
    }
}

pub fn wavelet(s: f64) -> Complex64 {
    Complex64::from_polar(PI.powf(-0.25) * (-0.5 * s * s).exp(), -s)
}

fn energy(grid: &Grid, values: &[Complex64], j: i32, k_stride: f64) -> f64 {
    let a = 2f64.powi(j);
    let norm = a.sqrt() * grid.h;
    let trap = |i: usize| if i == 0 || i + 1 == grid.n { 0.5 } else { 1.0 };
    let m0 = ((a * grid.xmin - CUTOFF) / k_stride).floor() as i64;
    let m1 = ((a * grid.xmax + CUTOFF) / k_stride).ceil() as i64;
    let mut e = 0.0;
    for m in m0..=m1 {
        let k = m as f64 * k_stride;
        // Only samples with |a x - k| < CUTOFF contribute.
        let lo = (((k - CUTOFF) / a - grid.xmin) / grid.h).floor().max(0.0) as usize;
        let hi =
            ((((k + CUTOFF) / a - grid.xmin) / grid.h).ceil().max(0.0) as usize).min(grid.n - 1);
        let mut c = Complex64::new(0.0, 0.0);
        for i in lo..=hi {
            c += values[i] * wavelet(a * grid.x(i) - k).conj() * trap(i);
        }
        e += (c * norm).norm_sqr();
    }
    e
}

/// `E_j = Σ_k |C_{j,k}|²` for `j` in `j_range`, with
/// `C_{j,k} = 2^{j/2} ∫ u(s) conj Ψ(2^j s - k) ds` by the trapezoidal rule
/// and `k` on the lattice `k_stride·ℤ`.
///
/// Fails with `RangeTooNarrow` if the largest energy sits at an end of the
/// range, and with `FlatProfile` if every energy is zero.
pub fn scale_spectrum(
    grid: &Grid,
    values: &[Complex64],
    j_range: (i32, i32),
    k_stride: f64,
) -> Result<ScaleSpectrum, VerifyError> {
    if values.len() != grid.n {
        return Err(VerifyError::InvalidGrid(format!(
            "{} samples for {} grid points",
            values.len(),
            grid.n
        )));
    }
    if j_range.1 < j_range.0 || !(k_stride > 0.0) {
        return Err(VerifyError::InvalidGrid(format!(
            "bad scale range {j_range:?} or stride {k_stride}"
        )));
    }
    let energies: Vec<f64> = (j_range.0..=j_range.1)
        .map(|j| energy(grid, values, j, k_stride))
        .collect();
    let total: f64 = energies.iter().sum();
    if total == 0.0 {
        return Err(VerifyError::FlatProfile(0.0));
    }
    let (idx, top) =
        energies.iter().enumerate().fold(
            (0, f64::MIN),
            |acc, (i, &e)| if e > acc.1 { (i, e) } else { acc },
        );
    let dominant_j = j_range.0 + idx as i32;
    if dominant_j == j_range.0 || dominant_j == j_range.1 {
        return Err(VerifyError::RangeTooNarrow(dominant_j));
    }
    Ok(ScaleSpectrum {
        j_range,
        energies,
        dominant_j,
        dominance_ratio: top / total,
    })
}
