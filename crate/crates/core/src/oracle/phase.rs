//! Phase shifts read off the tail of a Numerov solution.
//!
//! The tail is fitted by least squares to `a Re w(ρ) + b Im w(ρ)` with
//! `w = e^{i(ρ + α ln 2ρ)} S(ρ)` the outgoing Coulomb form, so
//! `R ∝ sin(ρ + α ln 2ρ + φ)` up to `O(1/ρ)` corrections carried by `S`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::numerov::{numerov_integrate, RadialGrid};
use crate::error::{Error, Result};
use crate::model::{epsilon_of, Channel, PotentialParams};
use crate::scattering::outgoing_coulomb_series;
use crate::specfun::principal_angle;

/// Fit window as fractions of `ε r_max`.
pub const WINDOW: (f64, f64) = (0.6, 1.0);
const MAX_FIT_POINTS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseFit {
    /// Comparable to `arg Γ(λ + 1/2 − i a₂/ε)`.
    pub delta_prime: f64,
    /// `δ′ + (π/2)(A + ℓ + 1/2)`
    pub delta: f64,
    /// Phase of the tail sinusoid.
    pub phi: f64,
    pub amplitude: f64,
    /// RMS misfit divided by the amplitude.
    pub residual: f64,
    pub grid: RadialGrid,
}

/// One fit; `δ′` is only known mod 2π.
pub fn fit_tail(p: &PotentialParams, l: u32, e: f64, grid: &RadialGrid) -> Result<PhaseFit> {
    let eps = epsilon_of(p, e)?;
    let ch = Channel::new(p, l)?;
    if eps * grid.r_max < 60.0 {
        return Err(Error::Domain(format!(
            "phase fit needs ε r_max >= 60, got {}",
            eps * grid.r_max
        )));
    }
    let sol = numerov_integrate(p, l, e, grid)?;
    let alpha = p.a2 / eps;
    let h = grid.step();
    let i0 = ((WINDOW.0 * grid.r_max - grid.r_min) / h).ceil() as usize;
    let count = grid.n_points - i0;
    let stride = count.div_ceil(MAX_FIT_POINTS).max(1);

    let basis = |r: f64| -> Complex64 {
        let rho = eps * r;
        Complex64::from_polar(1.0, rho + alpha * (2.0 * rho).ln())
            * outgoing_coulomb_series(ch.lambda, alpha, rho)
    };
    // normal equations for R ≈ a Re w + b Im w
    let (mut s11, mut s12, mut s22, mut t1, mut t2) = (0.0, 0.0, 0.0, 0.0, 0.0);
    let mut samples = Vec::with_capacity(count / stride + 1);
    for i in (i0..grid.n_points).step_by(stride) {
        let w = basis(grid.r(i));
        let y = sol.values[i];
        s11 += w.re * w.re;
        s12 += w.re * w.im;
        s22 += w.im * w.im;
        t1 += w.re * y;
        t2 += w.im * y;
        samples.push((w, y));
    }
    let det = s11 * s22 - s12 * s12;
    let a = (t1 * s22 - t2 * s12) / det;
    let b = (t2 * s11 - t1 * s12) / det;
    let amplitude = a.hypot(b);
    let misfit = samples
        .iter()
        .map(|(w, y)| (y - a * w.re - b * w.im).powi(2))
        .sum::<f64>()
        / samples.len() as f64;
    let residual = misfit.sqrt() / amplitude;
    if !(residual <= 1e-3) {
        return Err(Error::FitFailure { residual, limit: 1e-3 });
    }
    // Im(e^{iφ} w) = sin φ Re w + cos φ Im w
    let phi = a.atan2(b);
    let delta_prime = principal_angle(phi - 0.5 * PI * (ch.a_root + 0.5));
    Ok(PhaseFit {
        delta_prime,
        delta: delta_prime + 0.5 * PI * (ch.a_root + f64::from(l) + 0.5),
        phi,
        amplitude,
        residual,
        grid: *grid,
    })
}

/// Fitted phase shift with the 2π ambiguity removed by following `δ′`
/// continuously from `a₂ = 0`, where `Γ` has a real positive argument.
pub fn extract_phase(p: &PotentialParams, l: u32, e: f64, grid: &RadialGrid) -> Result<PhaseFit> {
    let eps = epsilon_of(p, e)?;
    let alpha = p.a2 / eps;
    let steps = (2.0 * alpha.abs()).ceil() as u32 + 1;
    let mut previous = 0.0;
    let mut fit = None;
    for k in 1..=steps {
        let pk = PotentialParams::new(p.a1, p.a2 * f64::from(k) / f64::from(steps), p.a3)?;
        let mut f = fit_tail(&pk, l, e, grid)?;
        let turns = ((previous - f.delta_prime) / (2.0 * PI)).round();
        f.delta_prime += 2.0 * PI * turns;
        f.delta += 2.0 * PI * turns;
        previous = f.delta_prime;
        fit = Some(f);
    }
    Ok(fit.expect("at least one continuation step"))
}
