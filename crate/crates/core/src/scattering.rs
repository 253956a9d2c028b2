//! Closed-form scattering observables of the Mie-type potential.
//!
//! With `w = −A + 1/2 − i a₂/ε` (so `w = λ + 1/2 − i a₂/ε` for the regular
//! root) the phase shift is
//!
//! ```text
//! δ = arg Γ(w) + (π/2)(A + ℓ + 1/2)
//! ```
//!
//! and the regular radial solution behaves at large `r` like
//! `2 sin(εr + (a₂/ε) ln 2εr + δ − ℓπ/2)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{epsilon_of, Channel, PotentialParams, RootChoice};
use crate::specfun::{hyp1f1, legendre_table, log_gamma, principal_angle};

/// `e^{πa₂/2ε}` beyond `e^{700}` is carried as mantissa and decimal exponent.
pub const OVERFLOW_LN: f64 = 700.0;

/// A positive magnitude that may not fit in an `f64`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Magnitude {
    Plain(f64),
    /// `mantissa · 10^exponent` with `1 <= mantissa < 10`.
    Scaled { mantissa: f64, exponent: i32 },
}

impl Magnitude {
    pub fn from_ln(ln: f64, scaled: bool) -> Magnitude {
        if !scaled {
            return Magnitude::Plain(ln.exp());
        }
        let log10 = ln / std::f64::consts::LN_10;
        let exponent = log10.floor();
        Magnitude::Scaled {
            mantissa: 10f64.powf(log10 - exponent),
            exponent: exponent as i32,
        }
    }

    pub fn ln(&self) -> f64 {
        match *self {
            Magnitude::Plain(v) => v.ln(),
            Magnitude::Scaled { mantissa, exponent } => {
                mantissa.ln() + f64::from(exponent) * std::f64::consts::LN_10
            }
        }
    }

    /// The value as a float, if representable.
    pub fn to_f64(&self) -> Option<f64> {
        match *self {
            Magnitude::Plain(v) => Some(v),
            Magnitude::Scaled { .. } => {
                let v = self.ln().exp();
                v.is_finite().then_some(v)
            }
        }
    }
}

/// Phase shift and normalization of one partial wave at one energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatteringSolution {
    pub channel: Channel,
    pub energy: f64,
    pub epsilon: f64,
    /// `a₂/ε`
    pub coulomb_ratio: f64,
    pub normalization: Magnitude,
    /// `arg Γ(w)`, continuous in the parameters (not reduced mod 2π).
    pub delta_prime: f64,
    /// `δ′ + (π/2)(A + ℓ + 1/2)`, continuous.
    pub delta: f64,
    pub delta_prime_principal: f64,
    pub delta_principal: f64,
    /// `ln |Γ(w)|`
    pub ln_abs_gamma: f64,
}

impl ScatteringSolution {
    /// The argument `w = −A + 1/2 − i a₂/ε` of the gamma function.
    pub fn gamma_argument(&self) -> Complex64 {
        Complex64::new(0.5 - self.channel.a_root, -self.coulomb_ratio)
    }

    /// Phase `φ` of the large-r sinusoid `sin(εr + (a₂/ε) ln 2εr + φ)`.
    pub fn asymptotic_phase(&self) -> f64 {
        self.delta_prime + 0.5 * PI * (self.channel.a_root + 0.5)
    }

    /// `e^{2iδ}`
    pub fn s_matrix(&self) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * self.delta)
    }
}

/// Phase shift for partial wave `l` at energy `e`.
pub fn phase_shift(p: &PotentialParams, l: u32, e: f64) -> Result<ScatteringSolution> {
    phase_shift_in_channel(p, &Channel::new(p, l)?, e)
}

/// Phase shift with an explicitly chosen root `A`.
pub fn phase_shift_with_root(
    p: &PotentialParams,
    l: u32,
    e: f64,
    root: RootChoice,
) -> Result<ScatteringSolution> {
    phase_shift_in_channel(p, &Channel::with_root(p, l, root)?, e)
}

pub fn phase_shift_in_channel(
    p: &PotentialParams,
    channel: &Channel,
    e: f64,
) -> Result<ScatteringSolution> {
    let epsilon = epsilon_of(p, e)?;
    let coulomb_ratio = p.a2 / epsilon;
    let w = Complex64::new(0.5 - channel.a_root, -coulomb_ratio);
    let lg = log_gamma(w)?;
    let delta_prime = lg.im;
    let delta = delta_prime + 0.5 * PI * (channel.a_root + f64::from(channel.l) + 0.5);
    let exponent = PI * p.a2 / (2.0 * epsilon);
    let ln_n = 0.5 * (2.0 * epsilon).ln() + exponent + lg.re;
    Ok(ScatteringSolution {
        channel: *channel,
        energy: e,
        epsilon,
        coulomb_ratio,
        normalization: Magnitude::from_ln(ln_n, exponent > OVERFLOW_LN),
        delta_prime,
        delta,
        delta_prime_principal: principal_angle(delta_prime),
        delta_principal: principal_angle(delta),
        ln_abs_gamma: lg.re,
    })
}

/// `N = √(2ε) e^{πa₂/2ε} |Γ(w)|`, recomputed from a solution.
pub fn scattering_normalization(sol: &ScatteringSolution, a2: f64) -> Result<Magnitude> {
    let eps = sol.epsilon;
    let w = Complex64::new(0.5 - sol.channel.a_root, -a2 / eps);
    let exponent = PI * a2 / (2.0 * eps);
    let ln_n = 0.5 * (2.0 * eps).ln() + exponent + log_gamma(w)?.re;
    Ok(Magnitude::from_ln(ln_n, exponent > OVERFLOW_LN))
}

/// Overall scale of the scattering wave function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WaveNormalization {
    /// Asymptotic amplitude 2, the "k/2π" scale of the Coulomb reference.
    #[default]
    UnitFlux,
    /// Prefactor with `(2ε)^{2A−1/2}` in the denominator; its asymptotic
    /// amplitude is `2 (2ε)^{λ+1/2}` instead of 2.
    DoubledPower,
}

/// Regular scattering wave function `R(r)`, normalized to asymptotic
/// amplitude 2.
///
/// ```text
/// R = N / ((2ε)^A Γ(1−2A)) · r^{−A+1/2} e^{iεr} ₁F₁(w; 1−2A; −2iεr)
/// ```
///
/// The value is real up to roundoff; the complex value is returned so the
/// imaginary residue can be inspected.
pub fn scattering_wavefunction(
    p: &PotentialParams,
    l: u32,
    e: f64,
    r: f64,
) -> Result<Complex64> {
    scattering_wavefunction_with(p, &Channel::new(p, l)?, e, r, WaveNormalization::UnitFlux)
}

pub fn scattering_wavefunction_with(
    p: &PotentialParams,
    channel: &Channel,
    e: f64,
    r: f64,
    norm: WaveNormalization,
) -> Result<Complex64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("wave function needs r > 0, got {r}")));
    }
    let sol = phase_shift_in_channel(p, channel, e)?;
    let a = channel.a_root;
    let eps = sol.epsilon;
    let b = Complex64::new(1.0 - 2.0 * a, 0.0);
    let denominator_power = match norm {
        WaveNormalization::UnitFlux => a,
        WaveNormalization::DoubledPower => 2.0 * a - 0.5,
    };
    let ln_pref = Complex64::new(sol.normalization.ln() - denominator_power * (2.0 * eps).ln(), 0.0)
        - log_gamma(b)?;
    let z = Complex64::new(0.0, -2.0 * eps * r);
    let m = hyp1f1(sol.gamma_argument(), b, z)?;
    let ln_r_part = Complex64::new((0.5 - a) * r.ln(), eps * r);
    Ok((ln_pref + ln_r_part).exp() * m)
}

/// Leading large-r form `2 sin(δ′ + εr + (a₂/ε) ln 2εr + (π/2)(A + 1/2))`.
pub fn asymptotic_wave(sol: &ScatteringSolution, a2: f64, r: f64) -> Result<f64> {
    let rho = check_asymptotic_radius(sol, r)?;
    let theta = rho + a2 / sol.epsilon * (2.0 * rho).ln() + sol.asymptotic_phase();
    Ok(2.0 * theta.sin())
}

/// Large-r form including the `1/εr` corrections of the outgoing Coulomb
/// series, `2 Im(e^{iθ} S(εr))`.
pub fn asymptotic_wave_corrected(sol: &ScatteringSolution, a2: f64, r: f64) -> Result<f64> {
    let rho = check_asymptotic_radius(sol, r)?;
    let alpha = a2 / sol.epsilon;
    let theta = rho + alpha * (2.0 * rho).ln() + sol.asymptotic_phase();
    let s = outgoing_coulomb_series(sol.channel.lambda, alpha, rho);
    Ok(2.0 * (Complex64::from_polar(1.0, theta) * s).im)
}

fn check_asymptotic_radius(sol: &ScatteringSolution, r: f64) -> Result<f64> {
    let rho = sol.epsilon * r;
    if !(rho > 20.0) {
        return Err(Error::Domain(format!("asymptotic form needs εr > 20, got {rho}")));
    }
    Ok(rho)
}

/// `S(ρ) = Σ_k (a)_k (b)_k / (k! (2iρ)^k)` with `a = λ + 1/2 − iα`,
/// `b = −λ + 1/2 − iα`, truncated at its smallest term.
///
/// `e^{i(ρ + α ln 2ρ)} S(ρ)` solves the radial equation at large ρ for
/// effective angular momentum `λ − 1/2` and Coulomb strength `α = a₂/ε`.
pub fn outgoing_coulomb_series(lambda: f64, alpha: f64, rho: f64) -> Complex64 {
    let a = Complex64::new(lambda + 0.5, -alpha);
    let b = Complex64::new(0.5 - lambda, -alpha);
    let w = Complex64::new(0.0, 2.0 * rho);
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut last = f64::INFINITY;
    for k in 0..1000 {
        let kf = k as f64;
        let next = term * (a + kf) * (b + kf) / (w * (kf + 1.0));
        let mag = next.norm();
        if mag >= last || mag < 1e-17 * sum.norm() {
            break;
        }
        sum += next;
        term = next;
        last = mag;
    }
    sum
}

/// Form of the partial-wave coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AmplitudeMode {
    /// `(2ℓ+1)(e^{2iδ} − 1)/(2ik) P_ℓ(cos θ)`
    #[default]
    Standard,
    /// `(2ℓ+1) e^{2iδ}/(2ik) P_ℓ(cos θ)`, without the unscattered part.
    PaperLiteral,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeSample {
    pub theta: f64,
    pub amplitude: Complex64,
    /// `|F|²`
    pub dcs: f64,
}

/// Partial-wave coefficients for ℓ = 0..=lmax at one energy.
///
/// This is an ℓ-truncated partial sum. For a nonzero Coulomb term the full
/// series does not converge absolutely, so results depend on `lmax`.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialWaveSum {
    pub mode: AmplitudeMode,
    pub k: f64,
    pub solutions: Vec<ScatteringSolution>,
    coefficients: Vec<Complex64>,
}

impl PartialWaveSum {
    pub fn new(p: &PotentialParams, e: f64, lmax: u32, mode: AmplitudeMode) -> Result<Self> {
        let solutions = (0..=lmax)
            .map(|l| phase_shift(p, l, e))
            .collect::<Result<Vec<_>>>()?;
        let k = epsilon_of(p, e)?;
        let coefficients = solutions
            .iter()
            .map(|s| {
                let s_matrix = s.s_matrix();
                let numer = match mode {
                    AmplitudeMode::Standard => s_matrix - 1.0,
                    AmplitudeMode::PaperLiteral => s_matrix,
                };
                numer * f64::from(2 * s.channel.l + 1) / Complex64::new(0.0, 2.0 * k)
            })
            .collect();
        Ok(PartialWaveSum { mode, k, solutions, coefficients })
    }

    pub fn lmax(&self) -> u32 {
        (self.coefficients.len() - 1) as u32
    }

    pub fn at(&self, theta: f64) -> Result<AmplitudeSample> {
        if !(theta > 0.0 && theta <= PI) {
            return Err(Error::Domain(format!("scattering angle must be in (0, π], got {theta}")));
        }
        let legendre = legendre_table(self.lmax(), theta.cos());
        let amplitude: Complex64 = self
            .coefficients
            .iter()
            .zip(&legendre)
            .map(|(c, pl)| c * pl)
            .sum();
        Ok(AmplitudeSample { theta, amplitude, dcs: amplitude.norm_sqr() })
    }
}

/// Truncated partial-wave amplitude at one angle.
pub fn amplitude(
    p: &PotentialParams,
    e: f64,
    theta: f64,
    lmax: u32,
    mode: AmplitudeMode,
) -> Result<AmplitudeSample> {
    PartialWaveSum::new(p, e, lmax, mode)?.at(theta)
}
