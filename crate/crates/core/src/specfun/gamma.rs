//! Complex log-gamma on the principal branch.
//!
//! Arguments are shifted upward with the recurrence until the Stirling
//! series is accurate; far into the left half plane the reflection formula
//! is applied first. The imaginary part returned is the continuous argument
//! of Γ, not the argument reduced to (−π, π].

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default distance from {0, −1, −2, …} below which an argument is a pole.
pub const DEFAULT_POLE_TOL: f64 = 1e-12;

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;
const LN_PI: f64 = 1.144_729_885_849_400_2;

// Real part at which the Stirling series is summed.
const STIRLING_RE: f64 = 15.0;
// Left of this the reflection formula is used instead of a long shift.
const REFLECT_RE: f64 = -20.0;

// B_{2k} / (2k (2k - 1)) for k = 1..=10
const STIRLING_COEFFS: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

/// `log Γ(z)` on the principal branch, with the default pole tolerance.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    log_gamma_with_tol(z, DEFAULT_POLE_TOL)
}

/// `log Γ(z)`, reporting a pole when `z` lies within `pole_tol` of a
/// nonpositive integer.
pub fn log_gamma_with_tol(z: Complex64, pole_tol: f64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("log_gamma of non-finite {z}")));
    }
    if is_near_pole(z, pole_tol) {
        return Err(Error::Pole { re: z.re, im: z.im });
    }
    if z.re < REFLECT_RE {
        return Ok(reflected(z));
    }
    Ok(shifted(z))
}

/// Continuous argument of Γ(z) reduced to (−π, π].
pub fn arg_gamma(z: Complex64) -> Result<f64> {
    Ok(principal_angle(log_gamma(z)?.im))
}

/// Γ(z).
pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(log_gamma(z)?.exp())
}

/// 1/Γ(z), which is entire: zero at the poles of Γ.
pub fn rgamma(z: Complex64) -> Complex64 {
    match log_gamma(z) {
        Ok(lg) => (-lg).exp(),
        Err(_) => Complex64::new(0.0, 0.0),
    }
}

/// `ln Γ(x)` for real `x > 0`.
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::Domain(format!("ln_gamma_real needs x > 0, got {x}")));
    }
    Ok(log_gamma(Complex64::new(x, 0.0))?.re)
}

/// Reduce an angle to (−π, π].
pub fn principal_angle(theta: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut t = theta - two_pi * (theta / two_pi).round();
    if t <= -PI {
        t += two_pi;
    } else if t > PI {
        t -= two_pi;
    }
    t
}

fn is_near_pole(z: Complex64, tol: f64) -> bool {
    let nearest = z.re.round();
    nearest <= 0.0 && Complex64::new(z.re - nearest, z.im).norm() < tol
}

fn shifted(z: Complex64) -> Complex64 {
    let mut w = z;
    let mut correction = Complex64::new(0.0, 0.0);
    // Large |Im z| already keeps the series accurate on the right half plane.
    while w.re < STIRLING_RE && !(w.re >= 0.0 && w.im.abs() >= STIRLING_RE) {
        correction += w.ln();
        w += 1.0;
    }
    stirling(w) - correction
}

fn stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut power = inv;
    for c in STIRLING_COEFFS {
        series += power * c;
        power *= inv2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_TWO_PI + series
}

// log Γ(z) = ln π − log sin(πz) − log Γ(1 − z), with log sin taken on the
// branch that keeps the sum equal to the principal log Γ.
fn reflected(z: Complex64) -> Complex64 {
    if z.im < 0.0 {
        return reflected(z.conj()).conj();
    }
    // For Im z >= 0, sin(πz) = (i/2) e^{−iπz} (1 − e^{2iπz}) with |e^{2iπz}| <= 1.
    let i = Complex64::i();
    let e = (2.0 * PI * i * z).exp();
    let log_sin = -i * PI * z + (Complex64::new(1.0, 0.0) - e).ln() + i * (PI / 2.0)
        - std::f64::consts::LN_2;
    Complex64::new(LN_PI, 0.0) - log_sin - shifted(Complex64::new(1.0, 0.0) - z)
}
