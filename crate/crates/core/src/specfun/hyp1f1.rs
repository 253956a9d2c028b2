//! Kummer's confluent hypergeometric function ₁F₁(p; q; z) for complex
//! parameters and argument.
//!
//! Small |z| uses the ascending series, summed in double-double so that the
//! cancellation on the imaginary axis (terms of size e^{|z|} summing to an
//! O(1) result) does not eat the answer. Large |z| uses the two-term
//! asymptotic expansion, each series cut at its smallest term.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::dd::{CDd, Dd};
use super::gamma::{log_gamma, rgamma};
use super::fixed;
use crate::error::{Error, Result};

/// Phase factor attached to the recessive term of the asymptotic expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AsymptoticConvention {
    /// `Γ(q)/Γ(q−p) · (−z)^{−p}`, i.e. `e^{±iπp} z^{−p}`.
    #[default]
    Standard,
    /// `Γ(q)/Γ(q−p) · e^{±iπp/2} z^{−p}`, upper sign for arg z > −π/2.
    /// Kept for comparison.
    HalfPhase,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyp1f1Config {
    /// |z| at and below which the ascending series is used.
    pub z_switch: f64,
    /// Smallest |z| accepted by [`hyp1f1_asymptotic_with`].
    pub asymptotic_min: f64,
    pub max_terms: usize,
    pub tol: f64,
    pub convention: AsymptoticConvention,
}

impl Default for Hyp1f1Config {
    fn default() -> Self {
        Hyp1f1Config {
            z_switch: 30.0,
            asymptotic_min: 30.0,
            max_terms: 500,
            tol: 1e-15,
            convention: AsymptoticConvention::Standard,
        }
    }
}

// Error estimate up to which the double-double series or the asymptotic
// expansion is accepted before falling back to the fixed-point series.
const TRUST: f64 = 1e-13;

/// ₁F₁(p; q; z) with the default configuration.
pub fn hyp1f1(p: Complex64, q: Complex64, z: Complex64) -> Result<Complex64> {
    hyp1f1_with(p, q, z, &Hyp1f1Config::default())
}

/// ₁F₁ by the cheapest strategy whose own error estimate is acceptable:
/// the double-double series for `|z| <= z_switch`, the asymptotic expansion
/// beyond, then whichever of the two is better, and finally the series in
/// fixed-point arithmetic with enough bits for its cancellation.
pub fn hyp1f1_with(
    p: Complex64,
    q: Complex64,
    z: Complex64,
    cfg: &Hyp1f1Config,
) -> Result<Complex64> {
    check_finite(&[p, q, z])?;
    check_denominator(p, q)?;
    let max_terms = cfg.max_terms.max(4 * (z.norm() + p.norm()) as usize + 50);
    let mut best: Option<(Complex64, f64)> = None;
    if z.norm() > cfg.z_switch && terminates(p).is_none() {
        let asym = asymptotic_split(p, q, z, cfg.convention)?;
        let est = asym.relative_error();
        if est <= TRUST {
            return Ok(asym.value());
        }
        best = Some((asym.value(), est));
    }
    match hyp1f1_series_with_bound(p, q, z, max_terms, cfg.tol) {
        Ok((v, bound)) if bound <= TRUST => return Ok(v),
        Ok((v, bound)) => {
            if best.is_none_or(|(_, est)| bound < est) {
                best = Some((v, bound));
            }
        }
        Err(e) if best.is_none() => return Err(e),
        Err(_) => {}
    }
    match cancellation_free_series(p, q, z, max_terms, cfg.tol) {
        Ok(v) => Ok(v),
        Err(e) => best.map(|(v, _)| v).ok_or(e),
    }
}

/// The ascending series in fixed point, raising the precision until the
/// rounding error `~ terms · max|term| · 2^−bits` is below 2^−60 of the sum.
fn cancellation_free_series(
    p: Complex64,
    q: Complex64,
    z: Complex64,
    max_terms: usize,
    tol: f64,
) -> Result<Complex64> {
    let mut bits = 128u32;
    loop {
        let (v, biggest, terms) = fixed::series(p, q, z, bits, max_terms, tol)?;
        let need = ((terms as f64) * biggest / v.norm()).log2() + 60.0;
        if v.norm() > 0.0 && f64::from(bits) >= need {
            return Ok(v);
        }
        let next = if need.is_finite() { (need as u32 + 32).max(bits + 64) } else { 2 * bits };
        if next > 1 << 16 {
            return Err(Error::NonConvergence { what: "1F1 fixed-point precision", terms });
        }
        bits = next;
    }
}

/// Ascending series Σ (p)_k z^k / ((q)_k k!), summed in double-double.
pub fn hyp1f1_series(
    p: Complex64,
    q: Complex64,
    z: Complex64,
    max_terms: usize,
    tol: f64,
) -> Result<Complex64> {
    Ok(hyp1f1_series_with_bound(p, q, z, max_terms, tol)?.0)
}

/// The ascending series together with a bound on its relative rounding
/// error, `max_k |term_k| · 1e−30 / |sum|`. On the imaginary axis the terms
/// grow like `e^{|z|}` while the sum may be exponentially small, and this
/// bound says when double-double is no longer enough.
pub fn hyp1f1_series_with_bound(
    p: Complex64,
    q: Complex64,
    z: Complex64,
    max_terms: usize,
    tol: f64,
) -> Result<(Complex64, f64)> {
    check_finite(&[p, q, z])?;
    check_denominator(p, q)?;
    let zd = CDd::from(z);
    let mut term = CDd::from(Complex64::new(1.0, 0.0));
    let mut sum = term;
    let settle = p.norm() + z.norm();
    let mut biggest = 1.0f64;
    let done = |sum: CDd, biggest: f64| {
        let v = sum.to_c64();
        (v, biggest * 1e-30 / v.norm())
    };
    for k in 0..max_terms {
        let kf = k as f64;
        // p + k and q + k must not be rounded to f64: the large terms would
        // carry that rounding into the cancelling sum.
        let pk = CDd::from(p).add_real(kf);
        let qk = CDd::from(q).add_real(kf);
        // term *= (p+k) z / ((q+k)(k+1))
        let denom = qk.norm_sqr() * Dd::from(kf + 1.0);
        term = (term * pk * zd * qk.conj()).scale_div(denom);
        sum = sum + term;
        biggest = biggest.max(term.norm_approx());
        if term.norm_approx() == 0.0 {
            return Ok(done(sum, biggest));
        }
        if kf > settle && term.norm_approx() <= tol * sum.norm_approx() {
            return Ok(done(sum, biggest));
        }
    }
    Err(Error::NonConvergence { what: "1F1 ascending series", terms: max_terms })
}

/// Two-term asymptotic value of ₁F₁(ω₁; ω₂; z) for large |z|.
pub fn hyp1f1_asymptotic(omega1: Complex64, omega2: Complex64, z: Complex64) -> Result<Complex64> {
    hyp1f1_asymptotic_with(omega1, omega2, z, &Hyp1f1Config::default())
}

pub fn hyp1f1_asymptotic_with(
    omega1: Complex64,
    omega2: Complex64,
    z: Complex64,
    cfg: &Hyp1f1Config,
) -> Result<Complex64> {
    check_finite(&[omega1, omega2, z])?;
    if z.norm() < cfg.asymptotic_min {
        return Err(Error::Domain(format!(
            "asymptotic 1F1 needs |z| >= {}, got {}",
            cfg.asymptotic_min,
            z.norm()
        )));
    }
    check_denominator(omega1, omega2)?;
    Ok(asymptotic_split(omega1, omega2, z, cfg.convention)?.value())
}

/// The two pieces of the asymptotic expansion kept separate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticSplit {
    /// `Γ(ω₂)/Γ(ω₁) e^z z^{ω₁−ω₂}`
    pub dominant_prefactor: Complex64,
    /// `Γ(ω₂)/Γ(ω₂−ω₁)` times the convention's phase and power of z.
    pub recessive_prefactor: Complex64,
    pub dominant_series: Complex64,
    pub recessive_series: Complex64,
    /// Magnitude of the last term kept in each series (the truncation error).
    pub dominant_tail: f64,
    pub recessive_tail: f64,
}

impl AsymptoticSplit {
    pub fn value(&self) -> Complex64 {
        self.dominant_prefactor * self.dominant_series
            + self.recessive_prefactor * self.recessive_series
    }

    pub fn relative_error(&self) -> f64 {
        let err = self.dominant_prefactor.norm() * self.dominant_tail
            + self.recessive_prefactor.norm() * self.recessive_tail;
        let scale = self.value().norm();
        if scale == 0.0 {
            f64::INFINITY
        } else {
            err / scale
        }
    }
}

pub fn asymptotic_split(
    omega1: Complex64,
    omega2: Complex64,
    z: Complex64,
    convention: AsymptoticConvention,
) -> Result<AsymptoticSplit> {
    let a = omega1;
    let b = omega2;
    let lg_b = log_gamma(b)?;
    let ln_z = z.ln();
    let zero = Complex64::new(0.0, 0.0);

    let dominant_prefactor = if rgamma(a) == zero {
        zero
    } else {
        (lg_b - log_gamma(a)? + z + (a - b) * ln_z).exp()
    };
    let recessive_prefactor = if rgamma(b - a) == zero {
        zero
    } else {
        let power = match convention {
            AsymptoticConvention::Standard => -a * (-z).ln(),
            AsymptoticConvention::HalfPhase => {
                let sign = if z.arg() > -PI / 2.0 { 1.0 } else { -1.0 };
                Complex64::i() * (sign * PI / 2.0) * a - a * ln_z
            }
        };
        (lg_b - log_gamma(b - a)? + power).exp()
    };

    let (dominant_series, dominant_tail) = smallest_term_sum(b - a, 1.0 - a, z);
    let (recessive_series, recessive_tail) = smallest_term_sum(a, a - b + 1.0, -z);
    Ok(AsymptoticSplit {
        dominant_prefactor,
        recessive_prefactor,
        dominant_series,
        recessive_series,
        dominant_tail,
        recessive_tail,
    })
}

// Σ (u)_s (v)_s / (s! w^s) truncated before its smallest term, which is
// returned as the error estimate. With large parameters the terms may grow
// before they start to decrease, so the whole useful range is scanned.
fn smallest_term_sum(u: Complex64, v: Complex64, w: Complex64) -> (Complex64, f64) {
    let limit = (4.0 * (w.norm() + u.norm() + v.norm())) as usize + 10;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut best = (sum, f64::INFINITY);
    for s in 0..limit.min(10_000) {
        let sf = s as f64;
        let next = term * (u + sf) * (v + sf) / (w * (sf + 1.0));
        let mag = next.norm();
        if mag == 0.0 {
            return (sum, 0.0);
        }
        if mag < best.1 {
            best = (sum, mag);
        }
        if mag <= f64::EPSILON * 1e-2 * sum.norm() {
            break;
        }
        sum += next;
        term = next;
    }
    best
}

fn terminates(p: Complex64) -> Option<u64> {
    if p.im == 0.0 && p.re <= 0.0 && p.re == p.re.round() {
        Some((-p.re) as u64)
    } else {
        None
    }
}

fn check_finite(args: &[Complex64]) -> Result<()> {
    if args.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::Parameter("non-finite argument to 1F1".into()))
    }
}

fn check_denominator(p: Complex64, q: Complex64) -> Result<()> {
    let nearest = q.re.round();
    let q_is_pole = nearest <= 0.0 && Complex64::new(q.re - nearest, q.im).norm() < 1e-12;
    if !q_is_pole {
        return Ok(());
    }
    match terminates(p) {
        Some(n) if (n as f64) < -nearest => Ok(()),
        _ => Err(Error::Parameter(format!(
            "1F1 lower parameter q = {q} is a nonpositive integer"
        ))),
    }
}
