//! Finite-difference residuals of the transformed equations.
//!
//! The Kummer-type equation in `z = −2iεr` is
//! `z f″ + (2A+1+z) f′ + (A + 1/2 + iα) f = 0`, `α = a₂/ε`, with regular
//! solution `f = z^{−2A} e^{−z} ₁F₁(−A + 1/2 − iα; 1 − 2A; z)`. Its Laplace
//! image satisfies `s(s+1) F′ = [(2A−1)s + A − 1/2 + iα] F`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::hyp1f1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LaplaceForm {
    /// `s^{A−1/2+iα} (s+1)^{A−1/2−iα}`, the solution of the first-order
    /// equation.
    #[default]
    Consistent,
    /// `(s+1)^{−(A+1/2+iα)} s^{−(A+1/2−iα)}`, which solves it only after
    /// `A → −A`.
    FlippedA,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Derivative {
    /// Central difference, error `O(h²)`.
    Central(f64),
    /// Richardson-extrapolated central difference, error `O(h⁴)`.
    Richardson(f64),
}

impl Default for Derivative {
    fn default() -> Self {
        Derivative::Richardson(1e-3)
    }
}

impl Derivative {
    fn first<F: Fn(f64) -> Complex64>(&self, f: &F, x: f64) -> Complex64 {
        let central = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
        match *self {
            Derivative::Central(h) => central(h),
            Derivative::Richardson(h) => (4.0 * central(0.5 * h) - central(h)) / 3.0,
        }
    }

    fn second<F: Fn(f64) -> Complex64>(&self, f: &F, x: f64) -> Complex64 {
        let f0 = f(x);
        let central = |h: f64| (f(x + h) - 2.0 * f0 + f(x - h)) / (h * h);
        match *self {
            Derivative::Central(h) => central(h),
            Derivative::Richardson(h) => (4.0 * central(0.5 * h) - central(h)) / 3.0,
        }
    }

    fn step(&self) -> f64 {
        match *self {
            Derivative::Central(h) | Derivative::Richardson(h) => h,
        }
    }
}

pub fn laplace_image(a: f64, alpha: f64, s: f64, form: LaplaceForm) -> Complex64 {
    let s = Complex64::new(s, 0.0);
    let (ps, ps1) = match form {
        LaplaceForm::Consistent => (Complex64::new(a - 0.5, alpha), Complex64::new(a - 0.5, -alpha)),
        LaplaceForm::FlippedA => {
            (-Complex64::new(a + 0.5, -alpha), -Complex64::new(a + 0.5, alpha))
        }
    };
    s.powc(ps) * (s + 1.0).powc(ps1)
}

/// `max_s |s(s+1)F′ − [s(2A−1) + A − 1/2 + iα] F| / |F|` over the samples.
pub fn laplace_residual_check_with(
    a: f64,
    alpha: f64,
    s_samples: &[f64],
    form: LaplaceForm,
    deriv: Derivative,
) -> Result<f64> {
    let h = deriv.step();
    let mut worst = 0.0f64;
    for &s in s_samples {
        if !s.is_finite() || s.abs() < 2.0 * h || (s + 1.0).abs() < 2.0 * h {
            return Err(Error::Domain(format!("sample s = {s} too close to a branch point")));
        }
        let f = |x: f64| laplace_image(a, alpha, x, form);
        let fv = f(s);
        let dfv = deriv.first(&f, s);
        let rhs = Complex64::new(s * (2.0 * a - 1.0) + a - 0.5, alpha) * fv;
        let res = (s * (s + 1.0) * dfv - rhs).norm() / fv.norm();
        if !res.is_finite() {
            return Err(Error::Domain(format!("residual not finite at s = {s}")));
        }
        worst = worst.max(res);
    }
    Ok(worst)
}

pub fn laplace_residual_check(a: f64, alpha: f64, s_samples: &[f64]) -> Result<f64> {
    laplace_residual_check_with(a, alpha, s_samples, LaplaceForm::Consistent, Derivative::default())
}

/// `f(z)` on the ray `z = −it`, `t = 2εr > 0`.
pub fn kummer_solution(a: f64, alpha: f64, t: f64) -> Result<Complex64> {
    let z = Complex64::new(0.0, -t);
    let m = hyp1f1(Complex64::new(0.5 - a, -alpha), Complex64::new(1.0 - 2.0 * a, 0.0), z)?;
    Ok((-2.0 * a * z.ln() - z).exp() * m)
}

/// Largest relative residual of the Kummer-type equation at the sample
/// points `t`, derivatives taken along the ray (`d/dz = i d/dt`).
pub fn kummer_residual(a: f64, alpha: f64, t_samples: &[f64], deriv: Derivative) -> Result<f64> {
    let c = Complex64::new(a + 0.5, alpha);
    let mut worst = 0.0f64;
    for &t in t_samples {
        if !(t > 2.0 * deriv.step()) {
            return Err(Error::Domain(format!("sample t = {t} too close to the origin")));
        }
        // hyp1f1 errors cannot surface through the closure; evaluate once
        // up front so they are reported
        kummer_solution(a, alpha, t)?;
        let f = |x: f64| kummer_solution(a, alpha, x).unwrap_or(Complex64::new(f64::NAN, 0.0));
        let z = Complex64::new(0.0, -t);
        let fz = Complex64::i() * deriv.first(&f, t);
        let fzz = -deriv.second(&f, t);
        let terms = [z * fzz, (2.0 * a + 1.0 + z) * fz, c * f(t)];
        let scale: f64 = terms.iter().map(|v| v.norm()).sum();
        let res = (terms[0] + terms[1] + terms[2]).norm() / scale;
        if !res.is_finite() {
            return Err(Error::Domain(format!("residual not finite at t = {t}")));
        }
        worst = worst.max(res);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    const S: [f64; 4] = [0.5, 1.0, 2.0, 5.0];

    #[test]
    fn consistent_form_solves_the_equation() {
        for (a, alpha) in [(-0.5, 0.0), (-1.2, 0.7), (-0.3, -2.0), (-2.5, 1.3)] {
            let r = laplace_residual_check(a, alpha, &S).unwrap();
            assert!(r < 1e-9, "{a} {alpha} {r}");
        }
    }

    #[test]
    fn degenerate_case() {
        // A = −1/2, α = 0: F = 1/(s(s+1))
        for s in S {
            let f = laplace_image(-0.5, 0.0, s, LaplaceForm::Consistent);
            assert!((f.re - 1.0 / (s * (s + 1.0))).abs() < 1e-15 && f.im.abs() < 1e-15);
        }
        assert!(laplace_residual_check(-0.5, 0.0, &S).unwrap() < 1e-10);
    }

    #[test]
    fn flipped_form_fails_unless_a_vanishes() {
        let r = laplace_residual_check_with(-1.2, 0.7, &S, LaplaceForm::FlippedA, Derivative::default())
            .unwrap();
        assert!(r > 0.1, "{r}");
        // the two forms coincide after A → −A
        for s in S {
            let p = laplace_image(1.2, 0.7, s, LaplaceForm::FlippedA);
            let c = laplace_image(-1.2, 0.7, s, LaplaceForm::Consistent);
            assert!((p - c).norm() < 1e-14 * c.norm());
        }
    }

    #[test]
    fn central_difference_is_second_order() {
        let r = |h| {
            laplace_residual_check_with(-1.2, 0.7, &S, LaplaceForm::Consistent, Derivative::Central(h))
                .unwrap()
        };
        let ratio = r(1e-2) / r(5e-3);
        assert!((ratio - 4.0).abs() < 0.1, "{ratio}");
    }

    #[test]
    fn kummer_equation_residual() {
        let t = [0.5, 2.0, 10.0, 25.0, 40.0, 60.0];
        for (a, alpha) in [(-0.5, 0.0), (-0.5, 1.0), (-1.118_033_988_749_895, -0.4), (-2.5, 2.0)] {
            let r = kummer_residual(a, alpha, &t, Derivative::Richardson(1e-2)).unwrap();
            assert!(r < 1e-7, "{a} {alpha} {r}");
        }
        assert!(kummer_residual(-0.5, 0.0, &[0.0], Derivative::default()).is_err());
    }
}
