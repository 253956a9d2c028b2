use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::TanhSinh;
use crate::specfun::log_gamma;

/// `₁F₁(b′; a′+b′; μy)` from the beta-type integral
///
/// ```text
/// ∫₀^y (y−τ)^{a′−1} τ^{b′−1} e^{μτ} dτ = Γ(a′)Γ(b′)/Γ(a′+b′) · y^{a′+b′−1} ₁F₁(b′; a′+b′; μy)
/// ```
///
/// evaluated by quadrature after `τ = yu`.
pub fn hyp1f1_quadrature_oracle(
    bprime: Complex64,
    aprime: Complex64,
    mu: Complex64,
    y: f64,
) -> Result<Complex64> {
    if !(aprime.re > 0.0 && bprime.re > 0.0) {
        return Err(Error::Domain(format!(
            "integral needs Re a' > 0 and Re b' > 0, got a' = {aprime}, b' = {bprime}"
        )));
    }
    if !(y > 0.0 && y.is_finite()) {
        return Err(Error::Domain(format!("y must be positive, got {y}")));
    }
    let my = mu * y;
    let q = TanhSinh { rel_tol: 1e-14, max_level: 14, ..TanhSinh::default() };
    let integral = q.integrate_complex(0.0, 1.0, |node| {
        let ln = (aprime - 1.0) * node.to_b.ln() + (bprime - 1.0) * node.from_a.ln() + my * node.x;
        ln.exp()
    })?;
    let ln_ratio = log_gamma(aprime + bprime)? - log_gamma(aprime)? - log_gamma(bprime)?;
    Ok(integral * ln_ratio.exp())
}
