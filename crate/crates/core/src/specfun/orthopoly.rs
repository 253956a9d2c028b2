use crate::error::{Error, Result};
use crate::quadrature::TanhSinh;
use crate::specfun::ln_gamma_real;

/// Generalized Laguerre polynomial `L_n^κ(y)` by upward three-term recurrence
/// `(k+1) L_{k+1} = (2k+1+κ−y) L_k − (k+κ) L_{k−1}`.
pub fn laguerre(n: u32, kappa: f64, y: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + kappa - y;
    for k in 1..n {
        let kf = f64::from(k);
        let next = ((2.0 * kf + 1.0 + kappa - y) * cur - (kf + kappa) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Legendre polynomial `P_l(x)` by Bonnet's recurrence.
pub fn legendre(l: u32, x: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("legendre needs |x| <= 1, got {x}")));
    }
    Ok(legendre_table(l, x).pop().unwrap_or(1.0))
}

/// `[P_0(x), …, P_lmax(x)]`.
pub fn legendre_table(lmax: u32, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(lmax as usize + 1);
    out.push(1.0);
    if lmax >= 1 {
        out.push(x);
    }
    for l in 1..lmax as usize {
        let lf = l as f64;
        let next = ((2.0 * lf + 1.0) * x * out[l] - lf * out[l - 1]) / (lf + 1.0);
        out.push(next);
    }
    out
}

/// `∫₀^∞ y^κ e^{−y} L_n^κ L_m^κ dy / √(h_n h_m)`, `h_n = Γ(n+κ+1)/n!`, by
/// quadrature on `(0, y_cut)`; 1 for `n = m` and 0 otherwise.
pub fn laguerre_overlap(n: u32, m: u32, kappa: f64) -> Result<f64> {
    if !(kappa > -1.0) {
        return Err(Error::Domain(format!("weight needs κ > −1, got {kappa}")));
    }
    let ln_h = |k: u32| -> Result<f64> {
        let kf = f64::from(k);
        Ok(ln_gamma_real(kf + kappa + 1.0)? - ln_gamma_real(kf + 1.0)?)
    };
    let norm = (0.5 * (ln_h(n)? + ln_h(m)?)).exp();
    // integrand below e^{−40} of its peak beyond this point
    let y_cut = 80.0 + 4.0 * (kappa.max(0.0) + f64::from(n + m));
    let q = TanhSinh { rel_tol: 1e-14, ..TanhSinh::default() };
    let v = q.integrate(0.0, y_cut, |node| {
        node.from_a.powf(kappa) * (-node.x).exp() * laguerre(n, kappa, node.x) * laguerre(m, kappa, node.x)
    })?;
    Ok(v / norm)
}
