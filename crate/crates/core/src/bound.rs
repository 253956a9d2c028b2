//! Bound states from the poles of `Γ(−A + 1/2 − i a₂/ε)`.
//!
//! With `ε = iκ` the pole condition `−A + 1/2 − a₂/κ = −n` gives
//! `κ = a₂/(n + 1/2 + λ)` and `E = a₃ − κ²/2`. The radial function is
//!
//! ```text
//! R(r) = N′ r^{λ+1/2} e^{−κr} ₁F₁(−n; 1+2λ; 2κr)
//! ```
//!
//! normalized so that `∫₀^∞ R² dr = 1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Channel, PotentialParams};
use crate::quadrature::TanhSinh;
use crate::specfun::{laguerre, ln_gamma_real};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundLevel {
    pub n: u32,
    pub l: u32,
    pub energy: f64,
    pub lambda: f64,
    /// Decay constant `κ = a₂/(n + 1/2 + λ)`.
    pub kappa: f64,
    /// Laguerre argument scale `β = 2κ = 2a₂/(n + 1/2 − A)`.
    pub beta: f64,
    /// Normalization of the ₁F₁ form.
    pub nprime: f64,
    /// Normalization of the equivalent `L_n^{2λ}(βr)` form.
    pub laguerre_norm: f64,
}

impl BoundLevel {
    /// `|w + n|` with `w = λ + 1/2 − i a₂/ε` evaluated at `ε = i√(2(a₃ − E))`.
    pub fn pole_residual(&self, p: &PotentialParams) -> f64 {
        let kappa = (2.0 * (p.a3 - self.energy)).sqrt();
        (self.lambda + 0.5 - p.a2 / kappa + f64::from(self.n)).abs()
    }
}

fn attractive(p: &PotentialParams) -> Result<()> {
    if p.a2 > 0.0 {
        Ok(())
    } else {
        Err(Error::NotAttractive(p.a2))
    }
}

pub fn bound_energy(p: &PotentialParams, n: u32, l: u32) -> Result<f64> {
    Ok(bound_level(p, n, l)?.energy)
}

pub fn bound_level(p: &PotentialParams, n: u32, l: u32) -> Result<BoundLevel> {
    attractive(p)?;
    let ch = Channel::new(p, l)?;
    let lambda = ch.lambda;
    let nf = f64::from(n);
    let nu = nf + 0.5 + lambda;
    let kappa = p.a2 / nu;
    let energy = p.a3 - 0.5 * (p.a2 * p.a2) / (nu * nu);

    let ln_fact = ln_gamma_real(nf + 1.0)?;
    let ln_g_top = ln_gamma_real(nf + 1.0 + 2.0 * lambda)?;
    let ln_g_b = ln_gamma_real(1.0 + 2.0 * lambda)?;
    // (2a₂)^{1−A}/Γ(1−2A) · √(Γ(n+1−2A)/(2·n!) · (n+1/2−A)^{2A−3})
    let ln_nprime = (1.0 + lambda) * (2.0 * p.a2).ln() - ln_g_b
        + 0.5 * (ln_g_top - 2f64.ln() - ln_fact - (2.0 * lambda + 3.0) * nu.ln());
    // ₁F₁(−n; 1+2λ; y) = n! Γ(1+2λ)/Γ(n+1+2λ) · L_n^{2λ}(y)
    let ln_lag = ln_nprime + ln_fact + ln_g_b - ln_g_top;

    Ok(BoundLevel {
        n,
        l,
        energy,
        lambda,
        kappa,
        beta: 2.0 * kappa,
        nprime: ln_nprime.exp(),
        laguerre_norm: ln_lag.exp(),
    })
}

/// All levels with `n <= nmax`, `l <= lmax`, by increasing energy; equal
/// energies are ordered by `(l, n)`.
pub fn spectrum(p: &PotentialParams, nmax: u32, lmax: u32) -> Result<Vec<BoundLevel>> {
    let mut levels = Vec::with_capacity(((nmax + 1) * (lmax + 1)) as usize);
    for l in 0..=lmax {
        for n in 0..=nmax {
            levels.push(bound_level(p, n, l)?);
        }
    }
    levels.sort_by(|a, b| {
        a.energy
            .total_cmp(&b.energy)
            .then((a.l, a.n).cmp(&(b.l, b.n)))
    });
    Ok(levels)
}

fn radial_value(level: &BoundLevel, r: f64) -> f64 {
    let y = level.beta * r;
    let ln_env = level.laguerre_norm.ln() + (level.lambda + 0.5) * r.ln() - level.kappa * r;
    ln_env.exp() * laguerre(level.n, 2.0 * level.lambda, y)
}

/// Normalized bound radial function `R_{nℓ}(r)`.
pub fn bound_wavefunction(p: &PotentialParams, n: u32, l: u32, r: f64) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("r must be positive and finite, got {r}")));
    }
    let level = bound_level(p, n, l)?;
    Ok(radial_value(&level, r))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    /// `∫ R² dr`, the measure implied by `ψ = R(r)/r · Y`.
    Dr,
    /// `∫ R² r² dr`
    R2dr,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormCheck {
    pub value: f64,
    pub r_cut: f64,
    /// Bound on the neglected part `∫_{r_cut}^∞`, relative to the value.
    pub tail_bound: f64,
}

/// Upper cut in `y = 2κr` where `y^m e^{−y}` has dropped below `1e−18` of
/// its scale, together with `∫_{y_c}^∞ y^m e^{−y} dy / Γ(m+1)`.
fn cut_point(m: f64) -> (f64, f64) {
    let target = 18.0 * std::f64::consts::LN_10;
    let mut y = m + target;
    for _ in 0..50 {
        y = target + m * y.ln().max(0.0) + 2.0 * m.max(1.0).ln();
    }
    let ln_tail = m * y.ln() - y - (1.0 - m / y).ln() - ln_gamma_real(m + 1.0).unwrap_or(0.0);
    (y, ln_tail.exp())
}

fn overlap_impl(a: &BoundLevel, b: &BoundLevel, measure: Measure) -> Result<NormCheck> {
    let extra = match measure {
        Measure::Dr => 0.0,
        Measure::R2dr => 2.0,
    };
    let kappa = 0.5 * (a.kappa + b.kappa);
    // integrand grows at most like r^{2λ+1+n_a+n_b+extra} before the decay
    let m = 2.0 * a.lambda + 1.0 + f64::from(a.n + b.n) + extra;
    let (y_cut, tail) = cut_point(m);
    let r_cut = y_cut / (2.0 * kappa);
    let q = TanhSinh { rel_tol: 1e-14, ..TanhSinh::default() };
    let value = q.integrate(0.0, r_cut, |node| {
        let r = node.x;
        let w = match measure {
            Measure::Dr => 1.0,
            Measure::R2dr => r * r,
        };
        radial_value(a, r) * radial_value(b, r) * w
    })?;
    Ok(NormCheck { value, r_cut, tail_bound: tail })
}

/// `∫ R_{nℓ}² dμ` by quadrature on `(0, r_cut)`.
pub fn bound_normalization_check(
    p: &PotentialParams,
    n: u32,
    l: u32,
    measure: Measure,
) -> Result<NormCheck> {
    let level = bound_level(p, n, l)?;
    overlap_impl(&level, &level, measure)
}

/// `∫ R_{n₁ℓ} R_{n₂ℓ} dμ`.
pub fn bound_overlap(
    p: &PotentialParams,
    n1: u32,
    n2: u32,
    l: u32,
    measure: Measure,
) -> Result<NormCheck> {
    let a = bound_level(p, n1, l)?;
    let b = bound_level(p, n2, l)?;
    overlap_impl(&a, &b, measure)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::hyp1f1;
    use num_complex::Complex64;

    fn hydrogen() -> PotentialParams {
        PotentialParams::new(0.0, 1.0, 0.0).unwrap()
    }

    fn nodes(p: &PotentialParams, n: u32, l: u32) -> usize {
        let level = bound_level(p, n, l).unwrap();
        let r_end = 60.0 / level.kappa;
        let mut count = 0;
        let mut prev = radial_value(&level, 1e-6 / level.kappa);
        for i in 1..=20000 {
            let r = r_end * f64::from(i) / 20000.0;
            let v = radial_value(&level, r);
            if v != 0.0 && prev != 0.0 && v.signum() != prev.signum() {
                count += 1;
            }
            if v != 0.0 {
                prev = v;
            }
        }
        count
    }

    #[test]
    fn hydrogen_levels() {
        let h = hydrogen();
        assert_eq!(bound_energy(&h, 0, 0).unwrap(), -0.5);
        assert_eq!(bound_energy(&h, 1, 0).unwrap(), -0.125);
        for z in [1.0, 2.0, 3.5] {
            let p = PotentialParams::coulomb(z).unwrap();
            for n in 0..=5u32 {
                for l in 0..=5u32 {
                    let want = -z * z / (2.0 * f64::from(n + l + 1).powi(2));
                    let got = bound_energy(&p, n, l).unwrap();
                    assert!((got - want).abs() <= 1e-14 * want.abs(), "{n} {l}");
                }
            }
        }
    }

    #[test]
    fn inverse_square_shift() {
        let p = PotentialParams::new(0.12, 1.0, 0.0).unwrap();
        let e = bound_energy(&p, 0, 0).unwrap();
        assert!((e + 0.5 / 0.36).abs() < 1e-14, "{e}");
    }

    #[test]
    fn requires_attraction() {
        let p = PotentialParams::new(0.0, -1.0, 0.0).unwrap();
        assert!(matches!(bound_energy(&p, 0, 0), Err(Error::NotAttractive(_))));
        let p = PotentialParams::new(0.0, 0.0, 0.0).unwrap();
        assert!(bound_energy(&p, 0, 0).is_err());
        let p = PotentialParams::new(0.2, 1.0, 0.0).unwrap();
        assert!(matches!(bound_energy(&p, 0, 0), Err(Error::FallToCenter { .. })));
    }

    #[test]
    fn degeneracy_and_splitting() {
        let s = spectrum(&hydrogen(), 1, 1).unwrap();
        let e: Vec<f64> = s.iter().map(|l| l.energy).collect();
        assert_eq!(e[..3], [-0.5, -0.125, -0.125]);
        assert_eq!((s[1].l, s[1].n), (0, 1));
        assert_eq!((s[2].l, s[2].n), (1, 0));

        let p = PotentialParams::new(0.01, 1.0, 0.0).unwrap();
        let a = bound_energy(&p, 1, 0).unwrap();
        let b = bound_energy(&p, 0, 1).unwrap();
        assert!(a != b && (a - b).abs() > 1e-6);

        assert_eq!(spectrum(&hydrogen(), 0, 0).unwrap().len(), 1);
    }

    #[test]
    fn spectrum_is_sorted() {
        let p = PotentialParams::new(-0.3, 1.7, 0.4).unwrap();
        let s = spectrum(&p, 4, 4).unwrap();
        assert_eq!(s.len(), 25);
        assert!(s.windows(2).all(|w| w[0].energy <= w[1].energy));
        assert!(s.iter().all(|l| l.energy < p.a3));
    }

    #[test]
    fn monotone_in_n_and_l() {
        let p = PotentialParams::new(0.1, 1.0, 0.0).unwrap();
        for n in 0..4 {
            for l in 0..4 {
                let e = bound_energy(&p, n, l).unwrap();
                assert!(bound_energy(&p, n + 1, l).unwrap() > e);
                assert!(bound_energy(&p, n, l + 1).unwrap() > e);
            }
        }
    }

    #[test]
    fn poles_sit_at_the_levels() {
        for p in [
            PotentialParams::new(0.1, 2.0, -0.3).unwrap(),
            PotentialParams::new(-0.5, 0.5, 1.0).unwrap(),
        ] {
            for level in spectrum(&p, 3, 3).unwrap() {
                assert!(level.pole_residual(&p) < 1e-12, "{level:?}");
            }
        }
    }

    #[test]
    fn hydrogen_ground_state_shape() {
        let h = hydrogen();
        for r in [0.01, 0.5, 1.0, 3.0, 10.0] {
            let got = bound_wavefunction(&h, 0, 0, r).unwrap();
            let want = 2.0 * r * (-r).exp();
            assert!((got - want).abs() < 1e-14, "{r}");
        }
        // 2s: (1/√2) r (1 − r/2) e^{−r/2}
        for r in [0.3, 2.0, 7.0] {
            let got = bound_wavefunction(&h, 1, 0, r).unwrap();
            let want = r * (1.0 - 0.5 * r) * (-0.5 * r).exp() / 2f64.sqrt();
            assert!((got - want).abs() < 1e-14, "{r}");
        }
    }

    #[test]
    fn vanishes_like_power_at_origin() {
        let p = PotentialParams::new(0.1, 1.0, 0.0).unwrap();
        let level = bound_level(&p, 2, 1).unwrap();
        let r1 = bound_wavefunction(&p, 2, 1, 1e-6).unwrap();
        let r2 = bound_wavefunction(&p, 2, 1, 2e-6).unwrap();
        let slope = (r2 / r1).log2();
        assert!((slope - (level.lambda + 0.5)).abs() < 1e-5);
        assert!(bound_wavefunction(&p, 0, 0, 0.0).is_err());
    }

    #[test]
    fn laguerre_form_equals_hypergeometric_form() {
        let p = PotentialParams::new(-0.2, 1.3, 0.0).unwrap();
        for n in 0..=4 {
            let level = bound_level(&p, n, 1).unwrap();
            for r in [0.1, 1.0, 4.0, 12.0] {
                let m = hyp1f1(
                    Complex64::new(-f64::from(n), 0.0),
                    Complex64::new(1.0 + 2.0 * level.lambda, 0.0),
                    Complex64::new(level.beta * r, 0.0),
                )
                .unwrap()
                .re;
                let via_m = level.nprime
                    * r.powf(level.lambda + 0.5)
                    * (-level.kappa * r).exp()
                    * m;
                let via_l = radial_value(&level, r);
                assert!((via_m - via_l).abs() <= 1e-10 * via_l.abs().max(1e-3), "{n} {r}");
            }
        }
    }

    #[test]
    fn closed_form_laguerre_norm() {
        let p = PotentialParams::new(0.07, 1.4, 0.0).unwrap();
        for n in 0..4 {
            let lv = bound_level(&p, n, 2).unwrap();
            let nf = f64::from(n);
            let s = 2.0 * lv.lambda;
            let want = (s + 2.0) * lv.beta.ln() + ln_gamma_real(nf + 1.0).unwrap()
                - ln_gamma_real(nf + s + 1.0).unwrap()
                - (2.0 * nf + s + 1.0).ln();
            assert!((2.0 * lv.laguerre_norm.ln() - want).abs() < 1e-12);
        }
    }

    #[test]
    fn node_count_is_n() {
        let p = PotentialParams::new(0.05, 1.0, 0.0).unwrap();
        for n in 0..=5 {
            assert_eq!(nodes(&p, n, 0), n as usize);
            assert_eq!(nodes(&p, n, 2), n as usize);
        }
    }

    #[test]
    fn normalized_under_dr_only() {
        let h = hydrogen();
        let dr = bound_normalization_check(&h, 0, 0, Measure::Dr).unwrap();
        assert!((dr.value - 1.0).abs() < 1e-10, "{dr:?}");
        assert!(dr.tail_bound < 1e-15);
        // ∫ 4r⁴e^{−2r} dr = 3
        let r2 = bound_normalization_check(&h, 0, 0, Measure::R2dr).unwrap();
        assert!((r2.value - 3.0).abs() < 1e-10, "{r2:?}");

        let p = PotentialParams::new(-0.5, 2.0, 0.3).unwrap();
        for n in 0..=3 {
            for l in 0..=2 {
                let c = bound_normalization_check(&p, n, l, Measure::Dr).unwrap();
                assert!((c.value - 1.0).abs() < 1e-10, "{n} {l} {c:?}");
            }
        }
    }

    #[test]
    fn same_l_states_are_orthogonal_under_dr() {
        let p = PotentialParams::new(0.1, 1.0, 0.0).unwrap();
        let o = bound_overlap(&p, 0, 1, 0, Measure::Dr).unwrap();
        assert!(o.value.abs() < 1e-10, "{o:?}");
        let o = bound_overlap(&p, 1, 3, 2, Measure::Dr).unwrap();
        assert!(o.value.abs() < 1e-10, "{o:?}");
        let o = bound_overlap(&p, 0, 1, 0, Measure::R2dr).unwrap();
        assert!(o.value.abs() > 1e-3, "{o:?}");
    }
}
