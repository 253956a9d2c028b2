//! The Mie-type potential `V(r) = −a₁/r² − a₂/r + a₃`, its presets, and the
//! per-partial-wave quantities derived from it.
//!
//! Units are `e = ħ = m = 1`. With `ε² = 2(E − a₃)` the reduced radial
//! equation reads
//!
//! ```text
//! R'' + [2a₂/r − (ℓ(ℓ+1) − 2a₁)/r² + ε²] R = 0
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialParams {
    /// Strength of the attractive inverse-square term.
    pub a1: f64,
    /// Strength of the attractive Coulomb term.
    pub a2: f64,
    /// Constant shift; the continuum threshold.
    pub a3: f64,
}

impl PotentialParams {
    pub fn new(a1: f64, a2: f64, a3: f64) -> Result<Self> {
        if !(a1.is_finite() && a2.is_finite() && a3.is_finite()) {
            return Err(Error::Parameter(format!(
                "potential parameters must be finite, got ({a1}, {a2}, {a3})"
            )));
        }
        Ok(PotentialParams { a1, a2, a3 })
    }

    /// Kratzer–Fues `V = −D_e(2r_e/r − r_e²/r²)`, minimum `−D_e` at `r_e`.
    pub fn kratzer_fues(de: f64, re: f64) -> Result<Self> {
        check_preset(de, re)?;
        PotentialParams::new(-de * re * re, 2.0 * de * re, 0.0)
    }

    /// Modified Kratzer assignment `a₁ = D_e r_e²`, `a₂ = −2D_e r_e`,
    /// `a₃ = D_e`.
    ///
    /// Note that this assignment gives `V = 2D_e − D_e((r − r_e)/r)²`: it
    /// tends to `D_e` at infinity but equals `2D_e` at `r_e`.
    pub fn modified_kratzer(de: f64, re: f64) -> Result<Self> {
        check_preset(de, re)?;
        PotentialParams::new(de * re * re, -2.0 * de * re, de)
    }

    /// Pure attractive Coulomb `−Z/r`.
    pub fn coulomb(z: f64) -> Result<Self> {
        PotentialParams::new(0.0, z, 0.0)
    }

    pub fn value(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::Domain(format!("potential needs r > 0, got {r}")));
        }
        Ok(-self.a1 / (r * r) - self.a2 / r + self.a3)
    }

    /// The coefficient `q(r)` of `R'' + q(r) R = 0` at energy `e`.
    pub fn radial_coefficient(&self, l: u32, e: f64, r: f64) -> f64 {
        let lf = f64::from(l);
        2.0 * self.a2 / r - (lf * (lf + 1.0) - 2.0 * self.a1) / (r * r) + 2.0 * (e - self.a3)
    }
}

/// `V(r)` for the given parameters.
pub fn potential_value(p: &PotentialParams, r: f64) -> Result<f64> {
    p.value(r)
}

fn check_preset(de: f64, re: f64) -> Result<()> {
    if de > 0.0 && re > 0.0 && de.is_finite() && re.is_finite() {
        Ok(())
    } else {
        Err(Error::Parameter(format!(
            "presets need D_e > 0 and r_e > 0, got D_e = {de}, r_e = {re}"
        )))
    }
}

/// Which root of `A² = ℓ(ℓ+1) − 2a₁ + 1/4` is used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootChoice {
    /// `A = −λ`: the wave function `r^{−A+1/2}` vanishes at the origin.
    #[default]
    Regular,
    /// `A = +λ`. Only useful to show what goes wrong with the other root.
    Irregular,
}

/// Quantities of one partial wave.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Channel {
    pub l: u32,
    /// `λ = √((ℓ+1/2)² − 2a₁) > 0`
    pub lambda: f64,
    /// The adopted root `A`; `−λ` unless built with [`RootChoice::Irregular`].
    pub a_root: f64,
}

impl Channel {
    pub fn new(p: &PotentialParams, l: u32) -> Result<Self> {
        Channel::with_root(p, l, RootChoice::Regular)
    }

    pub fn with_root(p: &PotentialParams, l: u32, root: RootChoice) -> Result<Self> {
        let lf = f64::from(l);
        let barrier = (lf + 0.5) * (lf + 0.5);
        let two_a1 = 2.0 * p.a1;
        let lambda_sq = lf * (lf + 1.0) + 0.25 - two_a1;
        if !(lambda_sq > 0.0) {
            return Err(Error::FallToCenter { l, two_a1, barrier });
        }
        let lambda = lambda_sq.sqrt();
        let a_root = match root {
            RootChoice::Regular => -lambda,
            RootChoice::Irregular => lambda,
        };
        Ok(Channel { l, lambda, a_root })
    }

    /// `ℓ(ℓ+1) − 2a₁`, the effective centrifugal strength.
    pub fn centrifugal(&self) -> f64 {
        self.lambda * self.lambda - 0.25
    }
}

pub fn make_channel(p: &PotentialParams, l: u32) -> Result<Channel> {
    Channel::new(p, l)
}

/// `ε = √(2(E − a₃))` in the scattering regime `E > a₃`.
pub fn epsilon_of(p: &PotentialParams, e: f64) -> Result<f64> {
    if !e.is_finite() {
        return Err(Error::Parameter(format!("energy must be finite, got {e}")));
    }
    if e <= p.a3 {
        return Err(Error::Regime {
            regime: "scattering",
            detail: format!("E = {e} <= a3 = {}", p.a3),
        });
    }
    Ok((2.0 * (e - p.a3)).sqrt())
}

/// Pure Coulomb reference `V = ηk/r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoulombReference {
    /// Sommerfeld parameter; negative for attraction.
    pub eta: f64,
    pub k: f64,
}

pub fn coulomb_reference(p: &PotentialParams, e: f64) -> Result<CoulombReference> {
    if p.a1 != 0.0 || p.a3 != 0.0 {
        return Err(Error::Applicability(format!(
            "Coulomb reference needs a1 = a3 = 0, got a1 = {}, a3 = {}",
            p.a1, p.a3
        )));
    }
    let k = epsilon_of(p, e)?;
    Ok(CoulombReference { eta: -p.a2 / k, k })
}

/// Mie parameters whose radial equation coincides with that of a
/// Klein–Gordon particle in a Coulomb field (natural units `c = ħ = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KgMapping {
    /// `a₁ = (Zα)²/2`, `a₂ = E Z α`, `a₃ = 0`.
    pub params: PotentialParams,
    /// `ε² = E² − m²`.
    pub eps_sq: f64,
}

impl KgMapping {
    /// The Mie energy `ε²/2` (with `a₃ = 0`) equivalent to the KG energy.
    pub fn mie_energy(&self) -> f64 {
        0.5 * self.eps_sq
    }

    pub fn epsilon(&self) -> Result<f64> {
        if self.eps_sq <= 0.0 {
            return Err(Error::Regime {
                regime: "scattering",
                detail: format!("E^2 - m^2 = {} <= 0", self.eps_sq),
            });
        }
        Ok(self.eps_sq.sqrt())
    }
}

/// Match `R'' + [E²−m² + 2EZα/r − (ℓ(ℓ+1) − Z²α²)/r²] R = 0` term by term
/// against the Mie radial equation.
pub fn kg_coulomb_to_mie(e: f64, m: f64, z: f64, alpha_fs: f64) -> Result<KgMapping> {
    if !(e.is_finite() && m.is_finite() && z.is_finite() && alpha_fs.is_finite()) {
        return Err(Error::Parameter("KG map needs finite inputs".into()));
    }
    if !(m > 0.0) || z < 0.0 || !(alpha_fs > 0.0) {
        return Err(Error::Parameter(format!(
            "KG map needs m > 0, Z >= 0, alpha > 0; got m = {m}, Z = {z}, alpha = {alpha_fs}"
        )));
    }
    let za = z * alpha_fs;
    Ok(KgMapping {
        params: PotentialParams::new(0.5 * za * za, e * za, 0.0)?,
        eps_sq: e * e - m * m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn potential_values() {
        assert_eq!(PotentialParams::new(0.0, 0.0, 0.0).unwrap().value(1.0).unwrap(), 0.0);
        assert_eq!(PotentialParams::new(1.0, 2.0, 3.0).unwrap().value(1.0).unwrap(), 0.0);
        let kf = PotentialParams::kratzer_fues(2.0, 1.0).unwrap();
        assert_eq!(kf.value(1.0).unwrap(), -2.0);
        assert!(matches!(kf.value(0.0), Err(Error::Domain(_))));
        assert!(kf.value(-1.0).is_err());
    }

    #[test]
    fn presets() {
        let kf = PotentialParams::kratzer_fues(1.0, 1.0).unwrap();
        assert_eq!((kf.a1, kf.a2, kf.a3), (-1.0, 2.0, 0.0));
        let kf = PotentialParams::kratzer_fues(2.0, 0.5).unwrap();
        assert_eq!((kf.a1, kf.a2, kf.a3), (-0.5, 2.0, 0.0));
        assert_eq!(kf.value(0.5).unwrap(), -2.0);

        let mk = PotentialParams::modified_kratzer(1.0, 1.0).unwrap();
        assert_eq!((mk.a1, mk.a2, mk.a3), (1.0, -2.0, 1.0));
        assert!((mk.value(1e9).unwrap() - 1.0).abs() < 1e-8);
        assert!(PotentialParams::kratzer_fues(0.0, 1.0).is_err());
        assert!(PotentialParams::modified_kratzer(1.0, -1.0).is_err());
    }

    #[test]
    fn preset_shapes_pointwise() {
        let (de, re) = (1.7, 0.8);
        let kf = PotentialParams::kratzer_fues(de, re).unwrap();
        let mk = PotentialParams::modified_kratzer(de, re).unwrap();
        let mut r = 0.1;
        while r <= 100.0 {
            let v = kf.value(r).unwrap();
            let shape = -de * (2.0 * re / r - re * re / (r * r));
            assert!((v - shape).abs() <= 1e-14 * shape.abs().max(1.0), "r = {r}");
            let v = mk.value(r).unwrap();
            let x = (r - re) / r;
            let shape = 2.0 * de - de * x * x;
            assert!((v - shape).abs() <= 1e-14 * shape.abs().max(1.0), "r = {r}");
            r *= 1.07;
        }
    }

    #[test]
    fn channels() {
        let free = PotentialParams::new(0.0, 1.0, 0.0).unwrap();
        let ch = Channel::new(&free, 0).unwrap();
        assert_eq!((ch.lambda, ch.a_root), (0.5, -0.5));
        let ch = Channel::new(&free, 2).unwrap();
        assert_eq!((ch.lambda, ch.a_root), (2.5, -2.5));
        let p = PotentialParams::new(0.12, 1.0, 0.0).unwrap();
        let ch = Channel::new(&p, 0).unwrap();
        assert!((ch.lambda - 0.1).abs() < 1e-15 && (ch.a_root + 0.1).abs() < 1e-15);
        let ch = Channel::with_root(&p, 0, RootChoice::Irregular).unwrap();
        assert!(ch.a_root > 0.0);
    }

    #[test]
    fn fall_to_center() {
        let p = PotentialParams::new(0.125, 1.0, 0.0).unwrap();
        assert!(matches!(Channel::new(&p, 0), Err(Error::FallToCenter { l: 0, .. })));
        assert!(Channel::new(&p, 1).is_ok());
    }

    #[test]
    fn channel_root_squares_back() {
        for a1 in [-3.0, -0.5, 0.0, 0.1, 0.12, 1.9] {
            let p = PotentialParams::new(a1, 1.0, 0.0).unwrap();
            for l in 0..8u32 {
                let Ok(ch) = Channel::new(&p, l) else { continue };
                let lf = f64::from(l);
                let target = lf * (lf + 1.0) - 2.0 * a1 + 0.25;
                assert!((ch.a_root * ch.a_root - target).abs() < 1e-14 * target.max(1.0));
            }
        }
    }

    #[test]
    fn epsilon() {
        let p = PotentialParams::new(0.0, 0.0, 0.0).unwrap();
        assert_eq!(epsilon_of(&p, 0.5).unwrap(), 1.0);
        assert!(matches!(epsilon_of(&p, 0.0), Err(Error::Regime { .. })));
        let p = PotentialParams::new(0.0, 0.0, 1.0).unwrap();
        assert_eq!(epsilon_of(&p, 3.0).unwrap(), 2.0);
    }

    #[test]
    fn coulomb_references() {
        let c = coulomb_reference(&PotentialParams::coulomb(1.0).unwrap(), 0.5).unwrap();
        assert_eq!((c.k, c.eta), (1.0, -1.0));
        let c = coulomb_reference(&PotentialParams::coulomb(0.0).unwrap(), 2.0).unwrap();
        assert_eq!(c.eta, 0.0);
        let c = coulomb_reference(&PotentialParams::coulomb(-1.0).unwrap(), 0.5).unwrap();
        assert_eq!(c.eta, 1.0);
        // ηk/r reproduces −a2/r
        assert_eq!(c.eta * c.k, 1.0);
        let shifted = PotentialParams::new(0.0, 1.0, 0.2).unwrap();
        assert!(matches!(coulomb_reference(&shifted, 1.0), Err(Error::Applicability(_))));
    }

    #[test]
    fn kg_mapping() {
        let m = kg_coulomb_to_mie(1.2, 1.0, 1.0, 0.1).unwrap();
        assert!((m.params.a1 - 0.005).abs() < 1e-16);
        assert!((m.params.a2 - 0.12).abs() < 1e-16);
        assert!((m.eps_sq - 0.44).abs() < 1e-15);
        let free = kg_coulomb_to_mie(1.5, 1.0, 0.0, 0.1).unwrap();
        assert_eq!((free.params.a1, free.params.a2), (0.0, 0.0));
        assert!((free.eps_sq - 1.25).abs() < 1e-15);
        let edge = kg_coulomb_to_mie(1.0, 1.0, 3.0, 0.1).unwrap();
        assert!(matches!(edge.epsilon(), Err(Error::Regime { .. })));
    }
}
