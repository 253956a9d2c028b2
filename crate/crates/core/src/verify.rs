//! The verification suite: closed forms against the numerical oracles.
//!
//! [`cases`] returns independent units of work so a caller can run them in
//! parallel; each yields one or more [`OracleReport`]s. A failing
//! computation becomes a failing report rather than an error.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::bound::{bound_level, bound_normalization_check, bound_overlap, bound_wavefunction, Measure};
use crate::error::{Error, Result};
use crate::model::{epsilon_of, kg_coulomb_to_mie, Channel, PotentialParams, RootChoice};
use crate::oracle::{
    extract_phase, hyp1f1_quadrature_oracle, kg_vs_mie, kummer_residual, laplace_residual_check,
    shoot_bound_state, Derivative, OracleReport, RadialGrid, ToleranceKind,
};
use crate::scattering::{
    asymptotic_wave_corrected, phase_shift_in_channel, scattering_wavefunction_with,
    AmplitudeMode, PartialWaveSum, WaveNormalization,
};
use crate::specfun::{
    hyp1f1_asymptotic, hyp1f1_series, laguerre_overlap, legendre, log_gamma, principal_angle,
};

/// `a₁` values of the standard test matrix.
pub const MATRIX_A1: [f64; 3] = [-0.5, 0.0, 0.1];
pub const MATRIX_A2: [f64; 3] = [0.5, 1.0, 2.0];
pub const MATRIX_E: [f64; 3] = [0.3, 0.5, 2.0];
pub const MATRIX_LMAX: u32 = 2;
pub const MATRIX_NMAX: u32 = 2;

pub const PHASE_TOL: f64 = 1e-4;
pub const ENERGY_REL_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Specfun,
    Model,
    Scattering,
    Bound,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 5] =
        [Suite::Specfun, Suite::Model, Suite::Scattering, Suite::Bound, Suite::Oracle];

    pub fn as_str(&self) -> &'static str {
        match self {
            Suite::Specfun => "specfun",
            Suite::Model => "model",
            Suite::Scattering => "scattering",
            Suite::Bound => "bound",
            Suite::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct VerifyOptions {
    pub only: Option<Suite>,
    /// Root used for every closed-form phase shift; `Irregular` exists to
    /// show that the suite notices.
    pub root: RootChoice,
}

type Job = Box<dyn Fn() -> Result<Vec<OracleReport>> + Send + Sync>;

pub struct Case {
    pub suite: Suite,
    pub name: String,
    job: Job,
}

impl Case {
    fn new(suite: Suite, name: impl Into<String>, job: Job) -> Case {
        Case { suite, name: name.into(), job }
    }

    pub fn run(&self) -> Vec<OracleReport> {
        match (self.job)() {
            Ok(r) => r,
            Err(e) => vec![OracleReport::new(
                self.suite.as_str(),
                format!("{}: {e}", self.name),
                0.0,
                f64::NAN,
                0.0,
                ToleranceKind::Absolute,
            )],
        }
    }
}

impl fmt::Debug for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Case({}, {})", self.suite, self.name)
    }
}

fn params(a1: f64, a2: f64, a3: f64) -> Result<PotentialParams> {
    PotentialParams::new(a1, a2, a3)
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Partial-wave amplitude accumulated one term at a time from separately
/// computed phase shifts and Legendre values (one fresh evaluation per ℓ), with `Σ|term|` as the scale
/// for rounding differences.
pub fn brute_force_amplitude(
    p: &PotentialParams,
    e: f64,
    theta: f64,
    lmax: u32,
    mode: AmplitudeMode,
) -> Result<(Complex64, f64)> {
    let k = epsilon_of(p, e)?;
    let x = theta.cos();
    let mut f = c(0.0, 0.0);
    let mut scale = 0.0;
    for l in 0..=lmax {
        let d = phase_shift_in_channel(p, &Channel::new(p, l)?, e)?.delta;
        let s = c((2.0 * d).cos(), (2.0 * d).sin());
        let numer = match mode {
            AmplitudeMode::Standard => s - 1.0,
            AmplitudeMode::PaperLiteral => s,
        };
        let term = numer * f64::from(2 * l + 1) / c(0.0, 2.0 * k) * legendre(l, x)?;
        f += term;
        scale += term.norm();
    }
    Ok((f, scale))
}

fn specfun_cases() -> Vec<Case> {
    let s = Suite::Specfun;
    let mut out = Vec::new();
    out.push(Case::new(s, "log-gamma reference values", Box::new(|| {
        // mpmath
        let refs = [
            (c(1.0, -1.0), -0.650_923_199_301_856_3, 0.301_640_320_467_533_2),
            (c(0.5, 0.0), 0.572_364_942_924_700_1, 0.0),
            (c(3.7, 12.5), -10.600_199_515_606_331, 23.696_046_042_557_07),
        ];
        let mut r = Vec::new();
        for (z, re, im) in refs {
            let g = log_gamma(z)?;
            r.push(OracleReport::new("specfun", format!("Re lnΓ({z})"), re, g.re, 1e-13, ToleranceKind::Absolute));
            r.push(OracleReport::new("specfun", format!("Im lnΓ({z})"), im, g.im, 1e-13, ToleranceKind::Absolute));
        }
        Ok(r)
    })));
    out.push(Case::new(s, "Kummer transformation", Box::new(|| {
        let pts = [
            (c(0.7, -1.2), c(2.4, 0.0), c(3.0, -4.0)),
            (c(1.5, 0.5), c(4.0, 0.0), c(-8.0, 2.0)),
            (c(1.2, -2.0), c(1.9, 0.0), c(0.0, -15.0)),
        ];
        pts.iter()
            .map(|&(p, q, z)| {
                let lhs = crate::specfun::hyp1f1(p, q, z)?;
                let rhs = z.exp() * crate::specfun::hyp1f1(q - p, q, -z)?;
                Ok(OracleReport::deviation(
                    "specfun",
                    format!("M({p};{q};{z}) - e^z M(q-p;q;-z), relative"),
                    (lhs - rhs).norm() / lhs.norm(),
                    1e-10,
                ))
            })
            .collect()
    })));
    out.push(Case::new(s, "series vs asymptotic 1F1", Box::new(|| {
        let mut r = Vec::new();
        for (lambda, alpha) in [(0.5, 1.0), (1.5, -0.7), (2.5, 2.0)] {
            for t in [32.0, 40.0, 48.0] {
                let (p, q, z) = (c(lambda + 0.5, -alpha), c(1.0 + 2.0 * lambda, 0.0), c(0.0, -t));
                let sr = hyp1f1_series(p, q, z, 2000, 1e-16)?;
                let asy = hyp1f1_asymptotic(p, q, z)?;
                r.push(OracleReport::deviation(
                    "specfun",
                    format!("|M_series - M_asym|/|M| at λ={lambda}, α={alpha}, z={z}"),
                    (sr - asy).norm() / sr.norm(),
                    1e-7,
                ));
            }
        }
        Ok(r)
    })));
    out.push(Case::new(s, "integral representation of 1F1", Box::new(|| {
        let pts = [
            (c(0.3, 0.5), c(2.1, -1.0), c(0.0, -1.0), 7.0),
            (c(2.9, 0.0), c(0.15, 0.3), c(-1.0, 0.5), 4.0),
            (c(1.0, 1.0), c(1.0, -1.0), c(0.0, 1.0), 10.0),
        ];
        pts.iter()
            .map(|&(b, a, mu, y)| {
                let q = hyp1f1_quadrature_oracle(b, a, mu, y)?;
                let sr = crate::specfun::hyp1f1(b, a + b, mu * y)?;
                Ok(OracleReport::deviation(
                    "specfun",
                    format!("quadrature vs series for b'={b}, a'={a}, μy={}", mu * y),
                    (q - sr).norm() / sr.norm(),
                    1e-8,
                ))
            })
            .collect()
    })));
    out.push(Case::new(s, "Laguerre orthogonality", Box::new(|| {
        let mut r = Vec::new();
        for kappa in [0.0, 0.4472135954999579, 2.0] {
            for (n, m) in [(0, 0), (0, 1), (1, 3), (4, 4), (2, 5)] {
                let v = laguerre_overlap(n, m, kappa)?;
                let want = if n == m { 1.0 } else { 0.0 };
                r.push(OracleReport::new(
                    "specfun",
                    format!("<L_{n}, L_{m}> with κ={kappa}"),
                    want,
                    v,
                    1e-8,
                    ToleranceKind::Absolute,
                ));
            }
        }
        Ok(r)
    })));
    out
}

fn model_cases() -> Vec<Case> {
    vec![Case::new(Suite::Model, "presets and KG map", Box::new(|| {
        let mut r = Vec::new();
        let k = PotentialParams::kratzer_fues(2.0, 1.5)?;
        r.push(OracleReport::new("model", "Kratzer V(r_e) = -D_e", -2.0, k.value(1.5)?, 1e-14, ToleranceKind::Absolute));
        let m = kg_coulomb_to_mie(1.2, 1.0, 0.1, 1.0)?;
        r.push(OracleReport::new("model", "KG a1 = (Zα)²/2", 0.005, m.params.a1, 1e-16, ToleranceKind::Absolute));
        r.push(OracleReport::new("model", "KG a2 = E Zα", 0.12, m.params.a2, 1e-16, ToleranceKind::Absolute));
        r.push(OracleReport::new("model", "KG ε² = E² - m²", 0.44, m.eps_sq, 1e-15, ToleranceKind::Absolute));
        Ok(r)
    }))]
}

fn scattering_cases(root: RootChoice) -> Vec<Case> {
    let s = Suite::Scattering;
    let mut out = Vec::new();
    out.push(Case::new(s, "Coulomb limit", Box::new(move || {
        let mut r = Vec::new();
        for (a2, l, e) in [(1.0, 0, 0.5), (-0.7, 1, 0.3), (2.0, 2, 2.0), (0.3, 4, 1.1)] {
            let p = params(0.0, a2, 0.0)?;
            let sol = phase_shift_in_channel(&p, &Channel::with_root(&p, l, root)?, e)?;
            let eps = epsilon_of(&p, e)?;
            let want = log_gamma(c(f64::from(l) + 1.0, -a2 / eps))?.im;
            r.push(OracleReport::deviation(
                "scattering",
                format!("δ - arg Γ(ℓ+1-ia₂/ε) at a₂={a2}, ℓ={l}, E={e}"),
                principal_angle(sol.delta - want).abs(),
                1e-12,
            ));
        }
        Ok(r)
    })));
    out.push(Case::new(s, "wave function reality and asymptotics", Box::new(move || {
        let mut r = Vec::new();
        for (a1, a2, l, e) in [(0.1, 1.0, 0, 0.5), (-0.5, 2.0, 2, 0.3), (0.0, -0.5, 1, 2.0)] {
            let p = params(a1, a2, 0.0)?;
            let ch = Channel::with_root(&p, l, root)?;
            let sol = phase_shift_in_channel(&p, &ch, e)?;
            let (mut max_im, mut max_abs, mut max_dev) = (0.0f64, 0.0f64, 0.0f64);
            for i in 0..=60 {
                let rho = 50.0 + 0.5 * f64::from(i);
                let rr = rho / sol.epsilon;
                let w = scattering_wavefunction_with(&p, &ch, e, rr, WaveNormalization::UnitFlux)?;
                max_im = max_im.max(w.im.abs());
                max_abs = max_abs.max(w.norm());
                max_dev = max_dev.max((w.re - asymptotic_wave_corrected(&sol, a2, rr)?).abs());
            }
            for i in 1..=40 {
                let rr = 0.5 * f64::from(i) / sol.epsilon;
                let w = scattering_wavefunction_with(&p, &ch, e, rr, WaveNormalization::UnitFlux)?;
                max_im = max_im.max(w.im.abs());
                max_abs = max_abs.max(w.norm());
            }
            let tag = format!("a₁={a1}, a₂={a2}, ℓ={l}, E={e}");
            r.push(OracleReport::deviation("scattering", format!("max|Im R|/max|R| ({tag})"), max_im / max_abs, 1e-9));
            r.push(OracleReport::deviation("scattering", format!("max|R - R_asym| on εr∈[50,80] ({tag})"), max_dev, 1e-5));
        }
        Ok(r)
    })));
    out.push(Case::new(s, "amplitude sum and unitarity", Box::new(|| {
        let mut r = Vec::new();
        let p = params(0.1, 1.0, 0.0)?;
        for mode in [AmplitudeMode::Standard, AmplitudeMode::PaperLiteral] {
            let sum = PartialWaveSum::new(&p, 0.5, 12, mode)?;
            let mut worst = 0.0f64;
            for theta in [0.1, 0.7, 1.5, 2.5, PI] {
                let a = sum.at(theta)?.amplitude;
                let (b, scale) = brute_force_amplitude(&p, 0.5, theta, 12, mode)?;
                worst = worst.max((a - b).norm() / scale);
            }
            r.push(OracleReport::deviation("scattering", format!("|F - F_brute|/Σ|terms| ({mode:?})"), worst, 1e-13));
            let unit = sum.solutions.iter().map(|s| (s.s_matrix().norm() - 1.0).abs()).fold(0.0, f64::max);
            r.push(OracleReport::deviation("scattering", "max ||e^{2iδ}| - 1|", unit, 1e-15));
        }
        Ok(r)
    })));
    out
}

fn bound_cases() -> Vec<Case> {
    let s = Suite::Bound;
    let mut out = Vec::new();
    out.push(Case::new(s, "hydrogen reduction", Box::new(|| {
        let mut worst = 0.0f64;
        for z in [1.0, 2.0] {
            let p = params(0.0, z, 0.0)?;
            for n in 0..=5 {
                for l in 0..=5 {
                    let e = bound_level(&p, n, l)?.energy;
                    let want = -z * z / (2.0 * f64::from(n + l + 1).powi(2));
                    worst = worst.max((e - want).abs() / want.abs());
                }
            }
        }
        Ok(vec![OracleReport::deviation("bound", "max rel error vs -Z²/2(n+ℓ+1)², n,ℓ≤5", worst, 1e-14)])
    })));
    out.push(Case::new(s, "poles, normalization, nodes", Box::new(|| {
        let mut r = Vec::new();
        let p = params(0.1, 1.0, 0.2)?;
        for n in 0..=3 {
            for l in 0..=2 {
                let level = bound_level(&p, n, l)?;
                let tag = format!("n={n}, ℓ={l}");
                r.push(OracleReport::deviation("bound", format!("pole residual ({tag})"), level.pole_residual(&p), 1e-12));
                let norm = bound_normalization_check(&p, n, l, Measure::Dr)?;
                r.push(OracleReport::new("bound", format!("∫R² dr ({tag})"), 1.0, norm.value, 1e-8, ToleranceKind::Absolute));
                let nodes = count_nodes(&p, n, l, level.kappa)?;
                r.push(OracleReport::new("bound", format!("node count ({tag})"), f64::from(n), f64::from(nodes), 0.0, ToleranceKind::Absolute));
            }
        }
        let o = bound_overlap(&p, 0, 2, 1, Measure::Dr)?;
        r.push(OracleReport::deviation("bound", "∫R_0 R_2 dr, ℓ=1", o.value.abs(), 1e-8));
        Ok(r)
    })));
    out
}

/// Sign changes of `R_{nℓ}` on a fine grid out to `60/κ`.
pub fn count_nodes(p: &PotentialParams, n: u32, l: u32, kappa: f64) -> Result<u32> {
    let r_end = 60.0 / kappa;
    let mut count = 0;
    let mut sign = 0.0;
    for i in 1..=20_000 {
        let v = bound_wavefunction(p, n, l, r_end * f64::from(i) / 20_000.0)?;
        if v != 0.0 {
            if sign != 0.0 && v.signum() != sign {
                count += 1;
            }
            sign = v.signum();
        }
    }
    Ok(count)
}

/// Numerov tail fit against the closed-form `δ` for one matrix point.
pub fn phase_report(p: &PotentialParams, l: u32, e: f64, root: RootChoice) -> Result<OracleReport> {
    let sol = phase_shift_in_channel(p, &Channel::with_root(p, l, root)?, e)?;
    let grid = RadialGrid::for_phase(sol.epsilon)?;
    let fit = extract_phase(p, l, e, &grid)?;
    Ok(OracleReport::new(
        "oracle",
        format!("δ at a₁={}, a₂={}, ℓ={l}, E={e}", p.a1, p.a2),
        sol.delta,
        fit.delta,
        PHASE_TOL,
        ToleranceKind::Absolute,
    )
    .with_grid(grid))
}

/// Shooting eigenvalue against the closed-form level for one matrix point.
pub fn energy_report(p: &PotentialParams, n: u32, l: u32) -> Result<OracleReport> {
    let level = bound_level(p, n, l)?;
    let shot = shoot_bound_state(p, l, n, None)?;
    Ok(OracleReport::new(
        "oracle",
        format!("E at a₁={}, a₂={}, n={n}, ℓ={l}", p.a1, p.a2),
        level.energy,
        shot.energy,
        ENERGY_REL_TOL,
        ToleranceKind::Relative,
    ))
}

fn oracle_cases(root: RootChoice) -> Vec<Case> {
    let s = Suite::Oracle;
    let mut out = Vec::new();
    for a1 in MATRIX_A1 {
        for a2 in MATRIX_A2 {
            for l in 0..=MATRIX_LMAX {
                out.push(Case::new(s, format!("phase a₁={a1} a₂={a2} ℓ={l}"), Box::new(move || {
                    let p = params(a1, a2, 0.0)?;
                    MATRIX_E.iter().map(|&e| phase_report(&p, l, e, root)).collect()
                })));
                out.push(Case::new(s, format!("shooting a₁={a1} a₂={a2} ℓ={l}"), Box::new(move || {
                    let p = params(a1, a2, 0.0)?;
                    (0..=MATRIX_NMAX).map(|n| energy_report(&p, n, l)).collect()
                })));
            }
        }
    }
    out.push(Case::new(s, "transformed-equation residuals", Box::new(move || {
        let mut r = Vec::new();
        for a1 in MATRIX_A1 {
            for l in 0..=MATRIX_LMAX {
                let p = params(a1, 1.0, 0.0)?;
                let a = Channel::with_root(&p, l, root)?.a_root;
                for alpha in [-1.0, 0.5, 2.0] {
                    let lap = laplace_residual_check(a, alpha, &[0.5, 1.0, 2.0, 5.0])?;
                    r.push(OracleReport::deviation("oracle", format!("Laplace-image residual A={a:.6}, α={alpha}"), lap, 1e-6));
                    let t = [0.5, 3.0, 12.0, 28.0, 45.0, 70.0];
                    let kum = kummer_residual(a, alpha, &t, Derivative::Richardson(1e-2))?;
                    r.push(OracleReport::deviation("oracle", format!("Kummer-equation residual A={a:.6}, α={alpha}"), kum, 1e-6));
                }
            }
        }
        Ok(r)
    })));
    out.push(Case::new(s, "KG map", Box::new(|| {
        let grid = RadialGrid::with_step(1e-6, 60.0, 1e-3)?;
        (0..=2)
            .map(|l| {
                let cmp = kg_vs_mie(1.2, 1.0, 0.1, l, &grid)?;
                Ok(OracleReport::deviation("oracle", format!("KG vs mapped Mie Numerov, ℓ={l}"), cmp.max_rel_diff, 1e-10)
                    .with_grid(grid))
            })
            .collect()
    })));
    out
}

/// All cases selected by `opts`, in a fixed order.
pub fn cases(opts: &VerifyOptions) -> Vec<Case> {
    let mut all = Vec::new();
    for suite in Suite::ALL {
        if opts.only.is_some_and(|o| o != suite) {
            continue;
        }
        all.extend(match suite {
            Suite::Specfun => specfun_cases(),
            Suite::Model => model_cases(),
            Suite::Scattering => scattering_cases(opts.root),
            Suite::Bound => bound_cases(),
            Suite::Oracle => oracle_cases(opts.root),
        });
    }
    all
}

/// Runs every selected case on the current thread.
pub fn run(opts: &VerifyOptions) -> Vec<OracleReport> {
    cases(opts).iter().flat_map(Case::run).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.as_str().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn quick_suites_pass() {
        for suite in [Suite::Specfun, Suite::Model, Suite::Scattering, Suite::Bound] {
            let opts = VerifyOptions { only: Some(suite), ..Default::default() };
            for r in run(&opts) {
                assert!(r.pass, "{r:?}");
            }
        }
    }

    #[test]
    fn wrong_root_is_caught() {
        let opts = VerifyOptions { only: Some(Suite::Scattering), root: RootChoice::Irregular };
        let reports = run(&opts);
        assert!(reports.iter().any(|r| r.quantity_name.starts_with("δ - arg Γ") && !r.pass));
    }
}
