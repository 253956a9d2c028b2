//! Bound-state eigenvalues by shooting on a logarithmic grid.
//!
//! With `x = ln r` and `R = √r u` the radial equation becomes
//! `u″ = [λ² − 2a₂eˣ + κ²e^{2x}] u`, `κ² = 2(a₃ − E)`, which has no
//! singular coefficients and resolves the origin and the tail equally well.

use serde::{Deserialize, Serialize};

use super::numerov::{frobenius, numerov_sweep, Sweep};
use crate::error::{Error, Result};
use crate::model::{Channel, PotentialParams};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShootingConfig {
    /// Step in `ln r`.
    pub h: f64,
    /// Absolute tolerance on the energy.
    pub tol: f64,
    pub max_iter: u32,
}

impl Default for ShootingConfig {
    fn default() -> Self {
        ShootingConfig { h: 1e-3, tol: 1e-10, max_iter: 200 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundShot {
    pub energy: f64,
    /// Bracket isolating the level, after node-count refinement.
    pub bracket: (f64, f64),
    pub iterations: u32,
    pub matching_radius: f64,
    pub r_min: f64,
    pub r_max: f64,
}

struct Problem {
    lambda: f64,
    a2: f64,
    a3: f64,
    x_min: f64,
    n: usize,
    h: f64,
}

impl Problem {
    fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.h
    }

    fn k2(&self, e: f64) -> impl Fn(f64) -> f64 {
        let (l2, a2, kappa2) = (self.lambda * self.lambda, self.a2, 2.0 * (self.a3 - e));
        move |x| -(l2 - 2.0 * a2 * x.exp() + kappa2 * (2.0 * x).exp())
    }

    fn outward(&self, e: f64, n: usize) -> Result<Sweep> {
        let eps_sq = 2.0 * (e - self.a3);
        let seed = |x: f64| frobenius(self.lambda, self.a2, eps_sq, x.exp()) * (-0.5 * x).exp();
        let (x0, x1) = (self.x(0), self.x(1));
        numerov_sweep(x0, self.h, n, self.k2(e), seed(x0), seed(x1))
    }

    fn inward(&self, e: f64, n: usize) -> Result<Sweep> {
        numerov_sweep(self.x(self.n - 1), -self.h, n, self.k2(e), 0.0, 1e-30)
    }

    fn nodes(&self, e: f64) -> Result<u32> {
        let s = self.outward(e, self.n)?;
        let mut count = 0;
        let mut sign = 0.0;
        for &v in &s.values[1..] {
            if v != 0.0 {
                if sign != 0.0 && v.signum() != sign {
                    count += 1;
                }
                sign = v.signum();
            }
        }
        Ok(count)
    }

    /// Grid index of the outer classical turning point, by bisection on
    /// `g(x) = λ² − 2a₂eˣ + κ²e^{2x}`.
    fn matching_index(&self, e: f64) -> usize {
        let kappa2 = 2.0 * (self.a3 - e);
        let g = |x: f64| self.lambda.powi(2) - 2.0 * self.a2 * x.exp() + kappa2 * (2.0 * x).exp();
        let x_end = self.x(self.n - 1);
        let x_low = if kappa2 > 0.0 { (self.a2 / kappa2).ln().min(x_end) } else { x_end };
        let x_m = if g(x_low) < 0.0 && g(x_end) > 0.0 {
            let (mut lo, mut hi) = (x_low, x_end);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if g(mid) < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            lo
        } else {
            x_low
        };
        let i = ((x_m - self.x_min) / self.h).round() as usize;
        i.clamp(10, self.n - 11)
    }

    /// Normalized Wronskian of the outward and inward solutions at the
    /// matching point; its sign does not depend on where they are matched.
    fn mismatch(&self, e: f64) -> Result<(f64, usize)> {
        let m = self.matching_index(e);
        let out = self.outward(e, m + 2)?.values;
        let inn = self.inward(e, self.n - m + 1)?.values;
        // inward index j corresponds to outward index n-1-j
        let j = self.n - 1 - m;
        let (uo, duo) = (out[m], (out[m + 1] - out[m - 1]) / (2.0 * self.h));
        let (ui, dui) = (inn[j], (inn[j - 1] - inn[j + 1]) / (2.0 * self.h));
        let w = duo * ui - uo * dui;
        Ok((w / ((uo * uo + duo * duo) * (ui * ui + dui * dui)).sqrt(), m))
    }
}

/// Energy of the level with `n` nodes in partial wave `l`. Without a
/// bracket one is found from node counts between the bottom of the
/// effective potential and `a₃`.
pub fn shoot_bound_state(
    p: &PotentialParams,
    l: u32,
    n: u32,
    bracket: Option<(f64, f64)>,
) -> Result<BoundShot> {
    shoot_bound_state_with(p, l, n, bracket, &ShootingConfig::default())
}

pub fn shoot_bound_state_with(
    p: &PotentialParams,
    l: u32,
    n: u32,
    bracket: Option<(f64, f64)>,
    cfg: &ShootingConfig,
) -> Result<BoundShot> {
    if !(p.a2 > 0.0) {
        return Err(Error::NotAttractive(p.a2));
    }
    let lambda = Channel::new(p, l)?.lambda;
    // Box large enough for the n-node state: a few Bohr-like radii past
    // its turning point, with a decay margin.
    let nu = f64::from(n) + lambda + 1.0;
    let r_min = 1e-4 * lambda.min(1.0) / p.a2;
    let r_max = (2.0 * nu * nu + 40.0 * nu) / p.a2;
    let (x_min, x_max) = (r_min.ln(), r_max.ln());
    let steps = ((x_max - x_min) / cfg.h).ceil() as usize;
    let prob = Problem {
        lambda,
        a2: p.a2,
        a3: p.a3,
        x_min,
        n: steps + 1,
        h: (x_max - x_min) / steps as f64,
    };

    let (mut lo, mut hi) = match bracket {
        Some((a, b)) => {
            if !(a < b) {
                return Err(Error::Bracket(format!("empty bracket [{a}, {b}]")));
            }
            (a, b)
        }
        // g(x) > 0 everywhere below this energy, so no state lies there
        None => (p.a3 - 0.5 * p.a2 * p.a2 / (lambda * lambda) * 1.001, p.a3),
    };
    let (n_lo, n_hi) = (prob.nodes(lo)?, prob.nodes(hi)?);
    if !(n_lo <= n && n_hi > n) {
        return Err(Error::Bracket(format!(
            "node counts {n_lo} and {n_hi} at [{lo}, {hi}] do not straddle {n}"
        )));
    }
    let mut iterations = 0;
    // narrow until the bracket holds this level only
    let mut n_hi = n_hi;
    let mut n_lo = n_lo;
    while n_lo < n || n_hi > n + 1 {
        iterations += 1;
        if iterations > cfg.max_iter {
            return Err(Error::NonConvergence { what: "node bracketing", terms: iterations as usize });
        }
        let mid = 0.5 * (lo + hi);
        let k = prob.nodes(mid)?;
        if k <= n {
            lo = mid;
            n_lo = k;
        } else {
            hi = mid;
            n_hi = k;
        }
    }
    let isolated = (lo, hi);

    let (mut w_lo, _) = prob.mismatch(lo)?;
    let (w_hi, _) = prob.mismatch(hi)?;
    if w_lo * w_hi > 0.0 {
        return Err(Error::Bracket(format!(
            "matching mismatch does not change sign on [{lo}, {hi}]"
        )));
    }
    let mut m = 0;
    while hi - lo > cfg.tol {
        iterations += 1;
        if iterations > cfg.max_iter {
            return Err(Error::NonConvergence { what: "shooting bisection", terms: iterations as usize });
        }
        let mid = 0.5 * (lo + hi);
        let (w, mi) = prob.mismatch(mid)?;
        m = mi;
        if w == 0.0 {
            lo = mid;
            hi = mid;
        } else if (w > 0.0) == (w_lo > 0.0) {
            lo = mid;
            w_lo = w;
        } else {
            hi = mid;
        }
    }
    Ok(BoundShot {
        energy: 0.5 * (lo + hi),
        bracket: isolated,
        iterations,
        matching_radius: prob.x(m).exp(),
        r_min,
        r_max,
    })
}
