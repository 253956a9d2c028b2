use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Channel, PotentialParams};

/// Uniform grid `r_i = r_min + i h`, `i = 0..n_points`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub n_points: usize,
}

impl RadialGrid {
    pub fn new(r_min: f64, r_max: f64, n_points: usize) -> Result<Self> {
        if !(r_min > 0.0 && r_min < r_max && r_max.is_finite()) {
            return Err(Error::Parameter(format!(
                "grid needs 0 < r_min < r_max, got [{r_min}, {r_max}]"
            )));
        }
        if n_points < 100 {
            return Err(Error::Parameter(format!("grid needs >= 100 points, got {n_points}")));
        }
        Ok(RadialGrid { r_min, r_max, n_points })
    }

    /// Grid with step at most `h`.
    pub fn with_step(r_min: f64, r_max: f64, h: f64) -> Result<Self> {
        if !(h > 0.0) {
            return Err(Error::Parameter(format!("step must be positive, got {h}")));
        }
        let n = ((r_max - r_min) / h).ceil() as usize + 1;
        RadialGrid::new(r_min, r_max, n.max(100))
    }

    /// Default for phase extraction: `r_max = 80/ε`, `h = 1e−4/ε`, starting
    /// at `r_min = 1e−2/ε` from the series solution. Starting much closer to
    /// the origin than `h` lets the first steps feed in the irregular
    /// solution, which is barely suppressed when λ is small.
    pub fn for_phase(epsilon: f64) -> Result<Self> {
        RadialGrid::with_step(1e-2 / epsilon, 80.0 / epsilon, 1e-4 / epsilon)
    }

    pub fn step(&self) -> f64 {
        (self.r_max - self.r_min) / (self.n_points - 1) as f64
    }

    pub fn r(&self, i: usize) -> f64 {
        self.r_min + i as f64 * self.step()
    }
}

/// Regular solution `r^{λ+1/2} Σ c_k r^k` with `c₀ = 1` of
/// `R″ + [2a₂/r − (λ² − 1/4)/r² + ε²] R = 0` (`ε²` may be negative).
pub fn frobenius(lambda: f64, a2: f64, eps_sq: f64, r: f64) -> f64 {
    let (mut c2, mut c1) = (0.0, 1.0);
    let mut sum = 1.0;
    let mut rk = 1.0;
    let mut prev_term = 1.0f64;
    for k in 1..400 {
        let kf = f64::from(k);
        let c = -(2.0 * a2 * c1 + eps_sq * c2) / (kf * (kf + 2.0 * lambda));
        rk *= r;
        let term = c * rk;
        sum += term;
        // the recurrence has two terms, so one vanishing term is not enough
        if term.abs().max(prev_term.abs()) <= 1e-18 * sum.abs() {
            break;
        }
        prev_term = term;
        c2 = c1;
        c1 = c;
    }
    r.powf(lambda + 0.5) * sum
}

/// Values of a Numerov sweep; the true solution is `values · e^{ln_scale}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub values: Vec<f64>,
    pub ln_scale: f64,
}

const RESCALE_AT: f64 = 1e200;

/// Numerov recursion for `y″ = −k²(x) y` on `x_i = x0 + i h` (h may be
/// negative), started from `y0`, `y1`.
pub fn numerov_sweep<F>(x0: f64, h: f64, n: usize, k2: F, y0: f64, y1: f64) -> Result<Sweep>
where
    F: Fn(f64) -> f64,
{
    if n < 2 {
        return Err(Error::Parameter("sweep needs at least two points".into()));
    }
    // Carried as w = (1 + h²k²/12) y so that k² enters through h²k²y at
    // full precision; the textbook form keeps only ~8 digits of k² when
    // h ~ 1e−4:
    //   w_{i+1} = 2w_i − w_{i−1} − h²k_i² y_i
    let h2 = h * h;
    let mut values = Vec::with_capacity(n);
    values.push(y0);
    values.push(y1);
    let mut ln_scale = 0.0;
    let mut k_cur = k2(x0 + h);
    let mut w_prev = (1.0 + h2 * k2(x0) / 12.0) * y0;
    let mut w_cur = (1.0 + h2 * k_cur / 12.0) * y1;
    for i in 2..n {
        let k_next = k2(x0 + i as f64 * h);
        let w_next = 2.0 * w_cur - w_prev - h2 * k_cur * values[i - 1];
        let y = w_next / (1.0 + h2 * k_next / 12.0);
        if !y.is_finite() {
            return Err(Error::Instability(format!("non-finite value at step {i}")));
        }
        values.push(y);
        w_prev = w_cur;
        w_cur = w_next;
        k_cur = k_next;
        if y.abs() > RESCALE_AT {
            for v in values.iter_mut() {
                *v /= RESCALE_AT;
            }
            w_prev /= RESCALE_AT;
            w_cur /= RESCALE_AT;
            ln_scale += RESCALE_AT.ln();
        }
    }
    Ok(Sweep { values, ln_scale })
}

/// Sampled regular solution of the radial equation on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialSolution {
    pub grid: RadialGrid,
    pub values: Vec<f64>,
    pub ln_scale: f64,
}

/// `k²(r) = 2a₂/r − (ℓ(ℓ+1) − 2a₁)/r² + 2(E − a₃)`
pub fn radial_k2(p: &PotentialParams, ch: &Channel, e: f64) -> impl Fn(f64) -> f64 {
    let (a2, c, eps_sq) = (p.a2, ch.centrifugal(), 2.0 * (e - p.a3));
    move |r| 2.0 * a2 / r - c / (r * r) + eps_sq
}

/// Integrate the radial equation outward from the Frobenius seed.
pub fn numerov_integrate(
    p: &PotentialParams,
    l: u32,
    e: f64,
    grid: &RadialGrid,
) -> Result<RadialSolution> {
    let ch = Channel::new(p, l)?;
    let eps_sq = 2.0 * (e - p.a3);
    let h = grid.step();
    let y0 = frobenius(ch.lambda, p.a2, eps_sq, grid.r_min);
    let y1 = frobenius(ch.lambda, p.a2, eps_sq, grid.r_min + h);
    let sweep = numerov_sweep(grid.r_min, h, grid.n_points, radial_k2(p, &ch, e), y0, y1)?;
    Ok(RadialSolution { grid: *grid, values: sweep.values, ln_scale: sweep.ln_scale })
}

/// Largest `|δ²R/h² + k²R|` over grid points with `r >= r_from`, divided
/// by `max |R|`.
pub fn ode_residual(sol: &RadialSolution, k2: impl Fn(f64) -> f64, r_from: f64) -> f64 {
    let h = sol.grid.step();
    let y = &sol.values;
    let scale = y.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut worst = 0.0f64;
    for i in 1..y.len() - 1 {
        let r = sol.grid.r(i);
        if r < r_from {
            continue;
        }
        let d2 = (y[i + 1] - 2.0 * y[i] + y[i - 1]) / (h * h);
        worst = worst.max((d2 + k2(r) * y[i]).abs());
    }
    worst / scale
}
