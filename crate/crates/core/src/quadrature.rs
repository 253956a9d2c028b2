//! Tanh-sinh (double exponential) quadrature on a finite interval.
//!
//! The integrand receives the abscissa together with its distances to both
//! endpoints, computed without cancellation, so integrable power-law
//! singularities at the ends can be evaluated accurately.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TanhSinh {
    pub rel_tol: f64,
    /// Levels of step halving after the first (h = 1/2).
    pub max_level: u32,
    pub t_max: f64,
}

impl Default for TanhSinh {
    fn default() -> Self {
        TanhSinh { rel_tol: 1e-13, max_level: 12, t_max: 6.0 }
    }
}

/// Point of the transformed rule: abscissa, distances to `a` and `b`, weight.
#[derive(Debug, Clone, Copy)]
pub struct Node {
    pub x: f64,
    pub from_a: f64,
    pub to_b: f64,
    pub weight: f64,
}

fn node(a: f64, b: f64, t: f64) -> Option<Node> {
    let s = PI * t.sinh();
    // u = 1/(1+e^{-s}), v = 1 - u, both without cancellation
    let (u, v) = if s > 0.0 {
        let e = (-s).exp();
        (1.0 / (1.0 + e), e / (1.0 + e))
    } else {
        let e = s.exp();
        (e / (1.0 + e), 1.0 / (1.0 + e))
    };
    let len = b - a;
    let weight = len * u * v * PI * t.cosh();
    if !(weight > 1e-300) || u == 0.0 || v == 0.0 {
        return None;
    }
    Some(Node { x: a + len * u, from_a: len * u, to_b: len * v, weight })
}

impl TanhSinh {
    pub fn integrate_complex<F>(&self, a: f64, b: f64, f: F) -> Result<Complex64>
    where
        F: Fn(&Node) -> Complex64,
    {
        if !(b > a) {
            return Err(Error::Domain(format!("quadrature needs a < b, got [{a}, {b}]")));
        }
        // (integrand, |integrand|) at one node
        let eval = |t: f64| -> Result<(Complex64, f64)> {
            match node(a, b, t) {
                None => Ok((Complex64::new(0.0, 0.0), 0.0)),
                Some(n) => {
                    let v = f(&n) * n.weight;
                    if v.re.is_finite() && v.im.is_finite() {
                        Ok((v, v.norm()))
                    } else {
                        Err(Error::Quadrature(format!("non-finite integrand at x = {}", n.x)))
                    }
                }
            }
        };
        let mut h = 0.5;
        let (mut sum, mut abs_sum) = eval(0.0)?;
        let add = |t: f64, sum: &mut Complex64, abs_sum: &mut f64| -> Result<()> {
            let (p, pa) = eval(t)?;
            let (m, ma) = eval(-t)?;
            *sum += p + m;
            *abs_sum += pa + ma;
            Ok(())
        };
        let mut j = 1;
        while (j as f64) * h <= self.t_max {
            add(j as f64 * h, &mut sum, &mut abs_sum)?;
            j += 1;
        }
        let mut estimate = sum * h;
        for level in 1..=self.max_level {
            h *= 0.5;
            let mut j = 1;
            while (j as f64) * h <= self.t_max {
                add(j as f64 * h, &mut sum, &mut abs_sum)?;
                j += 2;
            }
            let next = sum * h;
            let diff = (next - estimate).norm();
            estimate = next;
            // relative to ∫|f| so that integrals that cancel to ~0 still converge
            let scale = estimate.norm().max(abs_sum * h).max(1e-300);
            if level >= 3 && diff <= self.rel_tol * scale {
                return Ok(estimate);
            }
        }
        Err(Error::Quadrature(format!(
            "no convergence to {:e} after {} levels",
            self.rel_tol, self.max_level
        )))
    }

    pub fn integrate<F>(&self, a: f64, b: f64, f: F) -> Result<f64>
    where
        F: Fn(&Node) -> f64,
    {
        Ok(self.integrate_complex(a, b, |n| Complex64::new(f(n), 0.0))?.re)
    }
}
