//! Klein–Gordon particle in a Coulomb field, integrated directly.

use super::numerov::{frobenius, numerov_integrate, numerov_sweep, RadialGrid};
use crate::error::{Error, Result};
use crate::model::kg_coulomb_to_mie;

#[derive(Debug, Clone, PartialEq)]
pub struct KgComparison {
    /// Largest `|R_KG − R_Mie| / max |R_KG|` on the grid.
    pub max_rel_diff: f64,
    pub grid: RadialGrid,
}

/// Integrates `R″ + [(E + Zα/r)² − m² − ℓ(ℓ+1)/r²] R = 0` and the Mie
/// equation with the mapped coefficients on the same grid.
pub fn kg_vs_mie(e: f64, m: f64, z_alpha: f64, l: u32, grid: &RadialGrid) -> Result<KgComparison> {
    let map = kg_coulomb_to_mie(e, m, z_alpha, 1.0)?;
    let lf = f64::from(l);
    let lambda_sq = (lf + 0.5).powi(2) - z_alpha * z_alpha;
    if !(lambda_sq > 0.0) {
        return Err(Error::Domain(format!("Zα = {z_alpha} too strong for ℓ = {l}")));
    }
    let k2 = move |r: f64| (e + z_alpha / r).powi(2) - m * m - lf * (lf + 1.0) / (r * r);
    let seed = |r: f64| frobenius(lambda_sq.sqrt(), e * z_alpha, e * e - m * m, r);
    let h = grid.step();
    let kg = numerov_sweep(grid.r_min, h, grid.n_points, k2, seed(grid.r_min), seed(grid.r_min + h))?;
    let mie = numerov_integrate(&map.params, l, map.mie_energy(), grid)?;
    if kg.ln_scale != mie.ln_scale {
        return Err(Error::Instability("solutions rescaled differently".into()));
    }
    let scale = kg.values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let max_rel_diff = kg
        .values
        .iter()
        .zip(&mie.values)
        .fold(0.0f64, |a, (x, y)| a.max((x - y).abs()))
        / scale;
    Ok(KgComparison { max_rel_diff, grid: *grid })
}
