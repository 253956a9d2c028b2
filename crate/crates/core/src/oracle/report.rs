use serde::{Deserialize, Serialize};

use super::numerov::RadialGrid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ToleranceKind {
    Absolute,
    Relative,
}

/// One analytic-vs-numeric comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub suite: String,
    pub quantity_name: String,
    pub analytic: f64,
    pub numeric: f64,
    pub abs_diff: f64,
    pub rel_diff: f64,
    pub grid: Option<RadialGrid>,
    pub tolerance: f64,
    pub tolerance_kind: ToleranceKind,
    pub pass: bool,
}

impl OracleReport {
    pub fn new(
        suite: &str,
        quantity_name: impl Into<String>,
        analytic: f64,
        numeric: f64,
        tolerance: f64,
        tolerance_kind: ToleranceKind,
    ) -> Self {
        let abs_diff = (analytic - numeric).abs();
        let rel_diff = if analytic != 0.0 { abs_diff / analytic.abs() } else { abs_diff };
        let measured = match tolerance_kind {
            ToleranceKind::Absolute => abs_diff,
            ToleranceKind::Relative => rel_diff,
        };
        OracleReport {
            suite: suite.to_string(),
            quantity_name: quantity_name.into(),
            analytic,
            numeric,
            abs_diff,
            rel_diff,
            grid: None,
            tolerance,
            tolerance_kind,
            pass: measured <= tolerance,
        }
    }

    /// A check whose quantity is itself a deviation, compared against zero.
    pub fn deviation(suite: &str, quantity_name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        OracleReport::new(suite, quantity_name, 0.0, value, tolerance, ToleranceKind::Absolute)
    }

    pub fn with_grid(mut self, grid: RadialGrid) -> Self {
        self.grid = Some(grid);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diffs_and_verdict() {
        let r = OracleReport::new("x", "q", 2.0, 2.5, 0.3, ToleranceKind::Relative);
        assert_eq!(r.abs_diff, 0.5);
        assert_eq!(r.rel_diff, 0.25);
        assert!(r.pass);
        let r = OracleReport::new("x", "q", 2.0, 2.5, 0.3, ToleranceKind::Absolute);
        assert!(!r.pass);
        assert!(!OracleReport::deviation("x", "nan", f64::NAN, 1.0).pass);
    }
}
