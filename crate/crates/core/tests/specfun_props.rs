use mie_scatter::specfun::{
    hyp1f1, hyp1f1_asymptotic_with, hyp1f1_series, log_gamma, Hyp1f1Config,
};
use mie_scatter::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn log_gamma_conjugation(re in -8.0..12.0f64, im in 0.01..30.0f64) {
        let z = c(re, im);
        let a = log_gamma(z.conj()).unwrap();
        let b = log_gamma(z).unwrap().conj();
        prop_assert!((a - b).norm() < 1e-13 * (1.0 + b.norm()));
    }

    #[test]
    fn gamma_recurrence(re in -6.0..10.0f64, im in -10.0..10.0f64) {
        let z = c(re, im);
        prop_assume!(z.norm() > 0.05 && (z + 1.0).norm() > 0.05);
        prop_assume!((re - re.round()).abs() > 0.02 || im.abs() > 0.02);
        let lhs = log_gamma(z + 1.0).unwrap().exp();
        let rhs = z * log_gamma(z).unwrap().exp();
        prop_assert!(rel(lhs, rhs) < 1e-12, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn kummer_transformation(
        pr in -3.0..3.0f64, pi in -3.0..3.0f64,
        qr in 0.5..4.0f64, qi in -2.0..2.0f64,
        r in 0.0..20.0f64, th in -3.1..3.1f64,
    ) {
        let (p, q) = (c(pr, pi), c(qr, qi));
        let z = Complex64::from_polar(r, th);
        let lhs = hyp1f1(p, q, -z).unwrap();
        let rhs = (-z).exp() * hyp1f1(q - p, q, z).unwrap();
        prop_assert!(rel(lhs, rhs) < 1e-10, "{} vs {}", lhs, rhs);
    }

    // Parameters of the Coulomb-type 1F1(λ+1/2−iα; 1+2λ; −it) used by the
    // scattering wave function, where the two strategies hand over.
    #[test]
    fn series_asymptotic_overlap(lambda in 0.1..3.0f64, alpha in -3.0..3.0f64, t in 25.0..45.0f64) {
        let p = c(lambda + 0.5, -alpha);
        let q = c(1.0 + 2.0 * lambda, 0.0);
        let z = c(0.0, -t);
        let cfg = Hyp1f1Config { asymptotic_min: 25.0, ..Hyp1f1Config::default() };
        let series = hyp1f1_series(p, q, z, 2000, 1e-16).unwrap();
        let asym = hyp1f1_asymptotic_with(p, q, z, &cfg).unwrap();
        prop_assert!(rel(asym, series) < 1e-7, "{} vs {}", asym, series);
    }
}
