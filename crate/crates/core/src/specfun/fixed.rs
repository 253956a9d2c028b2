//! Fixed-point complex arithmetic on big integers, for ascending series
//! whose cancellation is beyond double-double. A value `v` is stored as the
//! integer nearest `v · 2^bits`, so the absolute error per operation is
//! about `2^−bits` and `bits` can be chosen from the cancellation ratio.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
struct Fx {
    re: BigInt,
    im: BigInt,
}

/// `x · 2^bits`, exact when `x` has no bits below `2^−bits`.
fn real_to_fixed(x: f64, bits: u32) -> BigInt {
    if x == 0.0 {
        return BigInt::zero();
    }
    let raw = x.abs().to_bits();
    let biased = ((raw >> 52) & 0x7ff) as i64;
    let frac = raw & ((1u64 << 52) - 1);
    let (mant, exp) = if biased == 0 { (frac, -1074) } else { (frac | (1u64 << 52), biased - 1075) };
    let shift = exp + i64::from(bits);
    let mag = if shift >= 0 {
        BigInt::from(mant) << shift as u64
    } else {
        BigInt::from(mant) >> (-shift) as u64
    };
    if x < 0.0 {
        -mag
    } else {
        mag
    }
}

fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e as i32)
}

fn fixed_to_real(v: &BigInt, bits: u32) -> f64 {
    let shift = (v.bits() as i64 - 64).max(0);
    let top = (v >> shift as u64).to_f64().unwrap_or(f64::NAN);
    ldexp(top, shift - i64::from(bits))
}

impl Fx {
    fn new(z: Complex64, bits: u32) -> Fx {
        Fx { re: real_to_fixed(z.re, bits), im: real_to_fixed(z.im, bits) }
    }

    fn to_c64(&self, bits: u32) -> Complex64 {
        Complex64::new(fixed_to_real(&self.re, bits), fixed_to_real(&self.im, bits))
    }

    fn mul(&self, o: &Fx, bits: u32) -> Fx {
        Fx {
            re: (&self.re * &o.re - &self.im * &o.im) >> bits as u64,
            im: (&self.re * &o.im + &self.im * &o.re) >> bits as u64,
        }
    }

    fn add_int(&self, k: u64, bits: u32) -> Fx {
        Fx { re: &self.re + (BigInt::from(k) << bits as u64), im: self.im.clone() }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

/// Σ (p)_k z^k / ((q)_k k!) with `bits` fractional bits. Returns the sum,
/// the largest term magnitude and the number of terms.
pub(crate) fn series(
    p: Complex64,
    q: Complex64,
    z: Complex64,
    bits: u32,
    max_terms: usize,
    tol: f64,
) -> Result<(Complex64, f64, usize)> {
    let (pf, qf, zf) = (Fx::new(p, bits), Fx::new(q, bits), Fx::new(z, bits));
    let mut term = Fx { re: BigInt::from(1) << bits as u64, im: BigInt::zero() };
    let mut sum = term.clone();
    let mut biggest = 1.0f64;
    let settle = p.norm() + z.norm();
    for k in 0..max_terms as u64 {
        let pk = pf.add_int(k, bits);
        let qk = qf.add_int(k, bits);
        // term *= (p+k) z conj(q+k) / (|q+k|² (k+1))
        let num = term.mul(&pk, bits).mul(&zf, bits).mul(&Fx { re: qk.re.clone(), im: -&qk.im }, bits);
        let den = ((&qk.re * &qk.re + &qk.im * &qk.im) >> bits as u64) * BigInt::from(k + 1);
        if den.is_zero() {
            return Err(Error::Parameter("1F1 lower parameter hits a pole".into()));
        }
        term = Fx { re: (num.re << bits as u64) / &den, im: (num.im << bits as u64) / &den };
        sum = Fx { re: &sum.re + &term.re, im: &sum.im + &term.im };
        let t = term.to_c64(bits).norm();
        biggest = biggest.max(t);
        if term.is_zero() || (k as f64 > settle && t <= tol * sum.to_c64(bits).norm()) {
            return Ok((sum.to_c64(bits), biggest, k as usize + 1));
        }
    }
    Err(Error::NonConvergence { what: "1F1 fixed-point series", terms: max_terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversions_round_trip() {
        for x in [1.0, -0.1, 3.5e-7, 12345.678, -2.0f64.powi(-40)] {
            let v = real_to_fixed(x, 200);
            assert_eq!(fixed_to_real(&v, 200), x);
        }
        assert_eq!(fixed_to_real(&real_to_fixed(1e300, 10), 10), 1e300);
    }

    #[test]
    fn exponential_series() {
        let z = Complex64::new(-40.0, 0.0);
        let (v, big, _) = series(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0), z, 256, 1000, 1e-17).unwrap();
        assert!((v.re / (-40f64).exp() - 1.0).abs() < 1e-15, "{v}");
        assert!(big > 1e16);
    }
}
