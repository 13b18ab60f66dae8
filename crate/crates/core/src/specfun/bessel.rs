//! Modified Bessel functions of the second kind, orders 0 and 1, for complex
//! argument on the principal branch.
//!
//! Three regimes:
//! * `|z| <= SERIES_RADIUS`: ascending series (I0/I1 plus the logarithmic
//!   term).
//! * `SERIES_RADIUS < |z| <= ASYMPTOTIC_RADIUS` with `Re z >= 0`: Steed's
//!   continued fraction for the confluent hypergeometric function `U`, which
//!   yields `K0` and `K1` together.
//! * `|z| > ASYMPTOTIC_RADIUS`: Hankel asymptotic expansion with monitored
//!   truncation.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

pub const SERIES_RADIUS: f64 = 2.0;
pub const ASYMPTOTIC_RADIUS: f64 = 25.0;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const MAX_SERIES_TERMS: usize = 500;
const MAX_CF_ITERATIONS: usize = 20_000;
const MIN_ASYMPTOTIC_TERMS: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselPair {
    pub k0: Complex64,
    pub k1: Complex64,
    /// Set when either value is not finite (only possible for `Re z < 0`).
    pub overflow: bool,
}

impl BesselPair {
    fn new(k0: Complex64, k1: Complex64) -> Self {
        let overflow = !(k0.is_finite() && k1.is_finite());
        BesselPair { k0, k1, overflow }
    }

    fn conj(self) -> Self {
        BesselPair { k0: self.k0.conj(), k1: self.k1.conj(), overflow: self.overflow }
    }
}

/// `K0(z)` and `K1(z)`.
///
/// Accurate to about 1e-14 relative in the closed right half-plane. Values
/// for `Re z < 0` follow the principal branch but can lose accuracy or
/// overflow; overflow is reported via [`BesselPair::overflow`].
pub fn bessel_k01(z: Complex64) -> Result<BesselPair> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::SingularInput);
    }
    if !z.is_finite() {
        return Err(Error::InvalidArgument(format!("non-finite Bessel argument {z}")));
    }
    // Work in the upper half-plane; K(conj z) = conj K(z) exactly.
    if z.im < 0.0 {
        return bessel_k01(z.conj()).map(BesselPair::conj);
    }
    let r = z.norm();
    let pair = if r <= SERIES_RADIUS {
        ascending_series(z)
    } else if r > ASYMPTOTIC_RADIUS {
        asymptotic(z)
    } else if z.re >= 0.0 {
        steed_cf2(z)
    } else {
        ascending_series(z)
    };
    Ok(pair)
}

fn ascending_series(z: Complex64) -> BesselPair {
    let half = z * 0.5;
    let w = half * half;
    let log_term = half.ln() + EULER_GAMMA;

    // term_k = w^k / (k!)^2 for K0; w^k / (k! (k+1)!) for K1
    let mut t0 = Complex64::new(1.0, 0.0);
    let mut t1 = Complex64::new(1.0, 0.0);
    let mut i0 = t0;
    let mut s0 = Complex64::new(0.0, 0.0);
    let mut i1_sum = t1;
    let mut s1 = t1 * (1.0 - 2.0 * EULER_GAMMA);
    let mut harmonic = 0.0;
    for k in 1..MAX_SERIES_TERMS {
        let kf = k as f64;
        t0 *= w / (kf * kf);
        t1 *= w / (kf * (kf + 1.0));
        harmonic += 1.0 / kf;
        i0 += t0;
        s0 += t0 * harmonic;
        i1_sum += t1;
        // ψ(k+1) + ψ(k+2) = H_k + H_{k+1} - 2γ
        s1 += t1 * (2.0 * harmonic + 1.0 / (kf + 1.0) - 2.0 * EULER_GAMMA);
        if t0.norm() * harmonic.max(1.0) < 1e-18 * s0.norm().max(i0.norm())
            && t1.norm() * (harmonic + 1.0) < 1e-18 * s1.norm().max(i1_sum.norm())
        {
            break;
        }
    }
    let k0 = -log_term * i0 + s0;
    let i1 = half * i1_sum;
    let k1 = z.inv() + half.ln() * i1 - half * 0.5 * s1;
    BesselPair::new(k0, k1)
}

/// Steed's algorithm (Temme's CF2) for `ν = 0`.
fn steed_cf2(z: Complex64) -> BesselPair {
    let one = Complex64::new(1.0, 0.0);
    let mut b = (z + 1.0) * 2.0;
    let mut d = b.inv();
    let mut h = d;
    let mut delh = d;
    let mut q1 = Complex64::new(0.0, 0.0);
    let mut q2 = one;
    let a1 = 0.25;
    let mut q = Complex64::new(a1, 0.0);
    let mut c = Complex64::new(a1, 0.0);
    let mut a = -a1;
    let mut s = one + q * delh;
    for i in 1..MAX_CF_ITERATIONS {
        let fi = i as f64;
        a -= 2.0 * fi;
        c = -c * a / (fi + 1.0);
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = (b + a * d).inv();
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if dels.norm() < 1e-17 * s.norm() && delh.norm() < 1e-17 * h.norm() {
            break;
        }
    }
    h *= a1;
    let k0 = (PI / (2.0 * z)).sqrt() * (-z).exp() / s;
    let k1 = k0 * (z + 0.5 - h) / z;
    BesselPair::new(k0, k1)
}

fn asymptotic(z: Complex64) -> BesselPair {
    let inv8z = (z * 8.0).inv();
    let mut term0 = Complex64::new(1.0, 0.0);
    let mut term1 = Complex64::new(1.0, 0.0);
    let mut sum0 = term0;
    let mut sum1 = term1;
    let mut last0 = f64::INFINITY;
    let mut last1 = f64::INFINITY;
    for k in 1..=4 * MIN_ASYMPTOTIC_TERMS {
        let odd = (2 * k - 1) as f64;
        let next0 = term0 * (-(odd * odd)) * inv8z / k as f64;
        let next1 = term1 * (4.0 - odd * odd) * inv8z / k as f64;
        // Stop at the smallest term; beyond it the expansion diverges.
        let grow0 = next0.norm() >= last0;
        let grow1 = next1.norm() >= last1;
        if !grow0 {
            sum0 += next0;
            last0 = next0.norm();
            term0 = next0;
        }
        if !grow1 {
            sum1 += next1;
            last1 = next1.norm();
            term1 = next1;
        }
        let small0 = last0 < 1e-17 * sum0.norm();
        let small1 = last1 < 1e-17 * sum1.norm();
        if (grow0 || small0) && (grow1 || small1) {
            break;
        }
    }
    let prefactor = (PI / (2.0 * z)).sqrt() * (-z).exp();
    BesselPair::new(prefactor * sum0, prefactor * sum1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn tabulated_values_at_one() {
        let pair = bessel_k01(Complex64::new(1.0, 0.0)).unwrap();
        assert!((pair.k0.re - 0.421_024_438_240_708_3).abs() < 1e-15);
        assert!((pair.k1.re - 0.601_907_230_197_234_6).abs() < 1e-15);
        assert_eq!(pair.k0.im, 0.0);
    }

    #[test]
    fn logarithmic_leading_order() {
        let z = 1e-4;
        let pair = bessel_k01(Complex64::new(z, 0.0)).unwrap();
        let residual = pair.k0.re + (z / 2.0).ln() + EULER_GAMMA;
        assert!(residual.abs() < 1e-7, "{residual}");
    }

    #[test]
    fn schwarz_reflection() {
        let z = Complex64::new(1.0, 2.0);
        let up = bessel_k01(z).unwrap();
        let down = bessel_k01(z.conj()).unwrap();
        assert_eq!(down.k0, up.k0.conj());
        assert_eq!(down.k1, up.k1.conj());
    }

    #[test]
    fn zero_is_rejected() {
        assert!(matches!(bessel_k01(Complex64::new(0.0, 0.0)), Err(Error::SingularInput)));
    }

    #[test]
    fn regimes_agree_at_crossovers() {
        for angle in [0.0, 0.4, 0.9, 1.3, 1.5, PI / 2.0] {
            for radius in [SERIES_RADIUS, ASYMPTOTIC_RADIUS] {
                let z = Complex64::from_polar(radius, angle);
                let a = if radius == SERIES_RADIUS { ascending_series(z) } else { asymptotic(z) };
                let b = steed_cf2(z);
                assert!(rel(a.k0, b.k0) < 5e-14, "K0 r={radius} angle={angle}");
                assert!(rel(a.k1, b.k1) < 5e-14, "K1 r={radius} angle={angle}");
            }
        }
    }

    #[test]
    fn large_negative_real_part_overflows() {
        let pair = bessel_k01(Complex64::new(-800.0, 1.0)).unwrap();
        assert!(pair.overflow);
    }
}
