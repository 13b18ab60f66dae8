//! Free-space Green's functions and their radial derivatives.

use num_complex::Complex64;
use std::f64::consts::PI;
use std::num::NonZeroUsize;
use std::sync::OnceLock;

use gauss_quad::legendre::GaussLegendre;

use crate::error::Result;
use crate::specfun::bessel_k01;

/// Gauss-Legendre order used on every subsegment.
pub const QUADRATURE_ORDER: usize = 8;

/// Fundamental solution of `∇²u − q²u = 0` (or of Laplace's equation).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kernel {
    /// `G = K0(qr)/(2π)`.
    ModifiedHelmholtz(Complex64),
    /// `G = −ln r/(2π)`, the `q → 0` steady-state limit.
    Laplace,
}

/// Radial data at one distance `r`.
///
/// With `d = x − ξ`: `G`, `∂G/∂n_x = f·(d·n)`, `∇_ξ G = −f·d`, and `f' = df/dr`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Radial {
    pub g: Complex64,
    pub f: Complex64,
    pub df: Complex64,
}

impl Kernel {
    /// `q = sqrt(p/α)` on the principal branch.
    pub fn for_laplace_parameter(p: Complex64, diffusivity: f64) -> Kernel {
        Kernel::ModifiedHelmholtz((p / diffusivity).sqrt())
    }

    pub fn conj(self) -> Kernel {
        match self {
            Kernel::ModifiedHelmholtz(q) => Kernel::ModifiedHelmholtz(q.conj()),
            Kernel::Laplace => Kernel::Laplace,
        }
    }

    pub fn wavenumber(self) -> Complex64 {
        match self {
            Kernel::ModifiedHelmholtz(q) => q,
            Kernel::Laplace => Complex64::new(0.0, 0.0),
        }
    }

    pub fn radial(self, r: f64) -> Result<Radial> {
        let two_pi = 2.0 * PI;
        match self {
            Kernel::ModifiedHelmholtz(q) => {
                let k = bessel_k01(q * r)?;
                Ok(Radial {
                    g: k.k0 / two_pi,
                    f: -q * k.k1 / (two_pi * r),
                    df: q * (q * r * k.k0 + 2.0 * k.k1) / (two_pi * r * r),
                })
            }
            Kernel::Laplace => Ok(Radial {
                g: Complex64::new(-r.ln() / two_pi, 0.0),
                f: Complex64::new(-1.0 / (two_pi * r * r), 0.0),
                df: Complex64::new(1.0 / (PI * r * r * r), 0.0),
            }),
        }
    }

    /// `G(r) + ln(r)/(2π)`: the kernel with its logarithmic singularity removed.
    pub fn regular_part(self, r: f64) -> Result<Complex64> {
        match self {
            Kernel::ModifiedHelmholtz(_) => Ok(self.radial(r)?.g + r.ln() / (2.0 * PI)),
            Kernel::Laplace => Ok(Complex64::new(0.0, 0.0)),
        }
    }
}

/// Nodes and weights on `[0, 1]`.
pub(crate) fn unit_rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let quad = GaussLegendre::new(NonZeroUsize::new(QUADRATURE_ORDER).expect("nonzero order"));
        quad.as_node_weight_pairs().iter().map(|&(x, w)| (0.5 * (x + 1.0), 0.5 * w)).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_rule_integrates_polynomials() {
        let rule = unit_rule();
        assert_eq!(rule.len(), QUADRATURE_ORDER);
        let integral: f64 = rule.iter().map(|(x, w)| w * x.powi(15)).sum();
        assert!((integral - 1.0 / 16.0).abs() < 1e-15);
    }

    #[test]
    fn small_q_approaches_laplace_gradient() {
        let q = Complex64::new(1e-4, 0.0);
        let h = Kernel::ModifiedHelmholtz(q).radial(0.7).unwrap();
        let l = Kernel::Laplace.radial(0.7).unwrap();
        assert!((h.f - l.f).norm() < 1e-6 * l.f.norm());
        assert!((h.df - l.df).norm() < 1e-6 * l.df.norm());
    }

    #[test]
    fn derivative_of_f_matches_finite_difference() {
        let kernel = Kernel::ModifiedHelmholtz(Complex64::new(1.3, 0.8));
        let r = 0.45;
        let eps = 1e-5;
        let fd = (kernel.radial(r + eps).unwrap().f - kernel.radial(r - eps).unwrap().f) / (2.0 * eps);
        let df = kernel.radial(r).unwrap().df;
        assert!((fd - df).norm() < 1e-7 * df.norm());
        let dg = (kernel.radial(r + eps).unwrap().g - kernel.radial(r - eps).unwrap().g) / (2.0 * eps);
        assert!((dg - kernel.radial(r).unwrap().f * r).norm() < 1e-7 * dg.norm());
    }

    #[test]
    fn regular_part_is_bounded_at_zero() {
        let kernel = Kernel::ModifiedHelmholtz(Complex64::new(2.0, 0.0));
        let limit = -(1.0f64).ln() / (2.0 * PI) - 0.577_215_664_901_532_9 / (2.0 * PI);
        let near = kernel.regular_part(1e-8).unwrap();
        assert!((near.re - limit).abs() < 1e-10);
    }
}
