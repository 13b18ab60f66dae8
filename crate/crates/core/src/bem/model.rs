//! The boundary-element model as an image function.

use num_complex::Complex64;

use super::interior::{eval_interior, InteriorValue};
use super::kernel::Kernel;
use super::mesh::BoundaryMesh;
use super::system::{assemble, solve_boundary};
use crate::error::{Error, Result};
use crate::image::{ImageEvalError, MultiImage};

/// Interior potential and x-flux `−∂φ̄/∂x` at one point, as functions of `p`.
///
/// Boundary data are the mesh's spatial values times `time_factor(p)`.
pub struct BemImage<F> {
    pub mesh: BoundaryMesh,
    pub diffusivity: f64,
    pub point: [f64; 2],
    pub time_factor: F,
}

impl<F: Fn(Complex64) -> Complex64 + Sync> BemImage<F> {
    pub fn new(mesh: BoundaryMesh, diffusivity: f64, point: [f64; 2], time_factor: F) -> Result<Self> {
        if !(diffusivity.is_finite() && diffusivity > 0.0) {
            return Err(Error::InvalidArgument(format!("diffusivity must be > 0, got {diffusivity}")));
        }
        if !mesh.contains(point) {
            return Err(Error::OutsideDomain { x: point[0], y: point[1] });
        }
        Ok(BemImage { mesh, diffusivity, point, time_factor })
    }

    pub fn solve(&self, p: Complex64) -> Result<InteriorValue> {
        let system = assemble(&self.mesh, Kernel::for_laplace_parameter(p, self.diffusivity))?;
        let solution = solve_boundary(&system, &self.mesh, (self.time_factor)(p))?;
        eval_interior(&solution, &self.mesh, self.point)
    }
}

impl<F: Fn(Complex64) -> Complex64 + Sync> MultiImage for BemImage<F> {
    fn channels(&self) -> usize {
        2
    }

    fn eval_channels(&self, p: Complex64) -> std::result::Result<Vec<Complex64>, ImageEvalError> {
        let v = self.solve(p).map_err(|e| ImageEvalError(e.to_string()))?;
        Ok(vec![v.potential, -v.gradient[0]])
    }
}

/// Steady-state potential and gradient at `point` (Laplace kernel, unit time factor).
pub fn steady_state(mesh: &BoundaryMesh, point: [f64; 2]) -> Result<InteriorValue> {
    let system = assemble(mesh, Kernel::Laplace)?;
    let solution = solve_boundary(&system, mesh, Complex64::new(1.0, 0.0))?;
    eval_interior(&solution, mesh, point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bem::mesh::{discretize_rectangle, SideConditions};

    #[test]
    fn steady_profile_is_linear() {
        let mesh = discretize_rectangle(3.0, 2.0, 8, &SideConditions::benchmark()).unwrap();
        let v = steady_state(&mesh, [1.0 / 3.0, 1.0]).unwrap();
        assert!((v.potential.re + 14.0 / 9.0).abs() < 5e-3, "{}", v.potential);
        assert!((v.gradient[0].re - 4.0 / 3.0).abs() < 1e-2, "{}", v.gradient[0]);
    }

    #[test]
    fn channels_are_potential_and_flux() {
        let mesh = discretize_rectangle(3.0, 2.0, 4, &SideConditions::benchmark()).unwrap();
        let model = BemImage::new(mesh, 1.0, [1.5, 1.0], |p: Complex64| p.inv()).unwrap();
        let p = Complex64::new(1.0, 0.0);
        let v = model.eval_channels(p).unwrap();
        assert!(v[0].norm() < 1e-8);
        // At the centre the x-flux is −φ̄'(1.5) = −(2/p) q / sinh(1.5 q).
        let q = p.sqrt();
        let exact = -(2.0 / p) * q / (1.5 * q).sinh();
        assert!((v[1] - exact).norm() < 1e-2 * exact.norm(), "{} vs {exact}", v[1]);
    }

    #[test]
    fn rejects_bad_setup() {
        let mesh = discretize_rectangle(3.0, 2.0, 2, &SideConditions::benchmark()).unwrap();
        assert!(BemImage::new(mesh.clone(), 0.0, [1.0, 1.0], |p: Complex64| p).is_err());
        assert!(BemImage::new(mesh, 1.0, [4.0, 1.0], |p: Complex64| p).is_err());
    }
}
