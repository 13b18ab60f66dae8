//! Interior potential and gradient from the boundary solution.

use num_complex::Complex64;

use super::kernel::{unit_rule, Kernel};
use super::mesh::BoundaryMesh;
use super::system::{element_integrals, subsegments, BoundarySolution};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteriorValue {
    pub potential: Complex64,
    pub gradient: [Complex64; 2],
    /// The point is within half an element length of the boundary, where
    /// the quadrature loses accuracy.
    pub near_boundary: bool,
}

/// `∫_Γ ∂G/∂n dΓ` element by element, seen from an interior `point`.
///
/// For a constant field the row sums to `−1` in the Laplace limit.
pub fn double_layer_row(mesh: &BoundaryMesh, kernel: Kernel, point: [f64; 2]) -> Result<Vec<Complex64>> {
    mesh.elements.iter().map(|e| element_integrals(kernel, e, point).map(|(_, h)| h)).collect()
}

/// Evaluates `φ̄(ξ) = ∫ G ∂φ̄/∂n − φ̄ ∂G/∂n` and its gradient at `point`.
pub fn eval_interior(solution: &BoundarySolution, mesh: &BoundaryMesh, point: [f64; 2]) -> Result<InteriorValue> {
    if !mesh.contains(point) {
        return Err(Error::OutsideDomain { x: point[0], y: point[1] });
    }
    if solution.potential.len() != mesh.len() {
        return Err(Error::PlanMismatch("boundary solution does not match the mesh".into()));
    }
    let kernel = solution.kernel;
    let zero = Complex64::new(0.0, 0.0);
    let mut potential = zero;
    let mut gradient = [zero; 2];
    let mut near_boundary = false;
    for (j, e) in mesh.elements.iter().enumerate() {
        let dist = e.distance_to(point);
        near_boundary |= dist < 0.5 * e.length;
        let m = subsegments(e, dist, kernel);
        let (u, q) = (solution.potential[j], solution.flux[j]);
        for s in 0..m {
            for &(t, w) in unit_rule() {
                let x = e.point((s as f64 + t) / m as f64);
                let d = [x[0] - point[0], x[1] - point[1]];
                let r = d[0].hypot(d[1]);
                let k = kernel.radial(r)?;
                let weight = w * e.length / m as f64;
                let dn = d[0] * e.normal[0] + d[1] * e.normal[1];
                potential += (q * k.g - u * k.f * dn) * weight;
                for c in 0..2 {
                    let grad_g = -k.f * d[c];
                    let grad_h = -k.df * (d[c] / r) * dn - k.f * e.normal[c];
                    gradient[c] += (q * grad_g - u * grad_h) * weight;
                }
            }
        }
    }
    if !(potential.is_finite() && gradient.iter().all(|g| g.is_finite())) {
        return Err(Error::Quadrature { row: usize::MAX, col: usize::MAX });
    }
    Ok(InteriorValue { potential, gradient, near_boundary })
}
