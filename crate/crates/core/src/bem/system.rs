//! Collocation matrices and the boundary solve.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

use super::kernel::{unit_rule, Kernel};
use super::mesh::{BoundaryCondition, BoundaryMesh, Element};
use crate::error::{Error, Result};

const MAX_SUBSEGMENTS: usize = 32;

/// `H` (double layer plus the ½ jump) and `G` (single layer), collocated at
/// element midpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct HelmholtzSystem {
    pub kernel: Kernel,
    pub h: DMatrix<Complex64>,
    pub g: DMatrix<Complex64>,
}

/// Subsegment count for integrating over `e` as seen from a point at
/// distance `d`.
pub(crate) fn subsegments(e: &Element, d: f64, kernel: Kernel) -> usize {
    let near = if d > 0.0 { (2.0 * e.length / d).ceil() } else { MAX_SUBSEGMENTS as f64 };
    let wave = (kernel.wavenumber().norm() * e.length / 4.0).ceil();
    (near.max(wave) as usize).clamp(1, MAX_SUBSEGMENTS)
}

/// `(∫ G dΓ, ∫ ∂G/∂n dΓ)` over `e` for a source point `x` off the element.
pub(crate) fn element_integrals(kernel: Kernel, e: &Element, x: [f64; 2]) -> Result<(Complex64, Complex64)> {
    let m = subsegments(e, e.distance_to(x), kernel);
    let mut g = Complex64::new(0.0, 0.0);
    let mut h = Complex64::new(0.0, 0.0);
    for s in 0..m {
        for &(u, w) in unit_rule() {
            let y = e.point((s as f64 + u) / m as f64);
            let d = [y[0] - x[0], y[1] - x[1]];
            let r = d[0].hypot(d[1]);
            let k = kernel.radial(r)?;
            let weight = w * e.length / m as f64;
            g += k.g * weight;
            h += k.f * (d[0] * e.normal[0] + d[1] * e.normal[1]) * weight;
        }
    }
    Ok((g, h))
}

/// `∫_e G dΓ` for the collocation point at the element's own midpoint.
fn self_single_layer(kernel: Kernel, e: &Element) -> Result<Complex64> {
    let half = 0.5 * e.length;
    // ∫_{-L/2}^{L/2} −ln|s| ds = L(1 − ln(L/2))
    let log_part = e.length * (1.0 - half.ln()) / (2.0 * PI);
    if kernel == Kernel::Laplace {
        return Ok(Complex64::new(log_part, 0.0));
    }
    // Quadratic grading towards s = 0 resolves the residual s² ln s term.
    let m = ((kernel.wavenumber().norm() * e.length).ceil() as usize).clamp(4, MAX_SUBSEGMENTS);
    let mut regular = Complex64::new(0.0, 0.0);
    for j in 0..m {
        let a = half * (j as f64 / m as f64).powi(2);
        let b = half * ((j + 1) as f64 / m as f64).powi(2);
        for &(u, w) in unit_rule() {
            regular += kernel.regular_part(a + u * (b - a))? * w * (b - a);
        }
    }
    Ok(2.0 * regular + log_part)
}

/// Builds `H` and `G` for `mesh`.
pub fn assemble(mesh: &BoundaryMesh, kernel: Kernel) -> Result<HelmholtzSystem> {
    if let Kernel::ModifiedHelmholtz(q) = kernel {
        if !(q.is_finite() && q.re > 0.0) {
            return Err(Error::InvalidArgument(format!("wavenumber must have Re q > 0, got {q}")));
        }
    }
    let n = mesh.len();
    let rows: Vec<Vec<(Complex64, Complex64)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let xi = mesh.elements[i].midpoint;
            (0..n)
                .map(|j| {
                    let e = &mesh.elements[j];
                    let (g, h) = if i == j {
                        (self_single_layer(kernel, e)?, Complex64::new(0.5, 0.0))
                    } else {
                        element_integrals(kernel, e, xi)?
                    };
                    if g.is_finite() && h.is_finite() {
                        Ok((g, h))
                    } else {
                        Err(Error::Quadrature { row: i, col: j })
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let g = DMatrix::from_fn(n, n, |i, j| rows[i][j].0);
    let h = DMatrix::from_fn(n, n, |i, j| rows[i][j].1);
    Ok(HelmholtzSystem { kernel, h, g })
}

/// Boundary potential and outward normal flux `∂φ̄/∂n` per element.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySolution {
    pub kernel: Kernel,
    pub potential: Vec<Complex64>,
    pub flux: Vec<Complex64>,
}

/// Solves for the unknown boundary data with every imposed value scaled by
/// `time_factor` (the image `f̄_t(p)` of the time behaviour).
pub fn solve_boundary(
    system: &HelmholtzSystem,
    mesh: &BoundaryMesh,
    time_factor: Complex64,
) -> Result<BoundarySolution> {
    let n = mesh.len();
    if system.h.nrows() != n || system.h.ncols() != n {
        return Err(Error::PlanMismatch(format!(
            "system is {}x{} but the mesh has {n} elements",
            system.h.nrows(),
            system.h.ncols()
        )));
    }
    let mut a = DMatrix::<Complex64>::zeros(n, n);
    let mut rhs = DVector::<Complex64>::zeros(n);
    for (j, e) in mesh.elements.iter().enumerate() {
        let known = e.condition.value() * time_factor;
        match e.condition {
            BoundaryCondition::Dirichlet(_) => {
                a.set_column(j, &(-system.g.column(j)));
                rhs -= system.h.column(j) * known;
            }
            BoundaryCondition::Neumann(_) => {
                a.set_column(j, &system.h.column(j));
                rhs += system.g.column(j) * known;
            }
        }
    }
    let lu = a.lu();
    let diag: Vec<f64> = lu.u().diagonal().iter().map(|v| v.norm()).collect();
    let max = diag.iter().copied().fold(0.0, f64::max);
    let min = diag.iter().copied().fold(f64::INFINITY, f64::min);
    let condition = if min > 0.0 { max / min } else { f64::INFINITY };
    let x = lu.solve(&rhs).filter(|x| x.iter().all(|v| v.is_finite())).ok_or(Error::Singular { condition })?;
    let mut potential = Vec::with_capacity(n);
    let mut flux = Vec::with_capacity(n);
    for (j, e) in mesh.elements.iter().enumerate() {
        let known = e.condition.value() * time_factor;
        match e.condition {
            BoundaryCondition::Dirichlet(_) => {
                potential.push(known);
                flux.push(x[j]);
            }
            BoundaryCondition::Neumann(_) => {
                potential.push(x[j]);
                flux.push(known);
            }
        }
    }
    Ok(BoundarySolution { kernel: system.kernel, potential, flux })
}
