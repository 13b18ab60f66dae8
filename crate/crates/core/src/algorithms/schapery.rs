//! Schapery's exponential-series collocation on real nodes.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

const COMPLEX_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct SchaperyParams {
    /// Strictly increasing positive collocation nodes `p_j`.
    pub nodes: Vec<f64>,
    /// Steady-state value `f_s = lim_{t→∞} f(t)`.
    pub steady: f64,
}

impl SchaperyParams {
    pub fn new(nodes: Vec<f64>, steady: f64) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::InvalidArgument("Schapery needs at least one node".into()));
        }
        if nodes.iter().any(|p| !(p.is_finite() && *p > 0.0)) {
            return Err(Error::InvalidArgument("Schapery nodes must be positive".into()));
        }
        if nodes.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidArgument("Schapery nodes must be distinct and increasing".into()));
        }
        Ok(SchaperyParams { nodes, steady })
    }

    /// `p_j = first · ratio^(j-1)`, `j = 1..=n`.
    pub fn geometric(first: f64, ratio: f64, n: usize, steady: f64) -> Result<Self> {
        if n > 1 && ratio <= 1.0 {
            return Err(Error::InvalidArgument("geometric node ratio must exceed 1".into()));
        }
        Self::new((0..n).map(|j| first * ratio.powi(j as i32)).collect(), steady)
    }

    /// Geometric nodes from `1/(10 t_max)` to `10/t_min`.
    pub fn rule_of_thumb(n: usize, t_min: f64, t_max: f64, steady: f64) -> Result<Self> {
        let first = 0.1 / t_max;
        let last = 10.0 / t_min;
        let ratio = if n > 1 { (last / first).powf(1.0 / (n - 1) as f64) } else { 1.0 };
        Self::geometric(first, ratio, n, steady)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchaperyFit {
    pub coefficients: Vec<f64>,
    /// Ratio of extreme eigenvalues of the node matrix.
    pub condition: f64,
}

impl SchaperyFit {
    /// Whether the node matrix is singular to working precision.
    pub fn ill_conditioned(&self) -> bool {
        self.condition.is_nan() || self.condition * f64::EPSILON >= 1.0
    }
}

fn node_matrix(nodes: &[f64]) -> DMatrix<f64> {
    let n = nodes.len();
    DMatrix::from_fn(n, n, |i, j| 1.0 / (nodes[i] + nodes[j]))
}

/// Solve `P a = f̄(p_j) - f_s/p_j` with `P_ij = 1/(p_i + p_j)`.
///
/// `values[j]` holds `f̄(p_j)`.
pub fn schapery_fit(values: &[Complex64], params: &SchaperyParams) -> Result<SchaperyFit> {
    let nodes = &params.nodes;
    if values.len() != nodes.len() {
        return Err(Error::PlanMismatch(format!("Schapery expects {} samples, got {}", nodes.len(), values.len())));
    }
    let mut rhs = DVector::zeros(nodes.len());
    for (j, (v, p)) in values.iter().zip(nodes).enumerate() {
        if v.im.abs() > COMPLEX_TOLERANCE * v.norm().max(f64::MIN_POSITIVE) {
            return Err(Error::ComplexSample { p: Complex64::new(*p, 0.0), value: *v });
        }
        rhs[j] = v.re - params.steady / p;
    }
    let matrix = node_matrix(nodes);
    let condition = {
        let eig = matrix.clone().symmetric_eigenvalues();
        let max = eig.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let min = eig.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
        if min > 0.0 {
            max / min
        } else {
            f64::INFINITY
        }
    };
    let solution = match matrix.clone().cholesky() {
        Some(chol) => Some(chol.solve(&rhs)),
        None => matrix.lu().solve(&rhs),
    };
    match solution {
        Some(a) if a.iter().all(|v| v.is_finite()) => {
            Ok(SchaperyFit { coefficients: a.iter().copied().collect(), condition })
        }
        _ => Err(Error::Singular { condition }),
    }
}

/// `f_s + Σ a_i e^{-p_i t}`.
pub fn schapery_eval(coefficients: &[f64], nodes: &[f64], steady: f64, t: f64) -> Result<f64> {
    if coefficients.len() != nodes.len() {
        return Err(Error::PlanMismatch(format!(
            "{} Schapery coefficients for {} nodes",
            coefficients.len(),
            nodes.len()
        )));
    }
    Ok(steady + coefficients.iter().zip(nodes).map(|(a, p)| a * (-p * t).exp()).sum::<f64>())
}
