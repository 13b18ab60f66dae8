//! Constant-element boundary element solver for `∇²φ̄ − q²φ̄ = 0` on a
//! rectangle with side-wise Dirichlet or Neumann data.

pub mod dump;
pub mod interior;
pub mod kernel;
pub mod mesh;
pub mod model;
pub mod system;

pub use dump::dump_mesh;
pub use interior::{double_layer_row, eval_interior, InteriorValue};
pub use kernel::{Kernel, QUADRATURE_ORDER};
pub use mesh::{discretize_rectangle, BoundaryCondition, BoundaryMesh, Element, Side, SideConditions};
pub use model::{steady_state, BemImage};
pub use system::{assemble, solve_boundary, BoundarySolution, HelmholtzSystem};
