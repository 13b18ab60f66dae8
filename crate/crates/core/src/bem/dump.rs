//! Plain-text mesh and solution tables.
//!
//! One header comment line, then one whitespace-separated row per element:
//!
//! ```text
//! # index x0 y0 x1 y1 nx ny tag value [phi_re phi_im flux_re flux_im]
//! ```

use std::fmt::Write as _;

use super::mesh::BoundaryMesh;
use super::system::BoundarySolution;

pub fn dump_mesh(mesh: &BoundaryMesh, solution: Option<&BoundarySolution>) -> String {
    let mut out = String::from("# index x0 y0 x1 y1 nx ny tag value");
    if solution.is_some() {
        out.push_str(" phi_re phi_im flux_re flux_im");
    }
    out.push('\n');
    for (i, e) in mesh.elements.iter().enumerate() {
        let _ = write!(
            out,
            "{i} {} {} {} {} {} {} {} {}",
            e.start[0],
            e.start[1],
            e.end[0],
            e.end[1],
            e.normal[0],
            e.normal[1],
            e.condition.tag(),
            e.condition.value()
        );
        if let Some(s) = solution {
            let _ = write!(out, " {} {} {} {}", s.potential[i].re, s.potential[i].im, s.flux[i].re, s.flux[i].im);
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bem::mesh::{discretize_rectangle, SideConditions};

    #[test]
    fn one_row_per_element() {
        let mesh = discretize_rectangle(3.0, 2.0, 1, &SideConditions::benchmark()).unwrap();
        let text = dump_mesh(&mesh, None);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 11);
        assert_eq!(lines[1], "0 0 0 1 0 0 -1 neumann 0");
        assert!(lines[4].contains("dirichlet 2"));
    }
}
