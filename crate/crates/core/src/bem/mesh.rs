//! Constant-element discretisation of a rectangle perimeter.

use std::fmt;

use crate::error::{Error, Result};

/// Spatial boundary data on one element; the time factor `f̄_t(p)` is
/// applied at solve time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryCondition {
    /// Imposed potential `f_u`.
    Dirichlet(f64),
    /// Imposed outward normal derivative `f_q`.
    Neumann(f64),
}

impl BoundaryCondition {
    pub fn value(self) -> f64 {
        match self {
            BoundaryCondition::Dirichlet(v) | BoundaryCondition::Neumann(v) => v,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            BoundaryCondition::Dirichlet(_) => "dirichlet",
            BoundaryCondition::Neumann(_) => "neumann",
        }
    }
}

/// Rectangle sides in counter-clockwise order from the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// `y = 0`
    Bottom,
    /// `x = width`
    Right,
    /// `y = height`
    Top,
    /// `x = 0`
    Left,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::Bottom, Side::Right, Side::Top, Side::Left];
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Bottom => "bottom",
            Side::Right => "right",
            Side::Top => "top",
            Side::Left => "left",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SideConditions {
    pub bottom: BoundaryCondition,
    pub right: BoundaryCondition,
    pub top: BoundaryCondition,
    pub left: BoundaryCondition,
}

impl SideConditions {
    /// Potential −2 at `x = 0`, +2 at `x = width`, insulated top and bottom.
    pub fn benchmark() -> Self {
        SideConditions {
            bottom: BoundaryCondition::Neumann(0.0),
            right: BoundaryCondition::Dirichlet(2.0),
            top: BoundaryCondition::Neumann(0.0),
            left: BoundaryCondition::Dirichlet(-2.0),
        }
    }

    pub fn get(&self, side: Side) -> BoundaryCondition {
        match side {
            Side::Bottom => self.bottom,
            Side::Right => self.right,
            Side::Top => self.top,
            Side::Left => self.left,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Element {
    pub start: [f64; 2],
    pub end: [f64; 2],
    pub midpoint: [f64; 2],
    /// Outward unit normal.
    pub normal: [f64; 2],
    pub length: f64,
    pub side: Side,
    pub condition: BoundaryCondition,
}

impl Element {
    fn new(start: [f64; 2], end: [f64; 2], side: Side, condition: BoundaryCondition) -> Self {
        let dx = end[0] - start[0];
        let dy = end[1] - start[1];
        let length = dx.hypot(dy);
        Element {
            start,
            end,
            midpoint: [0.5 * (start[0] + end[0]), 0.5 * (start[1] + end[1])],
            // Counter-clockwise traversal: the outward normal is the tangent turned clockwise.
            normal: [dy / length, -dx / length],
            length,
            side,
            condition,
        }
    }

    /// Point at local coordinate `s ∈ [0, 1]`.
    pub fn point(&self, s: f64) -> [f64; 2] {
        [self.start[0] + s * (self.end[0] - self.start[0]), self.start[1] + s * (self.end[1] - self.start[1])]
    }

    /// Distance from `x` to the nearest point of the segment.
    pub fn distance_to(&self, x: [f64; 2]) -> f64 {
        let d = [self.end[0] - self.start[0], self.end[1] - self.start[1]];
        let w = [x[0] - self.start[0], x[1] - self.start[1]];
        let s = ((w[0] * d[0] + w[1] * d[1]) / (self.length * self.length)).clamp(0.0, 1.0);
        let p = self.point(s);
        (x[0] - p[0]).hypot(x[1] - p[1])
    }
}

/// A closed, counter-clockwise polygonal boundary of constant elements.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryMesh {
    pub width: f64,
    pub height: f64,
    pub elements: Vec<Element>,
}

impl BoundaryMesh {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, point: [f64; 2]) -> bool {
        point[0] > 0.0 && point[0] < self.width && point[1] > 0.0 && point[1] < self.height
    }

    /// Distance from `point` to the boundary.
    pub fn distance_to_boundary(&self, point: [f64; 2]) -> f64 {
        self.elements.iter().map(|e| e.distance_to(point)).fold(f64::INFINITY, f64::min)
    }

    /// Index of the element mirrored through `x = width/2`.
    pub fn mirror_x(&self, i: usize) -> Option<usize> {
        let m = self.elements.get(i)?.midpoint;
        let target = [self.width - m[0], m[1]];
        let tol = 1e-9 * self.width.max(self.height);
        self.elements
            .iter()
            .position(|e| (e.midpoint[0] - target[0]).abs() < tol && (e.midpoint[1] - target[1]).abs() < tol)
    }
}

/// Uniform constant elements, `ceil(n_per_unit · side length)` per side.
pub fn discretize_rectangle(
    width: f64,
    height: f64,
    n_per_unit: usize,
    conditions: &SideConditions,
) -> Result<BoundaryMesh> {
    if !(width.is_finite() && width > 0.0 && height.is_finite() && height > 0.0) {
        return Err(Error::InvalidArgument(format!("rectangle must have positive size, got {width} x {height}")));
    }
    if n_per_unit == 0 {
        return Err(Error::InvalidArgument("n_per_unit must be >= 1".into()));
    }
    for side in Side::ALL {
        if !conditions.get(side).value().is_finite() {
            return Err(Error::InvalidArgument(format!("boundary value on the {side} side is not finite")));
        }
    }
    let corners = [[0.0, 0.0], [width, 0.0], [width, height], [0.0, height]];
    let mut elements = Vec::new();
    for (k, side) in Side::ALL.into_iter().enumerate() {
        let a = corners[k];
        let b = corners[(k + 1) % 4];
        let len = (b[0] - a[0]).hypot(b[1] - a[1]);
        let n = ((len * n_per_unit as f64) - 1e-9).ceil().max(1.0) as usize;
        for j in 0..n {
            let s0 = j as f64 / n as f64;
            let s1 = (j + 1) as f64 / n as f64;
            let lerp = |s: f64| [a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])];
            elements.push(Element::new(lerp(s0), lerp(s1), side, conditions.get(side)));
        }
    }
    Ok(BoundaryMesh { width, height, elements })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn benchmark(n: usize) -> BoundaryMesh {
        discretize_rectangle(3.0, 2.0, n, &SideConditions::benchmark()).unwrap()
    }

    #[test]
    fn element_counts() {
        let mesh = benchmark(4);
        assert_eq!(mesh.len(), 40);
        let count = |side| mesh.elements.iter().filter(|e| e.side == side).count();
        assert_eq!([count(Side::Bottom), count(Side::Right), count(Side::Top), count(Side::Left)], [12, 8, 12, 8]);
        let dirichlet = mesh.elements.iter().filter(|e| matches!(e.condition, BoundaryCondition::Dirichlet(_))).count();
        assert_eq!(dirichlet, 2 * 2 * 4);
        assert_eq!(mesh.len() - dirichlet, 2 * 3 * 4);
    }

    #[test]
    fn normals_point_outward() {
        let mesh = benchmark(2);
        for e in &mesh.elements {
            let expected = match e.side {
                Side::Bottom => [0.0, -1.0],
                Side::Right => [1.0, 0.0],
                Side::Top => [0.0, 1.0],
                Side::Left => [-1.0, 0.0],
            };
            assert!((e.normal[0] - expected[0]).abs() < 1e-15 && (e.normal[1] - expected[1]).abs() < 1e-15);
        }
    }

    #[test]
    fn closed_perimeter() {
        let mesh = benchmark(3);
        let n = mesh.len();
        for i in 0..n {
            let a = mesh.elements[i].end;
            let b = mesh.elements[(i + 1) % n].start;
            assert!((a[0] - b[0]).abs() < 1e-14 && (a[1] - b[1]).abs() < 1e-14);
        }
        let perimeter: f64 = mesh.elements.iter().map(|e| e.length).sum();
        assert!((perimeter - 10.0).abs() < 1e-12);
    }

    #[test]
    fn mirror_pairs() {
        let mesh = benchmark(2);
        for i in 0..mesh.len() {
            let j = mesh.mirror_x(i).unwrap();
            assert_eq!(mesh.mirror_x(j), Some(i));
        }
    }

    #[test]
    fn invalid_input() {
        let bc = SideConditions::benchmark();
        assert!(discretize_rectangle(0.0, 2.0, 4, &bc).is_err());
        assert!(discretize_rectangle(3.0, 2.0, 0, &bc).is_err());
        let bad = SideConditions { top: BoundaryCondition::Neumann(f64::NAN), ..bc };
        assert!(discretize_rectangle(3.0, 2.0, 4, &bad).is_err());
    }
}
