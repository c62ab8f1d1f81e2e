//! Exact symmetric shapes: ellipses, segments, polygons and Minkowski sums
//! of these.
//!
//! Each shape knows its support function in closed form, together with the
//! angular derivative, the boundary point with a given outer normal, its
//! area and perimeter. These closed forms are what [`super::EvenFn`] falls
//! back on whenever a shape tag is present.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::geom::{angle_of, cross, perp, singular_values, unit, weakest_direction, wrap_angle, Mat2, Vec2};
use crate::specfun;

const SYMMETRY_TOL: f64 = 1e-12;
const DET_TOL: f64 = 1e-9;

/// Linear image `A·D` of the unit disc with `det A = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ellipse {
    matrix: Mat2,
}

impl Ellipse {
    /// Accepts `|det − 1| ≤ 1e-9` and rescales so the stored determinant is
    /// one to rounding.
    pub fn new(matrix: Mat2) -> Result<Self> {
        if !matrix.iter().all(|x| x.is_finite()) {
            return Err(Error::Degenerate("non-finite ellipse matrix".into()));
        }
        let det = matrix.determinant();
        if (det - 1.0).abs() > DET_TOL {
            return Err(Error::Degenerate(format!("ellipse matrix has determinant {det}, expected 1")));
        }
        Ok(Ellipse { matrix: matrix / det.sqrt() })
    }

    pub fn identity() -> Self {
        Ellipse { matrix: Mat2::identity() }
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.matrix
    }
}

/// The symmetric segment `[−v, v]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    endpoint: Vec2,
}

impl Segment {
    pub fn new(endpoint: Vec2) -> Result<Self> {
        if !(endpoint.norm() > 0.0) || !endpoint.iter().all(|x| x.is_finite()) {
            return Err(Error::Degenerate("segment endpoint must be a nonzero vector".into()));
        }
        Ok(Segment { endpoint })
    }

    pub fn endpoint(&self) -> &Vec2 {
        &self.endpoint
    }
}

/// Centrally symmetric, strictly convex polygon with counterclockwise
/// vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<Vec2>,
}

impl Polygon {
    pub fn new(vertices: Vec<Vec2>) -> Result<Self> {
        let n = vertices.len();
        if n < 4 || !n.is_multiple_of(2) {
            return Err(Error::InvalidPolygon(format!(
                "a symmetric polygon needs an even number (≥ 4) of vertices, got {n}"
            )));
        }
        if !vertices.iter().all(|v| v.x.is_finite() && v.y.is_finite()) {
            return Err(Error::InvalidPolygon("non-finite vertex".into()));
        }
        let scale = vertices.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return Err(Error::InvalidPolygon("all vertices at the origin".into()));
        }
        let half = n / 2;
        for i in 0..half {
            if (vertices[i] + vertices[i + half]).norm() > SYMMETRY_TOL * scale {
                return Err(Error::InvalidPolygon(format!(
                    "vertex {i} has no opposite vertex −v (not centrally symmetric)"
                )));
            }
        }
        let mut turning = 0.0;
        for i in 0..n {
            let e0 = vertices[(i + 1) % n] - vertices[i];
            let e1 = vertices[(i + 2) % n] - vertices[(i + 1) % n];
            let c = cross(&e0, &e1);
            if c <= SYMMETRY_TOL * scale * scale {
                return Err(Error::InvalidPolygon(format!(
                    "vertices {}, {}, {} are collinear or turn clockwise",
                    i,
                    (i + 1) % n,
                    (i + 2) % n
                )));
            }
            turning += c.atan2(e0.dot(&e1));
        }
        if (turning - TAU).abs() > 1e-9 {
            return Err(Error::InvalidPolygon("vertex sequence winds more than once".into()));
        }
        Ok(Polygon { vertices })
    }

    /// Convex hull of the point set together with its reflection through
    /// the origin.
    pub fn symmetric_hull(points: &[Vec2]) -> Result<Self> {
        let mut all: Vec<Vec2> = points.iter().flat_map(|p| [*p, -*p]).collect();
        let hull = convex_hull(&mut all);
        Polygon::new(rotate_to_symmetric_order(hull))
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn area(&self) -> f64 {
        shoelace(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        let n = self.vertices.len();
        (0..n).map(|i| (self.vertices[(i + 1) % n] - self.vertices[i]).norm()).sum()
    }
}

/// Signed area of a closed polyline (positive for counterclockwise order).
pub fn shoelace(points: &[Vec2]) -> f64 {
    let n = points.len();
    if n < 3 {
        return 0.0;
    }
    let mut twice = 0.0;
    for i in 0..n {
        let p = points[i];
        let q = points[(i + 1) % n];
        twice += p.x * q.y - q.x * p.y;
    }
    0.5 * twice
}

/// Andrew's monotone chain; returns the hull counterclockwise without
/// collinear points.
fn convex_hull(points: &mut [Vec2]) -> Vec<Vec2> {
    points.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    let turn = |o: &Vec2, a: &Vec2, b: &Vec2| cross(&(a - o), &(b - o));
    let mut lower: Vec<Vec2> = Vec::new();
    for p in points.iter() {
        while lower.len() >= 2 && turn(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(*p);
    }
    let mut upper: Vec<Vec2> = Vec::new();
    for p in points.iter().rev() {
        while upper.len() >= 2 && turn(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(*p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Polygons built by sums or hulls can come out with `v` and `−v` not
/// exactly half a cycle apart when coordinates round; this also starts the
/// cycle at the bottom-most vertex.
fn rotate_to_symmetric_order(mut vertices: Vec<Vec2>) -> Vec<Vec2> {
    if vertices.is_empty() {
        return vertices;
    }
    let start = bottom_index(&vertices);
    vertices.rotate_left(start);
    let n = vertices.len();
    if n.is_multiple_of(2) {
        // Snap exact central symmetry.
        for i in 0..n / 2 {
            let mid = 0.5 * (vertices[i] - vertices[i + n / 2]);
            vertices[i] = mid;
            vertices[i + n / 2] = -mid;
        }
    }
    vertices
}

fn bottom_index(vertices: &[Vec2]) -> usize {
    let mut best = 0;
    for (i, v) in vertices.iter().enumerate() {
        let b = vertices[best];
        if v.y < b.y || (v.y == b.y && v.x < b.x) {
            best = i;
        }
    }
    best
}

/// Shape tag attached to a sampled support function.
///
/// Unlike the validated [`Ellipse`], the tag's matrix may have any positive
/// determinant so that scaled ellipses keep their closed form.
#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    Ellipse(Mat2),
    Segment(Vec2),
    Polygon(Vec<Vec2>),
    /// Minkowski sum of two or more parts, none of them a sum, at least one
    /// an ellipse. Polygonal sums are merged into a polygon instead.
    Sum(Vec<Shape>),
}

impl Shape {
    /// Exact Minkowski sum `a + b`.
    pub fn sum(a: &Shape, b: &Shape) -> Shape {
        if let Some(s) = minkowski_sum(a, b) {
            return s;
        }
        Shape::Sum(a.parts().iter().chain(b.parts()).cloned().collect())
    }

    /// The summands; a single shape is its own only part.
    pub fn parts(&self) -> &[Shape] {
        match self {
            Shape::Sum(parts) => parts,
            _ => std::slice::from_ref(self),
        }
    }

    /// Smooth part of the radius of curvature `h'' + h` at `θ`. Kinked
    /// parts carry their curvature in point masses and contribute zero.
    pub fn smooth_curvature(&self, theta: f64) -> f64 {
        match self {
            Shape::Ellipse(a) => a.determinant().powi(2) / self.support(theta).powi(3),
            Shape::Segment(_) | Shape::Polygon(_) => 0.0,
            Shape::Sum(parts) => parts.iter().map(|p| p.smooth_curvature(theta)).sum(),
        }
    }

    pub fn support(&self, theta: f64) -> f64 {
        let u = unit(theta);
        self.support_dir(&u)
    }

    /// Support in the unit direction `u`.
    pub(crate) fn support_dir(&self, u: &Vec2) -> f64 {
        match self {
            // Discs are exactly constant.
            Shape::Ellipse(a) if a[(0, 1)] == 0.0 && a[(1, 0)] == 0.0 && a[(0, 0)].abs() == a[(1, 1)].abs() => {
                a[(0, 0)].abs()
            }
            Shape::Ellipse(a) => (a.transpose() * u).norm(),
            Shape::Segment(v) => u.dot(v).abs(),
            Shape::Polygon(vs) => vs.iter().map(|v| u.dot(v)).fold(f64::NEG_INFINITY, f64::max),
            Shape::Sum(parts) => parts.iter().map(|p| p.support_dir(u)).sum(),
        }
    }

    /// Angular derivative `h'(θ)`; at kinks the value of one side.
    pub fn support_deriv(&self, theta: f64) -> f64 {
        let u = unit(theta);
        let up = perp(&u);
        match self {
            Shape::Ellipse(a) => {
                let s = a * a.transpose();
                let h = (a.transpose() * u).norm();
                up.dot(&(s * u)) / h
            }
            Shape::Sum(parts) => parts.iter().map(|p| p.support_deriv(theta)).sum(),
            _ => up.dot(&self.boundary_point(theta)),
        }
    }

    /// Point of the body whose outer normal is `u(θ)`, the gradient of the
    /// one-homogeneous support function.
    pub fn boundary_point(&self, theta: f64) -> Vec2 {
        let u = unit(theta);
        match self {
            Shape::Ellipse(a) => {
                let h = (a.transpose() * u).norm();
                a * (a.transpose() * u) / h
            }
            Shape::Segment(v) => {
                if u.dot(v) >= 0.0 {
                    *v
                } else {
                    -v
                }
            }
            Shape::Polygon(vs) => {
                let mut best = vs[0];
                let mut best_val = u.dot(&best);
                for v in vs.iter().skip(1) {
                    let val = u.dot(v);
                    if val > best_val {
                        best = *v;
                        best_val = val;
                    }
                }
                best
            }
            Shape::Sum(parts) => parts.iter().map(|p| p.boundary_point(theta)).sum(),
        }
    }

    /// Angles in `[0, 2π)` where the support function is not smooth, or for
    /// ellipses where it bends sharpest. Quadrature is split there.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            Shape::Ellipse(a) => {
                let w = weakest_direction(a);
                let phi = angle_of(&w);
                vec![phi, wrap_angle(phi + PI)]
            }
            Shape::Segment(v) => {
                let phi = angle_of(v);
                vec![wrap_angle(phi + 0.5 * PI), wrap_angle(phi - 0.5 * PI)]
            }
            Shape::Polygon(vs) => {
                let n = vs.len();
                (0..n)
                    .map(|i| {
                        let e = vs[(i + 1) % n] - vs[i];
                        angle_of(&Vec2::new(e.y, -e.x))
                    })
                    .collect()
            }
            Shape::Sum(parts) => parts.iter().flat_map(Shape::breakpoints).collect(),
        }
    }

    pub fn area(&self) -> f64 {
        match self {
            Shape::Ellipse(a) => PI * a.determinant().abs(),
            Shape::Segment(_) => 0.0,
            Shape::Polygon(vs) => shoelace(vs),
            // Sum of all mixed areas.
            Shape::Sum(parts) => {
                PI * parts.iter().map(|p| parts.iter().map(|q| crate::lorentz::shape_form(p, q)).sum::<f64>()).sum::<f64>()
            }
        }
    }

    pub fn perimeter(&self) -> f64 {
        match self {
            Shape::Ellipse(a) => {
                let (s1, s2) = singular_values(a);
                if s2 <= 0.0 {
                    return 4.0 * s1;
                }
                match specfun::agm_ke_complement(s2 / s1) {
                    Ok((_, e)) => 4.0 * s1 * e,
                    Err(_) => 4.0 * s1,
                }
            }
            Shape::Segment(v) => 4.0 * v.norm(),
            Shape::Polygon(vs) => {
                let n = vs.len();
                (0..n).map(|i| (vs[(i + 1) % n] - vs[i]).norm()).sum()
            }
            Shape::Sum(parts) => parts.iter().map(Shape::perimeter).sum(),
        }
    }

    /// Image under the homothety `x ↦ c x`, `c > 0`.
    pub fn scaled(&self, c: f64) -> Shape {
        match self {
            Shape::Ellipse(a) => Shape::Ellipse(a * c),
            Shape::Segment(v) => Shape::Segment(v * c),
            Shape::Polygon(vs) => Shape::Polygon(vs.iter().map(|v| v * c).collect()),
            Shape::Sum(parts) => Shape::Sum(parts.iter().map(|p| p.scaled(c)).collect()),
        }
    }

    /// Image under the linear map `m`.
    pub fn transformed(&self, m: &Mat2) -> Shape {
        match self {
            Shape::Ellipse(a) => {
                let p = m * a;
                // The ellipse only depends on p pᵀ; a rotated disc stays the disc.
                let g = p * p.transpose() - Mat2::identity();
                if g.amax() <= 4.0 * f64::EPSILON {
                    Shape::Ellipse(Mat2::identity())
                } else {
                    Shape::Ellipse(p)
                }
            }
            Shape::Segment(v) => Shape::Segment(m * v),
            Shape::Polygon(vs) => {
                let mut out: Vec<Vec2> = vs.iter().map(|v| m * v).collect();
                if m.determinant() < 0.0 {
                    out.reverse();
                }
                Shape::Polygon(rotate_to_symmetric_order(out))
            }
            Shape::Sum(parts) => Shape::Sum(parts.iter().map(|p| p.transformed(m)).collect()),
        }
    }

    fn as_polygon_cycle(&self) -> Option<Vec<Vec2>> {
        match self {
            Shape::Segment(v) => Some(vec![*v, -v]),
            Shape::Polygon(vs) => Some(vs.clone()),
            Shape::Ellipse(_) | Shape::Sum(_) => None,
        }
    }
}

impl From<&Ellipse> for Shape {
    fn from(e: &Ellipse) -> Self {
        Shape::Ellipse(e.matrix)
    }
}

impl From<&Segment> for Shape {
    fn from(s: &Segment) -> Self {
        Shape::Segment(s.endpoint)
    }
}

impl From<&Polygon> for Shape {
    fn from(p: &Polygon) -> Self {
        Shape::Polygon(p.vertices.clone())
    }
}

/// Exact Minkowski sum of two segment/polygon shapes by merging their edge
/// sequences in angular order. Returns `None` when either side has a
/// smooth part.
pub fn minkowski_sum(a: &Shape, b: &Shape) -> Option<Shape> {
    let p = a.as_polygon_cycle()?;
    let q = b.as_polygon_cycle()?;
    let cycle = edge_merge(&p, &q);
    match cycle.len() {
        0 | 1 => None,
        2 => Some(Shape::Segment(0.5 * (cycle[1] - cycle[0]))),
        _ => Some(Shape::Polygon(rotate_to_symmetric_order(cycle))),
    }
}

/// Edges of a convex cycle (a 2-cycle is a segment traversed both ways),
/// starting at the bottom-most vertex.
fn edges_from_bottom(cycle: &[Vec2]) -> (Vec2, Vec<Vec2>) {
    let n = cycle.len();
    let s = bottom_index(cycle);
    let edges = (0..n).map(|k| cycle[(s + k + 1) % n] - cycle[(s + k) % n]).collect();
    (cycle[s], edges)
}

fn edge_merge(p: &[Vec2], q: &[Vec2]) -> Vec<Vec2> {
    let (p0, ep) = edges_from_bottom(p);
    let (q0, eq) = edges_from_bottom(q);
    let mut edges: Vec<(f64, Vec2)> = ep.into_iter().chain(eq).map(|e| (angle_of(&e), e)).collect();
    edges.sort_by(|x, y| x.0.total_cmp(&y.0));

    // Fold parallel edges with the same orientation.
    let mut merged: Vec<Vec2> = Vec::with_capacity(edges.len());
    for (_, e) in edges {
        if let Some(last) = merged.last_mut() {
            let scale = last.norm() * e.norm();
            if cross(last, &e).abs() <= 1e-13 * scale && last.dot(&e) > 0.0 {
                *last += e;
                continue;
            }
        }
        merged.push(e);
    }
    if merged.len() > 1 {
        let first = merged[0];
        let last = merged[merged.len() - 1];
        let scale = last.norm() * first.norm();
        if cross(&last, &first).abs() <= 1e-13 * scale && last.dot(&first) > 0.0 {
            merged[0] += last;
            merged.pop();
        }
    }

    let mut out = Vec::with_capacity(merged.len());
    let mut cur = p0 + q0;
    for e in merged.iter() {
        out.push(cur);
        cur += e;
    }
    out
}

/// Mixed area `a(P, Q) = (area(P + Q) − area(P) − area(Q)) / 2` with the
/// sum computed exactly by edge merging and areas by the shoelace formula.
pub fn polygon_mixed_area_oracle(p: &Polygon, q: &Polygon) -> f64 {
    let sum = edge_merge(&p.vertices, &q.vertices);
    0.5 * (shoelace(&sum) - p.area() - q.area())
}
