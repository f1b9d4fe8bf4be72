//! Planar convex polygons and their boundary data (edge lengths, interior angles).
//!
//! Labeling: vertices `P[0..n)` counterclockwise, edge `i` runs from `P[i]` to
//! `P[i+1]`, and `angles[i]` is the interior angle at `P[i+1]`, between edge
//! `i` and edge `i+1`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

mod edge_split;
mod quad;
mod reconstruct;

pub use edge_split::{edge_split_solve, psi_phi, DeformationFamily, EdgeSplitInput, EdgeSplitOutcome};
pub use quad::quad_from_asa_perimeter;
pub use reconstruct::{reconstruct_missing_angles, triangle_angles, PartialBoundaryData};

/// Relative tolerance for geometric predicates, scaled by the perimeter.
pub const GEOM_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("non-finite coordinate at vertex {0}")]
    NonFinite(usize),
    #[error("degenerate polygon: collinear or repeated vertices at vertex {0}")]
    Degenerate(usize),
    #[error("non-convex polygon: reflex or clockwise turn at vertex {0}")]
    NonConvex(usize),
    #[error("polygon is not simple (total turning {0:.6} rad)")]
    NotSimple(f64),
    #[error("lengths and angles differ in count ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("non-positive edge length at edge {0}")]
    NonPositiveLength(usize),
    #[error("non-convex data: angle {0} is outside (0, pi)")]
    NonConvexData(usize),
    #[error("angle sum off by {0:.3e} rad")]
    AngleSum(f64),
    #[error("non-closing data: closure residual {0:.3e}")]
    NonClosing(f64),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("no polygon realizes data: {0}")]
    Unrealizable(String),
    #[error("perimeter unreachable: requested {requested}, feasible range ({lo}, {hi})")]
    PerimeterUnreachable { requested: f64, lo: f64, hi: f64 },
    #[error("data realizes no convex polygon: {0}")]
    NoConvexSolution(String),
}

pub type Result<T> = std::result::Result<T, GeometryError>;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanarPoint {
    pub x: f64,
    pub y: f64,
}

impl PlanarPoint {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dist(&self, o: &PlanarPoint) -> f64 {
        (self.x - o.x).hypot(self.y - o.y)
    }
}

pub(crate) fn cross(a: (f64, f64), b: (f64, f64)) -> f64 {
    a.0 * b.1 - a.1 * b.0
}

pub(crate) fn dot(a: (f64, f64), b: (f64, f64)) -> f64 {
    a.0 * b.0 + a.1 * b.1
}

/// A strictly convex polygon with counterclockwise vertices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexPolygon {
    vertices: Vec<PlanarPoint>,
}

impl ConvexPolygon {
    /// Validates strict convexity and counterclockwise order.
    pub fn new(vertices: Vec<PlanarPoint>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeometryError::TooFewVertices(n));
        }
        for (i, p) in vertices.iter().enumerate() {
            if !p.x.is_finite() || !p.y.is_finite() {
                return Err(GeometryError::NonFinite(i));
            }
        }
        let perim: f64 = (0..n).map(|i| vertices[i].dist(&vertices[(i + 1) % n])).sum();
        let mut turning = 0.0;
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            let e1 = (b.x - a.x, b.y - a.y);
            let e2 = (c.x - b.x, c.y - b.y);
            let l1 = e1.0.hypot(e1.1);
            let l2 = e2.0.hypot(e2.1);
            if l1 <= GEOM_TOL * perim || l2 <= GEOM_TOL * perim {
                return Err(GeometryError::Degenerate((i + 1) % n));
            }
            let cr = cross(e1, e2) / (l1 * l2);
            if cr.abs() <= GEOM_TOL && dot(e1, e2) > 0.0 {
                return Err(GeometryError::Degenerate((i + 1) % n));
            }
            if cr <= 0.0 {
                return Err(GeometryError::NonConvex((i + 1) % n));
            }
            turning += cr.atan2(dot(e1, e2) / (l1 * l2));
        }
        if (turning - 2.0 * PI).abs() > 1e-6 {
            return Err(GeometryError::NotSimple(turning));
        }
        Ok(Self { vertices })
    }

    /// Like [`ConvexPolygon::new`] but accepts clockwise input by reversing it.
    pub fn new_any_orientation(mut vertices: Vec<PlanarPoint>) -> Result<Self> {
        if signed_area(&vertices) < 0.0 {
            vertices.reverse();
        }
        Self::new(vertices)
    }

    pub fn vertices(&self) -> &[PlanarPoint] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        let n = self.vertices.len();
        (0..n).map(|i| self.vertices[i].dist(&self.vertices[(i + 1) % n])).sum()
    }

    /// Area centroid.
    pub fn centroid(&self) -> PlanarPoint {
        let v = &self.vertices;
        let n = v.len();
        let (mut cx, mut cy, mut a2) = (0.0, 0.0, 0.0);
        for i in 0..n {
            let p = v[i];
            let q = v[(i + 1) % n];
            let w = p.x * q.y - q.x * p.y;
            a2 += w;
            cx += (p.x + q.x) * w;
            cy += (p.y + q.y) * w;
        }
        PlanarPoint::new(cx / (3.0 * a2), cy / (3.0 * a2))
    }
}

pub(crate) fn signed_area(v: &[PlanarPoint]) -> f64 {
    let n = v.len();
    0.5 * (0..n)
        .map(|i| v[i].x * v[(i + 1) % n].y - v[(i + 1) % n].x * v[i].y)
        .sum::<f64>()
}

/// Edge lengths and interior angles of a polygon.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryData {
    pub lengths: Vec<f64>,
    pub angles: Vec<f64>,
}

impl BoundaryData {
    /// Validated constructor.
    pub fn new(lengths: Vec<f64>, angles: Vec<f64>) -> Result<Self> {
        let d = Self { lengths, angles };
        d.validate()?;
        Ok(d)
    }

    /// No checks; callers validate later.
    pub fn from_raw(lengths: Vec<f64>, angles: Vec<f64>) -> Self {
        Self { lengths, angles }
    }

    pub fn n(&self) -> usize {
        self.lengths.len()
    }

    pub fn perimeter(&self) -> f64 {
        self.lengths.iter().sum()
    }

    /// Direction angle of each edge, edge 0 along +x.
    pub fn edge_headings(&self) -> Vec<f64> {
        let mut th = Vec::with_capacity(self.n());
        let mut t = 0.0;
        for i in 0..self.n() {
            th.push(t);
            t += PI - self.angles[i];
        }
        th
    }

    pub fn directions(&self) -> Vec<(f64, f64)> {
        self.edge_headings()
            .into_iter()
            .map(|t| (t.cos(), t.sin()))
            .collect()
    }

    pub fn closure_residual(&self) -> f64 {
        let (mut x, mut y) = (0.0, 0.0);
        for (l, u) in self.lengths.iter().zip(self.directions()) {
            x += l * u.0;
            y += l * u.1;
        }
        x.hypot(y)
    }

    pub fn angle_sum_residual(&self) -> f64 {
        self.angles.iter().sum::<f64>() - (self.n() as f64 - 2.0) * PI
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_with(GEOM_TOL)
    }

    pub fn validate_with(&self, tol: f64) -> Result<()> {
        let n = self.lengths.len();
        if self.angles.len() != n {
            return Err(GeometryError::LengthMismatch(n, self.angles.len()));
        }
        if n < 3 {
            return Err(GeometryError::TooFewVertices(n));
        }
        for (i, l) in self.lengths.iter().enumerate() {
            if !(l.is_finite() && *l > 0.0) {
                return Err(GeometryError::NonPositiveLength(i));
            }
        }
        for (i, a) in self.angles.iter().enumerate() {
            if !(a.is_finite() && *a > 0.0 && *a < PI) {
                return Err(GeometryError::NonConvexData(i));
            }
        }
        let s = self.angle_sum_residual();
        if s.abs() > tol * n as f64 {
            return Err(GeometryError::AngleSum(s));
        }
        let r = self.closure_residual();
        if r > tol * self.perimeter() {
            return Err(GeometryError::NonClosing(r));
        }
        Ok(())
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self::from_raw(self.lengths.iter().map(|l| l * c).collect(), self.angles.clone())
    }

    /// Rescaled to perimeter one.
    pub fn normalized(&self) -> Self {
        self.scaled(1.0 / self.perimeter())
    }

    pub fn relabel(&self, lab: DihedralLabeling) -> Self {
        let n = self.n();
        let s = lab.offset % n;
        let mut l: Vec<f64> = (0..n).map(|k| self.lengths[(k + s) % n]).collect();
        let mut a: Vec<f64> = (0..n).map(|k| self.angles[(k + s) % n]).collect();
        if lab.reflected {
            l.reverse();
            a = (0..n).map(|k| a[(2 * n - 2 - k) % n]).collect();
        }
        Self::from_raw(l, a)
    }

    /// The dihedral relabeling with lexicographically smallest (lengths, angles).
    pub fn canonical_labeling(&self) -> Self {
        DihedralLabeling::all(self.n())
            .into_iter()
            .map(|lab| self.relabel(lab))
            .min_by(|x, y| lex_cmp(x, y))
            .expect("n >= 1")
    }

    pub fn min_angle(&self) -> f64 {
        self.angles.iter().cloned().fold(f64::INFINITY, f64::min)
    }
}

pub(crate) fn lex_cmp(a: &BoundaryData, b: &BoundaryData) -> std::cmp::Ordering {
    for (x, y) in a.lengths.iter().zip(&b.lengths).chain(a.angles.iter().zip(&b.angles)) {
        match x.total_cmp(y) {
            std::cmp::Ordering::Equal => {}
            o => return o,
        }
    }
    std::cmp::Ordering::Equal
}

/// One of the 2n relabelings: cyclic shift by `offset`, then optional reversal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DihedralLabeling {
    pub offset: usize,
    pub reflected: bool,
}

impl DihedralLabeling {
    pub fn all(n: usize) -> Vec<Self> {
        let mut v = Vec::with_capacity(2 * n);
        for reflected in [false, true] {
            for offset in 0..n {
                v.push(Self { offset, reflected });
            }
        }
        v
    }
}

pub fn extract_boundary_data(poly: &ConvexPolygon) -> BoundaryData {
    let v = poly.vertices();
    let n = v.len();
    let mut lengths = Vec::with_capacity(n);
    let mut angles = Vec::with_capacity(n);
    for i in 0..n {
        let a = v[i];
        let b = v[(i + 1) % n];
        let c = v[(i + 2) % n];
        let e1 = (b.x - a.x, b.y - a.y);
        let e2 = (c.x - b.x, c.y - b.y);
        lengths.push(e1.0.hypot(e1.1));
        angles.push(PI - cross(e1, e2).atan2(dot(e1, e2)));
    }
    BoundaryData::from_raw(lengths, angles)
}

/// Canonical placement: first vertex at the origin, first edge along +x.
pub fn build_polygon(data: &BoundaryData) -> Result<ConvexPolygon> {
    data.validate()?;
    let mut pts = Vec::with_capacity(data.n());
    let (mut x, mut y) = (0.0, 0.0);
    for (l, u) in data.lengths.iter().zip(data.directions()) {
        pts.push(PlanarPoint::new(x, y));
        x += l * u.0;
        y += l * u.1;
    }
    ConvexPolygon::new(pts)
}

/// True iff some dihedral relabeling of `a` matches `b` entrywise within `tol`.
pub fn congruent(a: &BoundaryData, b: &BoundaryData, tol: f64) -> bool {
    if a.n() != b.n() || a.angles.len() != b.angles.len() {
        return false;
    }
    DihedralLabeling::all(a.n()).into_iter().any(|lab| {
        let r = a.relabel(lab);
        r.lengths.iter().zip(&b.lengths).all(|(x, y)| (x - y).abs() <= tol)
            && r.angles.iter().zip(&b.angles).all(|(x, y)| (x - y).abs() <= tol)
    })
}

/// Regular n-gon with the given side.
pub fn regular_polygon(n: usize, side: f64) -> BoundaryData {
    let a = PI * (n as f64 - 2.0) / n as f64;
    BoundaryData::from_raw(vec![side; n], vec![a; n])
}

pub fn rectangle(a: f64, b: f64) -> BoundaryData {
    BoundaryData::from_raw(vec![a, b, a, b], vec![PI / 2.0; 4])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_extracts() {
        let p = ConvexPolygon::new(vec![
            PlanarPoint::new(0.0, 0.0),
            PlanarPoint::new(1.0, 0.0),
            PlanarPoint::new(1.0, 1.0),
            PlanarPoint::new(0.0, 1.0),
        ])
        .unwrap();
        let d = extract_boundary_data(&p);
        for i in 0..4 {
            assert!((d.lengths[i] - 1.0).abs() < 1e-15);
            assert!((d.angles[i] - PI / 2.0).abs() < 1e-15);
        }
    }

    #[test]
    fn reflex_vertex_is_named() {
        let err = ConvexPolygon::new(vec![
            PlanarPoint::new(0.0, 0.0),
            PlanarPoint::new(2.0, 0.0),
            PlanarPoint::new(1.0, 0.5),
            PlanarPoint::new(2.0, 2.0),
            PlanarPoint::new(0.0, 2.0),
        ])
        .unwrap_err();
        assert_eq!(err, GeometryError::NonConvex(2));
    }

    #[test]
    fn collinear_vertex_is_named() {
        let err = ConvexPolygon::new(vec![
            PlanarPoint::new(0.0, 0.0),
            PlanarPoint::new(1.0, 0.0),
            PlanarPoint::new(2.0, 0.0),
            PlanarPoint::new(1.0, 1.0),
        ])
        .unwrap_err();
        assert_eq!(err, GeometryError::Degenerate(1));
    }

    #[test]
    fn reflection_keeps_vertex_between_its_edges() {
        let d = BoundaryData::from_raw(vec![1.0, 2.0, 3.0, 4.0], vec![0.1, 0.2, 0.3, 0.4]);
        let r = d.relabel(DihedralLabeling { offset: 0, reflected: true });
        assert_eq!(r.lengths, vec![4.0, 3.0, 2.0, 1.0]);
        // new vertex 0 sits between old edges 3 and 2, i.e. old vertex 2
        assert_eq!(r.angles, vec![0.3, 0.2, 0.1, 0.4]);
    }
}
