use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::FemError;
use crate::geometry::{ConvexPolygon, PlanarPoint};

/// Conforming triangle mesh. Boundary edges run counterclockwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TriangleMesh {
    pub nodes: Vec<PlanarPoint>,
    pub triangles: Vec<[usize; 3]>,
    pub boundary_edges: Vec<[usize; 2]>,
    /// Boundary nodes in counterclockwise order, starting at polygon vertex 0.
    pub boundary_nodes: Vec<usize>,
    /// Longest triangle edge.
    pub h: f64,
    pub subdivisions: usize,
}

#[derive(Hash, PartialEq, Eq, Clone, Copy)]
enum Key {
    Center,
    Radial(usize, usize),
    Fan(usize, usize, usize),
}

impl TriangleMesh {
    pub fn triangle_area(&self, t: usize) -> f64 {
        let [a, b, c] = self.triangles[t].map(|i| self.nodes[i]);
        0.5 * ((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x))
    }

    /// Smallest interior angle over all triangles, in radians.
    pub fn min_angle(&self) -> f64 {
        let mut best = f64::INFINITY;
        for t in &self.triangles {
            let p = t.map(|i| self.nodes[i]);
            for k in 0..3 {
                let (a, b, c) = (p[k], p[(k + 1) % 3], p[(k + 2) % 3]);
                let (ux, uy) = (b.x - a.x, b.y - a.y);
                let (vx, vy) = (c.x - a.x, c.y - a.y);
                let ang = (ux * vy - uy * vx).abs().atan2(ux * vx + uy * vy);
                best = best.min(ang);
            }
        }
        best
    }

    pub fn boundary_length(&self) -> f64 {
        self.boundary_edges
            .iter()
            .map(|[a, b]| self.nodes[*a].dist(&self.nodes[*b]))
            .sum()
    }

    /// Plain-text dump: a header line, node coordinates, then triangles.
    pub fn to_off(&self) -> String {
        let mut s = String::from("OFF\n");
        let _ = writeln!(s, "{} {} {}", self.nodes.len(), self.triangles.len(), self.boundary_edges.len());
        for p in &self.nodes {
            let _ = writeln!(s, "{} {} 0", p.x, p.y);
        }
        for t in &self.triangles {
            let _ = writeln!(s, "3 {} {} {}", t[0], t[1], t[2]);
        }
        s
    }
}

/// Fan from the centroid, each fan triangle subdivided uniformly into `N^2`
/// pieces, with one `N` for the whole polygon so neighbouring fans conform.
/// Doubling `N` gives a nested refinement.
pub fn triangulate(poly: &ConvexPolygon, h: f64) -> Result<TriangleMesh, FemError> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(FemError::BadMeshSize(h));
    }
    let v = poly.vertices();
    let n = v.len();
    let c = poly.centroid();
    let mut longest: f64 = 0.0;
    for i in 0..n {
        longest = longest.max(v[i].dist(&v[(i + 1) % n])).max(v[i].dist(&c));
    }
    let subdivisions = ((longest / h).ceil() as usize).max(1);
    triangulate_with(poly, subdivisions)
}

pub(crate) fn triangulate_with(poly: &ConvexPolygon, nsub: usize) -> Result<TriangleMesh, FemError> {
    let v = poly.vertices();
    let n = v.len();
    let c = poly.centroid();
    if poly.area() <= 0.0 {
        return Err(FemError::Degenerate("zero area".into()));
    }
    let nn = nsub;
    let key = |i: usize, a: usize, b: usize| -> Key {
        match (a, b) {
            (0, 0) => Key::Center,
            (_, 0) => Key::Radial(i, a),
            (0, _) => Key::Radial((i + 1) % n, b),
            _ => Key::Fan(i, a, b),
        }
    };
    let mut index: HashMap<Key, usize> = HashMap::new();
    let mut nodes = Vec::new();
    let mut id = |i: usize, a: usize, b: usize, nodes: &mut Vec<PlanarPoint>| -> usize {
        *index.entry(key(i, a, b)).or_insert_with(|| {
            let (p, q) = (v[i], v[(i + 1) % n]);
            let (fa, fb) = (a as f64 / nn as f64, b as f64 / nn as f64);
            nodes.push(PlanarPoint::new(
                c.x + fa * (p.x - c.x) + fb * (q.x - c.x),
                c.y + fa * (p.y - c.y) + fb * (q.y - c.y),
            ));
            nodes.len() - 1
        })
    };
    let mut triangles = Vec::with_capacity(n * nn * nn);
    let mut boundary_edges = Vec::with_capacity(n * nn);
    let mut boundary_nodes = Vec::with_capacity(n * nn);
    for i in 0..n {
        for a in 0..nn {
            for b in 0..nn - a {
                let p0 = id(i, a, b, &mut nodes);
                let p1 = id(i, a + 1, b, &mut nodes);
                let p2 = id(i, a, b + 1, &mut nodes);
                triangles.push([p0, p1, p2]);
                if a + b + 2 <= nn {
                    let p3 = id(i, a + 1, b + 1, &mut nodes);
                    triangles.push([p1, p3, p2]);
                }
            }
        }
        for s in 0..nn {
            let p = id(i, nn - s, s, &mut nodes);
            let q = id(i, nn - s - 1, s + 1, &mut nodes);
            boundary_edges.push([p, q]);
            boundary_nodes.push(p);
        }
    }
    let mut hmax: f64 = 0.0;
    for t in &triangles {
        for k in 0..3 {
            hmax = hmax.max(nodes[t[k]].dist(&nodes[t[(k + 1) % 3]]));
        }
    }
    let mesh = TriangleMesh {
        nodes,
        triangles,
        boundary_edges,
        boundary_nodes,
        h: hmax,
        subdivisions: nsub,
    };
    if (0..mesh.triangles.len()).any(|t| !(mesh.triangle_area(t) > 0.0)) {
        return Err(FemError::Degenerate("a mesh triangle has non-positive area".into()));
    }
    Ok(mesh)
}
