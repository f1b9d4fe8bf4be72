use std::collections::BTreeMap;
use std::fmt::Write as _;

use faer::linalg::solvers::Solve;
use faer::sparse::{SparseColMat, Triplet};
use faer::{Mat, Side};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::mesh::{triangulate_with, TriangleMesh};
use super::{triangulate, FemError};
use crate::geometry::{build_polygon, BoundaryData, PlanarPoint};

/// Symmetric sparse matrix as sorted `(row, col, value)` entries, both halves stored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetricMatrix {
    pub n: usize,
    pub entries: Vec<(usize, usize, f64)>,
}

impl SymmetricMatrix {
    fn from_map(n: usize, map: BTreeMap<(usize, usize), f64>) -> Self {
        Self {
            n,
            entries: map.into_iter().map(|((i, j), v)| (i, j, v)).collect(),
        }
    }

    pub fn quad_form(&self, v: &[f64]) -> f64 {
        self.entries.iter().map(|&(i, j, a)| v[i] * a * v[j]).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries
            .binary_search_by(|e| (e.0, e.1).cmp(&(i, j)))
            .map(|k| self.entries[k].2)
            .unwrap_or(0.0)
    }
}

/// Stiffness `K` (Dirichlet energy) and boundary mass `M` (boundary L2).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Assembly {
    pub stiffness: SymmetricMatrix,
    pub boundary_mass: SymmetricMatrix,
}

pub fn assemble(mesh: &TriangleMesh) -> Assembly {
    let local: Vec<[(usize, usize, f64); 9]> = mesh
        .triangles
        .par_iter()
        .map(|t| {
            let p = t.map(|i| mesh.nodes[i]);
            let area2 = (p[1].x - p[0].x) * (p[2].y - p[0].y) - (p[1].y - p[0].y) * (p[2].x - p[0].x);
            let b: [f64; 3] = std::array::from_fn(|i| p[(i + 1) % 3].y - p[(i + 2) % 3].y);
            let c: [f64; 3] = std::array::from_fn(|i| p[(i + 2) % 3].x - p[(i + 1) % 3].x);
            std::array::from_fn(|k| {
                let (i, j) = (k / 3, k % 3);
                (t[i], t[j], (b[i] * b[j] + c[i] * c[j]) / (2.0 * area2))
            })
        })
        .collect();
    let mut k = BTreeMap::new();
    for block in &local {
        for &(i, j, v) in block {
            *k.entry((i, j)).or_insert(0.0) += v;
        }
    }
    let mut m = BTreeMap::new();
    for &[a, b] in &mesh.boundary_edges {
        let len = mesh.nodes[a].dist(&mesh.nodes[b]);
        for (i, j, w) in [(a, a, 2.0), (b, b, 2.0), (a, b, 1.0), (b, a, 1.0)] {
            *m.entry((i, j)).or_insert(0.0) += w * len / 6.0;
        }
    }
    let n = mesh.nodes.len();
    Assembly {
        stiffness: SymmetricMatrix::from_map(n, k),
        boundary_mass: SymmetricMatrix::from_map(n, m),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SteklovSolution {
    /// `sigma_0 <= sigma_1 <= ...`
    pub sigmas: Vec<f64>,
    /// One trace per eigenvalue, over `boundary_points`.
    pub boundary_traces: Vec<Vec<f64>>,
    pub boundary_points: Vec<PlanarPoint>,
    pub mesh_h: f64,
}

impl SteklovSolution {
    /// `index,sigma,mesh_h,extrapolated`
    pub fn to_csv(&self) -> String {
        let mut s = String::from("index,sigma,mesh_h,extrapolated\n");
        for (i, v) in self.sigmas.iter().enumerate() {
            let _ = writeln!(s, "{i},{v},{},false", self.mesh_h);
        }
        s
    }

    /// `node,x,y,u_0,u_1,...`
    pub fn traces_csv(&self) -> String {
        let mut s = String::from("node,x,y");
        for j in 0..self.boundary_traces.len() {
            let _ = write!(s, ",u_{j}");
        }
        s.push('\n');
        for (i, p) in self.boundary_points.iter().enumerate() {
            let _ = write!(s, "{i},{},{}", p.x, p.y);
            for t in &self.boundary_traces {
                let _ = write!(s, ",{}", t[i]);
            }
            s.push('\n');
        }
        s
    }
}

/// Eliminates interior unknowns and solves `S u = sigma M_b u` densely.
/// Returns `sigma_0 .. sigma_count`.
pub fn solve_steklov(
    mesh: &TriangleMesh,
    asm: &Assembly,
    count: usize,
) -> Result<SteklovSolution, FemError> {
    let n = mesh.nodes.len();
    let bnodes = &mesh.boundary_nodes;
    let nb = bnodes.len();
    if count + 1 > nb {
        return Err(FemError::TooFewBoundaryNodes { requested: count + 1, available: nb });
    }
    // position of each node in the boundary or interior block
    let mut slot = vec![(false, 0usize); n];
    for (k, &b) in bnodes.iter().enumerate() {
        slot[b] = (true, k);
    }
    let mut ni = 0;
    for s in slot.iter_mut() {
        if !s.0 {
            *s = (false, ni);
            ni += 1;
        }
    }
    let mut kii = Vec::new();
    let mut kib: Vec<(usize, usize, f64)> = Vec::new();
    let mut s = Mat::<f64>::zeros(nb, nb);
    for &(i, j, v) in &asm.stiffness.entries {
        match (slot[i], slot[j]) {
            ((false, a), (false, b)) => kii.push(Triplet::new(a, b, v)),
            ((false, a), (true, b)) => kib.push((a, b, v)),
            ((true, a), (true, b)) => s[(a, b)] = v,
            _ => {}
        }
    }
    if ni > 0 {
        let kii = SparseColMat::<usize, f64>::try_new_from_triplets(ni, ni, &kii)
            .map_err(|e| FemError::Eigen(format!("{e:?}")))?;
        let llt = kii.sp_cholesky(Side::Lower).map_err(|_| FemError::SingularInterior)?;
        // S -= K_ib^T K_ii^-1 K_ib, a block of boundary columns at a time
        let mut by_col: Vec<Vec<(usize, f64)>> = vec![Vec::new(); nb];
        for &(a, b, v) in &kib {
            by_col[b].push((a, v));
        }
        const BLOCK: usize = 64;
        for c0 in (0..nb).step_by(BLOCK) {
            let w = BLOCK.min(nb - c0);
            let mut x = Mat::<f64>::zeros(ni, w);
            for j in 0..w {
                for &(a, v) in &by_col[c0 + j] {
                    x[(a, j)] = v;
                }
            }
            llt.solve_in_place(x.as_mut());
            for (b, col) in by_col.iter().enumerate() {
                for &(a, v) in col {
                    for j in 0..w {
                        s[(b, c0 + j)] -= v * x[(a, j)];
                    }
                }
            }
        }
    }
    let mut mb = Mat::<f64>::zeros(nb, nb);
    for &(i, j, v) in &asm.boundary_mass.entries {
        if let ((true, a), (true, b)) = (slot[i], slot[j]) {
            mb[(a, b)] = v;
        }
    }
    let llt = mb.llt(Side::Lower).map_err(|_| FemError::SingularMass)?;
    let l = llt.L();
    // C = L^-1 S L^-T
    let mut t = s.clone();
    l.solve_lower_triangular_in_place(t.as_mut());
    let mut c = t.transpose().to_owned();
    l.solve_lower_triangular_in_place(c.as_mut());
    let cs = Mat::<f64>::from_fn(nb, nb, |i, j| 0.5 * (c[(i, j)] + c[(j, i)]));
    let evd = cs
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| FemError::Eigen(format!("{e:?}")))?;
    let vals = evd.S();
    let u = evd.U();
    let take = count + 1;
    let sigmas: Vec<f64> = (0..take).map(|j| vals[j]).collect();
    let mut y = Mat::<f64>::from_fn(nb, take, |i, j| u[(i, j)]);
    l.transpose().solve_upper_triangular_in_place(y.as_mut());
    let boundary_traces = (0..take).map(|j| (0..nb).map(|i| y[(i, j)]).collect()).collect();
    Ok(SteklovSolution {
        sigmas,
        boundary_traces,
        boundary_points: bnodes.iter().map(|&b| mesh.nodes[b]).collect(),
        mesh_h: mesh.h,
    })
}

/// Polygon, mesh, assembly and solve in one call.
pub fn steklov_spectrum(data: &BoundaryData, h: f64, k: usize) -> Result<SteklovSolution, FemError> {
    let poly = build_polygon(data)?;
    let mesh = triangulate(&poly, h)?;
    solve_steklov(&mesh, &assemble(&mesh), k)
}

/// Three nested levels and their Richardson extrapolation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtrapolatedSpectrum {
    pub levels: Vec<SteklovSolution>,
    pub sigmas: Vec<f64>,
    /// Whether index j was extrapolated; otherwise the finest value is kept.
    pub extrapolated: Vec<bool>,
    /// Observed convergence order per index (NaN when not extrapolated).
    pub orders: Vec<f64>,
}

impl ExtrapolatedSpectrum {
    pub fn finest(&self) -> &SteklovSolution {
        self.levels.last().expect("three levels")
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("index,sigma,mesh_h,extrapolated\n");
        for lvl in &self.levels {
            for (i, v) in lvl.sigmas.iter().enumerate() {
                let _ = writeln!(s, "{i},{v},{},false", lvl.mesh_h);
            }
        }
        for (i, v) in self.sigmas.iter().enumerate() {
            let _ = writeln!(s, "{i},{v},0,{}", self.extrapolated[i]);
        }
        s
    }
}

/// Extrapolates `s0, s1, s2` from meshes `h, h/2, h/4`. Falls back to `s2`
/// unless the differences decrease geometrically.
pub fn richardson(s0: f64, s1: f64, s2: f64) -> (f64, Option<f64>) {
    let (d1, d2) = (s0 - s1, s1 - s2);
    if !(d1 > 0.0 && d2 > 0.0 && d1 > d2) {
        return (s2, None);
    }
    let p = (d1 / d2).log2().clamp(1.0, 4.0);
    (s2 - d2 / (2f64.powf(p) - 1.0), Some(p))
}

/// Solves on meshes with `N, 2N, 4N` subdivisions, `N` set by `h`.
pub fn steklov_spectrum_extrapolated(
    data: &BoundaryData,
    h: f64,
    k: usize,
) -> Result<ExtrapolatedSpectrum, FemError> {
    let poly = build_polygon(data)?;
    let base = triangulate(&poly, h)?.subdivisions;
    let levels = [1, 2, 4]
        .iter()
        .map(|f| {
            let mesh = triangulate_with(&poly, base * f)?;
            solve_steklov(&mesh, &assemble(&mesh), k)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut sigmas = Vec::with_capacity(k + 1);
    let mut extrapolated = Vec::with_capacity(k + 1);
    let mut orders = Vec::with_capacity(k + 1);
    for j in 0..=k {
        let (v, p) = if j == 0 {
            (levels[2].sigmas[0], None)
        } else {
            richardson(levels[0].sigmas[j], levels[1].sigmas[j], levels[2].sigmas[j])
        };
        sigmas.push(v);
        extrapolated.push(p.is_some());
        orders.push(p.unwrap_or(f64::NAN));
    }
    Ok(ExtrapolatedSpectrum { levels, sigmas, extrapolated, orders })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rectangle;

    #[test]
    fn square_assembly_identities() {
        let poly = build_polygon(&rectangle(1.0, 1.0)).unwrap();
        let mesh = triangulate(&poly, 0.25).unwrap();
        let asm = assemble(&mesh);
        let ones = vec![1.0; mesh.nodes.len()];
        assert!(asm.stiffness.quad_form(&ones).abs() < 1e-12);
        assert!((asm.boundary_mass.quad_form(&ones) - 4.0).abs() < 1e-10);
        let xs: Vec<f64> = mesh.nodes.iter().map(|p| p.x).collect();
        assert!((asm.stiffness.quad_form(&xs) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn constant_mode_first() {
        let sol = steklov_spectrum(&rectangle(1.0, 1.0), 0.25, 4).unwrap();
        assert!(sol.sigmas[0].abs() < 1e-8);
        assert!(sol.sigmas.windows(2).all(|w| w[0] <= w[1] + 1e-12));
        let t = &sol.boundary_traces[0];
        let spread = t.iter().cloned().fold(f64::MIN, f64::max) - t.iter().cloned().fold(f64::MAX, f64::min);
        assert!(spread < 1e-6 * t[0].abs().max(1e-300));
    }

    #[test]
    fn richardson_on_quadratic_sequence() {
        let f = |h: f64| 2.0 + 3.0 * h * h;
        let (v, p) = richardson(f(0.4), f(0.2), f(0.1));
        assert!((v - 2.0).abs() < 1e-12);
        assert!((p.unwrap() - 2.0).abs() < 1e-12);
    }
}
