use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{cross, dot, BoundaryData, GeometryError, Result, GEOM_TOL};

/// All angles, the sums `h = l[0] + l[1]` and `k = l[p] + l[p+1]`, and the
/// remaining individual lengths. Entries 0, 1, p, p+1 of `lengths` are ignored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeSplitInput {
    pub angles: Vec<f64>,
    pub lengths: Vec<f64>,
    pub h: f64,
    pub k: f64,
    /// Preferred `(l[0], l[p])` for the base member of a family.
    pub hint: Option<(f64, f64)>,
}

impl EdgeSplitInput {
    /// Erases the two length pairs meeting at vertices 0 and `p`.
    pub fn from_data(data: &BoundaryData, p: usize) -> Self {
        let l = &data.lengths;
        Self {
            angles: data.angles.clone(),
            lengths: l.clone(),
            h: l[0] + l[1],
            k: l[p] + l[p + 1],
            hint: Some((l[0], l[p])),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum EdgeSplitOutcome {
    Unique(BoundaryData),
    Family(DeformationFamily),
}

/// Lengths `l0+x, l1-x, lp+y, lp1-y` with `y = ratio * x`, for `x` in
/// `(x_min, x_max)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeformationFamily {
    pub base: BoundaryData,
    pub p: usize,
    pub ratio: f64,
    pub x_min: f64,
    pub x_max: f64,
    pub psi: f64,
    pub phi: f64,
}

impl DeformationFamily {
    pub fn member(&self, x: f64) -> BoundaryData {
        let mut d = self.base.clone();
        let y = self.ratio * x;
        let p = self.p;
        d.lengths[0] += x;
        d.lengths[1] -= x;
        d.lengths[p] += y;
        d.lengths[p + 1] -= y;
        d
    }

    /// `count` evenly spaced interior parameters.
    pub fn sweep(&self, count: usize) -> Vec<f64> {
        (0..count)
            .map(|i| self.x_min + (self.x_max - self.x_min) * (i as f64 + 1.0) / (count as f64 + 1.0))
            .collect()
    }
}

/// Turning sums strictly between the split vertices on each side.
pub fn psi_phi(angles: &[f64], p: usize) -> (f64, f64) {
    let n = angles.len();
    let psi = (1..p).map(|j| PI - angles[j]).sum();
    let phi = (p + 1..n).map(|j| PI - angles[j]).sum();
    (psi, phi)
}

/// Recovers the four erased lengths from the closure equations.
pub fn edge_split_solve(input: &EdgeSplitInput, p: usize) -> Result<EdgeSplitOutcome> {
    let n = input.angles.len();
    if input.lengths.len() != n {
        return Err(GeometryError::LengthMismatch(n, input.angles.len()));
    }
    if n < 4 || p < 2 || p + 2 > n {
        return Err(GeometryError::Contract(format!(
            "split vertex {p} must lie in 2..={} for n = {n}",
            n.saturating_sub(2)
        )));
    }
    let dirs = BoundaryData::from_raw(input.lengths.clone(), input.angles.clone()).directions();
    let (mut cx, mut cy) = (0.0, 0.0);
    for j in 0..n {
        if j != 0 && j != 1 && j != p && j != p + 1 {
            cx += input.lengths[j] * dirs[j].0;
            cy += input.lengths[j] * dirs[j].1;
        }
    }
    let (u0, u1, up, uq) = (dirs[0], dirs[1], dirs[p], dirs[p + 1]);
    let w0 = (u0.0 - u1.0, u0.1 - u1.1);
    let wp = (up.0 - uq.0, up.1 - uq.1);
    let rhs = (
        -cx - input.h * u1.0 - input.k * uq.0,
        -cy - input.h * u1.1 - input.k * uq.1,
    );
    let (psi, phi) = psi_phi(&input.angles, p);
    let n0 = w0.0.hypot(w0.1);
    let np = wp.0.hypot(wp.1);
    let det = cross(w0, wp);
    let parallel = det.abs() < GEOM_TOL * n0 * np;
    // |sin of the angle between the bisectors| = |sin((psi - phi)/2)|
    debug_assert!(
        ((det / (n0 * np)).abs() - ((psi - phi) / 2.0).sin().abs()).abs() < 1e-9,
        "bisector test and turning-sum test disagree"
    );
    let scale = input.h + input.k + input.lengths.iter().sum::<f64>();
    let build = |a: f64, b: f64| {
        let mut l = input.lengths.clone();
        l[0] = a;
        l[1] = input.h - a;
        l[p] = b;
        l[p + 1] = input.k - b;
        BoundaryData::from_raw(l, input.angles.clone())
    };

    if !parallel {
        let a = cross(rhs, wp) / det;
        let b = cross(w0, rhs) / det;
        let d = build(a, b);
        if d.lengths.iter().any(|l| !(*l > 0.0)) {
            return Err(GeometryError::NoConvexSolution(format!(
                "solved lengths {:?} are not all positive",
                d.lengths
            )));
        }
        d.validate_with(1e-8)
            .map_err(|e| GeometryError::NoConvexSolution(e.to_string()))?;
        return Ok(EdgeSplitOutcome::Unique(d));
    }

    // wp = lambda w0; the system is a(w0) + b(lambda w0) = rhs
    let lambda = dot(wp, w0) / (n0 * n0);
    if cross(rhs, w0).abs() > GEOM_TOL * scale * n0 {
        return Err(GeometryError::NoConvexSolution(
            "parallel bisectors but inconsistent closure".into(),
        ));
    }
    let s = dot(rhs, w0) / (n0 * n0); // a + lambda b = s
    let ratio = -1.0 / lambda;
    // a = a0 + x, b = b0 + ratio x, starting from a0 = s, b0 = 0
    let mut xlo = f64::NEG_INFINITY;
    let mut xhi = f64::INFINITY;
    let mut clip = |c0: f64, c1: f64| {
        // require c0 + c1 x > 0
        if c1 > 0.0 {
            xlo = xlo.max(-c0 / c1);
        } else if c1 < 0.0 {
            xhi = xhi.min(-c0 / c1);
        } else if c0 <= 0.0 {
            xlo = f64::INFINITY;
        }
    };
    clip(s, 1.0);
    clip(input.h - s, -1.0);
    clip(0.0, ratio);
    clip(input.k, -ratio);
    if !(xhi > xlo) {
        return Err(GeometryError::NoConvexSolution(
            "no positive member of the deformation family".into(),
        ));
    }
    let x_base = match input.hint {
        Some((a, b)) if (a + lambda * b - s).abs() <= 1e-8 * scale => {
            let x = a - s;
            if x > xlo && x < xhi {
                x
            } else {
                0.5 * (xlo + xhi)
            }
        }
        _ => 0.5 * (xlo + xhi),
    };
    let base = build(s + x_base, ratio * x_base);
    Ok(EdgeSplitOutcome::Family(DeformationFamily {
        base,
        p,
        ratio,
        x_min: xlo - x_base,
        x_max: xhi - x_base,
        psi,
        phi,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisector_cross_matches_turning_sums() {
        let angles = [1.1, 1.9, 1.5, 2.0 * PI - 4.5];
        let d = BoundaryData::from_raw(vec![1.0; 4], angles.to_vec());
        let u = d.directions();
        let w0 = (u[0].0 - u[1].0, u[0].1 - u[1].1);
        let wp = (u[2].0 - u[3].0, u[2].1 - u[3].1);
        let c = cross(w0, wp) / (w0.0.hypot(w0.1) * wp.0.hypot(wp.1));
        let (psi, phi) = psi_phi(&angles, 2);
        assert!((c.abs() - ((psi - phi) / 2.0).sin().abs()).abs() < 1e-12);
    }
}
