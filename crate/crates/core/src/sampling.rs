//! Random convex polygons for experiments and tests.

use std::f64::consts::PI;

use rand::Rng;

use crate::geometry::{cross, BoundaryData, GEOM_TOL};

/// Points at sorted random parameters on a random ellipse, so the vertices
/// are in convex position. Rejects polygons with an angle below `min_angle`
/// or an edge shorter than `min_edge` times the perimeter. Perimeter one.
pub fn random_convex_polygon<R: Rng>(rng: &mut R, n: usize, min_angle: f64, min_edge: f64) -> BoundaryData {
    loop {
        let aspect = rng.gen_range(0.15..1.0);
        let mut t: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
        t.sort_by(f64::total_cmp);
        let pts: Vec<(f64, f64)> = t.iter().map(|s| (s.cos(), aspect * s.sin())).collect();
        let lengths: Vec<f64> = (0..n)
            .map(|i| {
                let (p, q) = (pts[i], pts[(i + 1) % n]);
                (q.0 - p.0).hypot(q.1 - p.1)
            })
            .collect();
        let angles: Vec<f64> = (0..n)
            .map(|i| {
                let (p, q, r) = (pts[i], pts[(i + 1) % n], pts[(i + 2) % n]);
                let u = (p.0 - q.0, p.1 - q.1);
                let v = (r.0 - q.0, r.1 - q.1);
                cross(v, u).abs().atan2(u.0 * v.0 + u.1 * v.1)
            })
            .collect();
        let d = BoundaryData::from_raw(lengths, angles).normalized();
        let ok_edges = d.lengths.iter().all(|l| *l >= min_edge);
        if ok_edges && d.min_angle() >= min_angle && d.validate_with(1e3 * GEOM_TOL).is_ok() {
            return d;
        }
    }
}

/// Random angles summing to `(n - 2) pi` with the `fixed` ones prescribed and
/// the free ones in `(min_angle, pi - min_angle)`.
pub fn random_angles<R: Rng>(
    rng: &mut R,
    n: usize,
    fixed: &[(usize, f64)],
    min_angle: f64,
) -> Option<Vec<f64>> {
    let free: Vec<usize> = (0..n).filter(|i| !fixed.iter().any(|f| f.0 == *i)).collect();
    let fixed_turn: f64 = fixed.iter().map(|f| PI - f.1).sum();
    let budget = 2.0 * PI - fixed_turn;
    if free.is_empty() || budget <= free.len() as f64 * min_angle {
        return None;
    }
    for _ in 0..1000 {
        let w: Vec<f64> = free.iter().map(|_| -rng.gen_range(1e-12f64..1.0).ln()).collect();
        let total: f64 = w.iter().sum();
        let turns: Vec<f64> = w.iter().map(|x| x / total * budget).collect();
        if turns.iter().all(|t| *t > min_angle && *t < PI - min_angle) {
            let mut a = vec![0.0; n];
            for &(i, v) in fixed {
                a[i] = v;
            }
            for (k, &i) in free.iter().enumerate() {
                a[i] = PI - turns[k];
            }
            return Some(a);
        }
    }
    None
}

/// A closed polygon with the given angles: all but two lengths random, the
/// last two solved from closure. Perimeter one.
pub fn random_polygon_with_angles<R: Rng>(rng: &mut R, angles: &[f64], min_edge: f64) -> Option<BoundaryData> {
    let n = angles.len();
    let u = BoundaryData::from_raw(vec![1.0; n], angles.to_vec()).directions();
    for _ in 0..2000 {
        let mut l: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
        // pick the closing pair with the best conditioning
        let (mut bi, mut bj, mut best) = (0, 1, 0.0);
        for i in 0..n {
            for j in i + 1..n {
                let c = cross(u[i], u[j]).abs();
                if c > best {
                    (bi, bj, best) = (i, j, c);
                }
            }
        }
        let (mut rx, mut ry) = (0.0, 0.0);
        for k in 0..n {
            if k != bi && k != bj {
                rx -= l[k] * u[k].0;
                ry -= l[k] * u[k].1;
            }
        }
        let det = cross(u[bi], u[bj]);
        l[bi] = cross((rx, ry), u[bj]) / det;
        l[bj] = cross(u[bi], (rx, ry)) / det;
        let d = BoundaryData::from_raw(l, angles.to_vec());
        let p = d.perimeter();
        if d.lengths.iter().all(|x| *x > min_edge * p) {
            let d = d.normalized();
            if d.validate_with(1e3 * GEOM_TOL).is_ok() {
                return Some(d);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 3..8 {
            let d = random_convex_polygon(&mut rng, n, 0.1, 0.01);
            assert!(d.validate().is_ok());
            assert!((d.perimeter() - 1.0).abs() < 1e-12);
        }
        let a = random_angles(&mut rng, 5, &[(1, PI / 2.0)], 0.1).unwrap();
        let d = random_polygon_with_angles(&mut rng, &a, 0.02).unwrap();
        assert!(d.validate().is_ok());
        assert!((d.angles[1] - PI / 2.0).abs() < 1e-15);
    }
}
