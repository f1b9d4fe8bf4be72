use std::f64::consts::PI;

use super::{cross, BoundaryData, GeometryError, Result, GEOM_TOL};

/// The unique convex quadrilateral with the given labeled angles, one labeled
/// side length and total perimeter.
///
/// The side after the known one is the slide parameter `t`; the two remaining
/// sides are affine in `t`, so the perimeter is too, and we bisect on it.
pub fn quad_from_asa_perimeter(
    angles: [f64; 4],
    known_side_index: usize,
    known_side: f64,
    perimeter: f64,
) -> Result<BoundaryData> {
    if known_side_index >= 4 {
        return Err(GeometryError::Contract(format!(
            "side index {known_side_index} out of range"
        )));
    }
    for (i, a) in angles.iter().enumerate() {
        if !(a.is_finite() && *a > 0.0 && *a < PI) {
            return Err(GeometryError::NonConvexData(i));
        }
    }
    let s: f64 = angles.iter().sum();
    if (s - 2.0 * PI).abs() > 4.0 * GEOM_TOL {
        return Err(GeometryError::AngleSum(s - 2.0 * PI));
    }
    if !(known_side > 0.0) {
        return Err(GeometryError::NonPositiveLength(known_side_index));
    }
    let sh = known_side_index;
    let a: [f64; 4] = std::array::from_fn(|k| angles[(k + sh) % 4]);
    let mut th = [0.0; 4];
    for k in 1..4 {
        th[k] = th[k - 1] + PI - a[k - 1];
    }
    let u: [(f64, f64); 4] = std::array::from_fn(|k| (th[k].cos(), th[k].sin()));

    // l2 u2 + l3 u3 = -(P1 + t u1), P1 = (known_side, 0)
    let det = cross(u[2], u[3]);
    if det.abs() < 1e-12 {
        return Err(GeometryError::Unrealizable("parallel closing sides".into()));
    }
    let solve = |rhs: (f64, f64)| (cross(rhs, u[3]) / det, cross(u[2], rhs) / det);
    let (a2, a3) = solve((-known_side, 0.0));
    let (b2, b3) = solve((-u[1].0, -u[1].1));
    let lens = move |t: f64| [known_side, t, a2 + b2 * t, a3 + b3 * t];
    let perim = |t: f64| lens(t).iter().sum::<f64>();

    // feasible open interval of t keeping every side positive
    let mut lo = 0.0f64;
    let mut hi = f64::INFINITY;
    for (c0, c1) in [(a2, b2), (a3, b3)] {
        if c1.abs() < 1e-15 {
            if c0 <= 0.0 {
                return Err(GeometryError::Unrealizable("angles admit no quadrilateral".into()));
            }
        } else if c1 > 0.0 {
            lo = lo.max(-c0 / c1);
        } else {
            hi = hi.min(-c0 / c1);
        }
    }
    if !(hi > lo) {
        return Err(GeometryError::Unrealizable("angles admit no quadrilateral".into()));
    }
    let slope = 1.0 + b2 + b3;
    if slope.abs() < 1e-14 {
        return Err(GeometryError::Unrealizable("perimeter is constant along the slide".into()));
    }
    let f = |t: f64| perim(t) - perimeter;
    let hi_eff = if hi.is_finite() {
        hi
    } else {
        let mut h = lo.max(1.0) * 2.0;
        while f(h) * slope <= 0.0 && h < 1e300 {
            h *= 2.0;
        }
        h
    };
    let (plo, phi) = (perim(lo), if hi.is_finite() { perim(hi) } else { f64::INFINITY });
    let (pmin, pmax) = if slope > 0.0 { (plo, phi) } else { (phi, plo) };
    if !(perimeter > pmin && perimeter < pmax) {
        return Err(GeometryError::PerimeterUnreachable {
            requested: perimeter,
            lo: pmin,
            hi: pmax,
        });
    }
    let (mut x0, mut x1) = (lo, hi_eff);
    for _ in 0..200 {
        let m = 0.5 * (x0 + x1);
        if m <= x0 || m >= x1 {
            break;
        }
        if (f(m) > 0.0) == (slope > 0.0) {
            x1 = m;
        } else {
            x0 = m;
        }
    }
    let t = 0.5 * (x0 + x1);
    let l = lens(t);
    let mut lengths = [0.0; 4];
    for (k, v) in l.iter().enumerate() {
        lengths[(k + sh) % 4] = *v;
    }
    let out = BoundaryData::from_raw(lengths.to_vec(), angles.to_vec());
    out.validate_with(1e-8)
        .map_err(|e| GeometryError::Unrealizable(e.to_string()))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rectangle_from_perimeter() {
        let d = quad_from_asa_perimeter([PI / 2.0; 4], 0, 1.0, 6.0).unwrap();
        let want = [1.0, 2.0, 1.0, 2.0];
        for (x, y) in d.lengths.iter().zip(want) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn too_short_perimeter() {
        let e = quad_from_asa_perimeter([PI / 2.0; 4], 2, 1.0, 2.0).unwrap_err();
        assert!(matches!(e, GeometryError::PerimeterUnreachable { .. }));
    }
}
