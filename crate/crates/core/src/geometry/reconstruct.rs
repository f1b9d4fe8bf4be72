use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{BoundaryData, GeometryError, Result, GEOM_TOL};

/// Full lengths, angles with up to three blanks (`None`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartialBoundaryData {
    pub lengths: Vec<f64>,
    pub angles: Vec<Option<f64>>,
}

impl PartialBoundaryData {
    pub fn new(lengths: Vec<f64>, angles: Vec<Option<f64>>) -> Self {
        Self { lengths, angles }
    }

    /// Blanks the listed angle positions of complete data.
    pub fn blanking(data: &BoundaryData, blanks: &[usize]) -> Self {
        let angles = data
            .angles
            .iter()
            .enumerate()
            .map(|(i, a)| if blanks.contains(&i) { None } else { Some(*a) })
            .collect();
        Self::new(data.lengths.clone(), angles)
    }

    pub fn blank_count(&self) -> usize {
        self.angles.iter().filter(|a| a.is_none()).count()
    }
}

/// Angles of the triangle with sides `l`, in the boundary-data labeling
/// (angle i lies between sides i and i+1, opposite side i+2).
pub fn triangle_angles(l: [f64; 3]) -> Result<[f64; 3]> {
    let area = kahan_area(l).ok_or_else(|| {
        GeometryError::Unrealizable(format!(
            "triangle inequality fails for sides {:?}",
            l
        ))
    })?;
    let mut out = [0.0; 3];
    for (i, o) in out.iter_mut().enumerate() {
        let (a, b, c) = (l[i], l[(i + 1) % 3], l[(i + 2) % 3]);
        *o = (4.0 * area).atan2(a * a + b * b - c * c);
    }
    Ok(out)
}

/// Numerically stable Heron formula; `None` unless the triangle is strict.
fn kahan_area(l: [f64; 3]) -> Option<f64> {
    let mut s = l;
    s.sort_by(|x, y| y.total_cmp(x));
    let (a, b, c) = (s[0], s[1], s[2]);
    let scale = a + b + c;
    if !(c > 0.0) || a >= b + c - GEOM_TOL * scale {
        return None;
    }
    let p = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    Some(0.25 * p.max(0.0).sqrt())
}

/// Completes the angles by peeling a triangle off at a known vertex and
/// recursing on the remaining (n-1)-gon.
pub fn reconstruct_missing_angles(partial: &PartialBoundaryData) -> Result<BoundaryData> {
    let n = partial.lengths.len();
    if partial.angles.len() != n {
        return Err(GeometryError::LengthMismatch(n, partial.angles.len()));
    }
    if n < 3 {
        return Err(GeometryError::TooFewVertices(n));
    }
    for (i, l) in partial.lengths.iter().enumerate() {
        if !(l.is_finite() && *l > 0.0) {
            return Err(GeometryError::NonPositiveLength(i));
        }
    }
    let blanks = partial.blank_count();
    if blanks > 3 {
        return Err(GeometryError::Contract(format!(
            "{blanks} blank angles, at most 3 can be recovered"
        )));
    }
    // Fewer than three blanks: recover from three blanks, then check the rest.
    let mut work = partial.angles.clone();
    let mut extra = 3usize.saturating_sub(blanks).min(n);
    for slot in work.iter_mut().rev() {
        if extra == 0 {
            break;
        }
        if slot.is_some() {
            *slot = None;
            extra -= 1;
        }
    }
    let angles = peel(&partial.lengths, &work)?;
    let tol = 1e-7;
    for (i, (given, got)) in partial.angles.iter().zip(&angles).enumerate() {
        if let Some(g) = given {
            if (g - got).abs() > tol {
                return Err(GeometryError::Unrealizable(format!(
                    "angle {i} given as {g} but the lengths force {got}"
                )));
            }
        }
    }
    let out = BoundaryData::from_raw(partial.lengths.clone(), angles);
    out.validate_with(1e-8)
        .map_err(|e| GeometryError::Unrealizable(e.to_string()))?;
    Ok(out)
}

fn peel(lengths: &[f64], angles: &[Option<f64>]) -> Result<Vec<f64>> {
    let n = lengths.len();
    if n == 3 {
        let t = triangle_angles([lengths[0], lengths[1], lengths[2]])?;
        return Ok(t.to_vec());
    }
    let r = angles.iter().position(|a| a.is_some()).ok_or_else(|| {
        GeometryError::Contract(format!("no known angle among {n} vertices"))
    })?;
    // rotated[k] = original[(k + r + 1) % n], so the known angle lands at n-1
    let rot = |k: usize| (k + r + 1) % n;
    let l: Vec<f64> = (0..n).map(|k| lengths[rot(k)]).collect();
    let al: Vec<Option<f64>> = (0..n).map(|k| angles[rot(k)]).collect();
    let gamma = al[n - 1].expect("known by construction");

    let (a, b) = (l[n - 1], l[0]);
    let d = (a * a + b * b - 2.0 * a * b * gamma.cos()).max(0.0).sqrt();
    let t_first = (a * gamma.sin()).atan2(b - a * gamma.cos());
    let t_last = (b * gamma.sin()).atan2(a - b * gamma.cos());

    let mut sub_l = Vec::with_capacity(n - 1);
    sub_l.push(d);
    sub_l.extend_from_slice(&l[1..n - 1]);
    let mut sub_a: Vec<Option<f64>> = Vec::with_capacity(n - 1);
    sub_a.push(al[0].map(|x| x - t_first));
    sub_a.extend_from_slice(&al[1..n - 2]);
    sub_a.push(al[n - 2].map(|x| x - t_last));
    for x in sub_a.iter().flatten() {
        if !(*x > 0.0 && *x < PI) {
            return Err(GeometryError::Unrealizable(
                "peeled triangle does not fit inside the polygon".into(),
            ));
        }
    }
    if !(d > 0.0) {
        return Err(GeometryError::Unrealizable("peeled diagonal has zero length".into()));
    }
    let sub = peel(&sub_l, &sub_a)?;

    let mut rotated = vec![0.0; n];
    rotated[0] = sub[0] + t_first;
    rotated[1..n - 2].copy_from_slice(&sub[1..n - 2]);
    rotated[n - 2] = sub[n - 2] + t_last;
    rotated[n - 1] = gamma;
    let mut out = vec![0.0; n];
    for (k, v) in rotated.into_iter().enumerate() {
        out[rot(k)] = v;
    }
    Ok(out)
}
