//! Inverse-spectral machinery: angle classes, admissibility, invariant
//! vectors, reduced polygons and candidate enumeration.

mod enumerate;

use std::collections::BTreeSet;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::charpoly::{c_of_angle, charpoly_from_parts, smooth_charpoly, TrigPoly};
use crate::exact::{ExactBoundaryData, Q};
use crate::geometry::BoundaryData;

pub use enumerate::{
    admissible_cap, enumerate_admissible_candidates, enumerate_weak_candidates,
    exact_candidate_angles, CandidateSet, EnumerationOptions, SetVerdict,
};

/// Classification tolerance for odd/even angles, in radians.
pub const ANGLE_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InverseError {
    #[error("target is not admissible: {0}")]
    NotAdmissible(String),
    #[error("target is not weakly edge-admissible: {0}")]
    NotWeaklyEdgeAdmissible(String),
    #[error("{0}")]
    Contract(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AngleKind {
    /// `pi / (2j + 1)`
    Odd(u32),
    /// `pi / (2m)`
    Even(u32),
    Generic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AngleClass {
    pub kind: AngleKind,
    /// `(-1)^j` or `(-1)^m`; 0 for generic angles.
    pub parity: i8,
}

impl AngleClass {
    fn from_denominator(k: u64) -> Self {
        let sign = |e: u64| if e % 2 == 0 { 1 } else { -1 };
        if k % 2 == 1 {
            let j = (k - 1) / 2;
            AngleClass { kind: AngleKind::Odd(j as u32), parity: sign(j) }
        } else {
            let m = k / 2;
            AngleClass { kind: AngleKind::Even(m as u32), parity: sign(m) }
        }
    }

    pub fn generic() -> Self {
        AngleClass { kind: AngleKind::Generic, parity: 0 }
    }

    pub fn is_odd(&self) -> bool {
        matches!(self.kind, AngleKind::Odd(_))
    }

    pub fn is_even(&self) -> bool {
        matches!(self.kind, AngleKind::Even(_))
    }
}

pub fn classify_angle(alpha: f64, tol: f64) -> AngleClass {
    if !(alpha > 0.0 && alpha < PI) {
        return AngleClass::generic();
    }
    let k = (PI / alpha).round();
    if k >= 2.0 && k < 1e15 && (alpha - PI / k).abs() <= tol {
        AngleClass::from_denominator(k as u64)
    } else {
        AngleClass::generic()
    }
}

/// Exact classification of the angle `q pi`.
pub fn classify_angle_exact(q: &Q) -> AngleClass {
    if q.is_positive() && q.numer().is_one() {
        if let Some(k) = q.denom().to_u64() {
            if k >= 2 {
                return AngleClass::from_denominator(k);
            }
        }
    }
    AngleClass::generic()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Yes,
    No,
    Indeterminate,
}

impl Verdict {
    fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (No, _) | (_, No) => No,
            (Indeterminate, _) | (_, Indeterminate) => Indeterminate,
            _ => Yes,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub admissible: Verdict,
    pub weakly_edge_admissible: Verdict,
    pub classes: Vec<AngleClass>,
    /// Smallest `|sum eps_j l_j|` over nonzero `eps in {-1,0,1}^n`.
    pub min_combination: f64,
    pub reduced_min_combination: f64,
    pub reasons: Vec<String>,
}

/// Smallest `|sum eps_j x_j|` over nonzero sign vectors, by meet in the middle.
pub fn min_signed_combination(x: &[f64]) -> f64 {
    if x.is_empty() {
        return f64::INFINITY;
    }
    let (a, b) = x.split_at(x.len() / 2);
    let left = signed_sums(a);
    let mut right = signed_sums(b);
    right.sort_by(|p, q| p.0.total_cmp(&q.0));
    let mut best = f64::INFINITY;
    for &(v, nz) in &right {
        if nz {
            best = best.min(v.abs());
        }
    }
    for &(v, nz) in &left {
        if !nz {
            continue;
        }
        let i = right.partition_point(|r| r.0 < -v);
        for j in [i.wrapping_sub(1), i] {
            if let Some(r) = right.get(j) {
                best = best.min((v + r.0).abs());
            }
        }
    }
    best
}

/// All `(sum, nonzero)` over `{-1,0,1}^n`.
fn signed_sums(x: &[f64]) -> Vec<(f64, bool)> {
    let mut out = vec![(0.0, false)];
    for &v in x {
        let mut next = Vec::with_capacity(out.len() * 3);
        for &(s, nz) in &out {
            next.push((s, nz));
            next.push((s + v, true));
            next.push((s - v, true));
        }
        out = next;
    }
    out
}

fn exact_commensurable(x: &[Q]) -> bool {
    let sums = |part: &[Q]| {
        let mut out: Vec<(Q, bool)> = vec![(Q::zero(), false)];
        for v in part {
            let mut next = Vec::with_capacity(out.len() * 3);
            for (s, nz) in &out {
                next.push((s.clone(), *nz));
                next.push((s + v, true));
                next.push((s - v, true));
            }
            out = next;
        }
        out
    };
    let (a, b) = x.split_at(x.len() / 2);
    let right = sums(b);
    let any: BTreeSet<Q> = right.iter().map(|r| r.0.clone()).collect();
    let nonzero: BTreeSet<Q> = right.iter().filter(|r| r.1).map(|r| r.0.clone()).collect();
    sums(a).into_iter().any(|(v, nz)| {
        let want = -v;
        if nz {
            any.contains(&want)
        } else {
            nonzero.contains(&want)
        }
    })
}

fn gap_verdict(gap: f64, scale: f64, tol: f64, n: usize) -> Verdict {
    let rounding = 8.0 * f64::EPSILON * scale * n as f64;
    if gap <= rounding {
        Verdict::No
    } else if gap <= tol * scale {
        Verdict::Indeterminate
    } else {
        Verdict::Yes
    }
}

/// Float-mode admissibility. A combination within `tol * L` of zero that is
/// not zero to rounding is reported as indeterminate.
pub fn admissibility(data: &BoundaryData, angle_tol: f64, tol: f64) -> AdmissibilityReport {
    let classes: Vec<AngleClass> = data.angles.iter().map(|a| classify_angle(*a, angle_tol)).collect();
    let l = data.perimeter();
    let n = data.n();
    let mut reasons = Vec::new();
    let gap = min_signed_combination(&data.lengths);
    let mut edges = gap_verdict(gap, l, tol, n);
    match edges {
        Verdict::No => reasons.push("edge lengths are commensurable over {-1,0,1}".into()),
        Verdict::Indeterminate => reasons.push(format!(
            "a {{-1,0,1}} combination of edge lengths is {gap:e}, below tol * L"
        )),
        Verdict::Yes => {}
    }
    let odd: Vec<usize> = (0..n).filter(|&i| classes[i].is_odd()).collect();
    if !odd.is_empty() {
        reasons.push(format!("odd angles at vertices {odd:?}"));
        edges = edges.and(Verdict::No);
    }
    let red = reduce_polygon_with(data, &classes);
    let red_lengths: Vec<f64> = red.edges.iter().map(|e| e.length).collect();
    let red_gap = min_signed_combination(&red_lengths);
    let weak = gap_verdict(red_gap, l, tol, red_lengths.len());
    match weak {
        Verdict::No => reasons.push("reduced edge lengths are commensurable".into()),
        Verdict::Indeterminate => reasons.push(format!(
            "a reduced edge-length combination is {red_gap:e}, below tol * L"
        )),
        Verdict::Yes => {}
    }
    AdmissibilityReport {
        admissible: edges,
        weakly_edge_admissible: weak,
        classes,
        min_combination: gap,
        reduced_min_combination: red_gap,
        reasons,
    }
}

/// Exact admissibility on rational data; never indeterminate.
pub fn admissibility_exact(data: &ExactBoundaryData) -> AdmissibilityReport {
    let classes: Vec<AngleClass> = data.angles_pi.iter().map(classify_angle_exact).collect();
    let n = data.n();
    let mut reasons = Vec::new();
    let mut adm = if exact_commensurable(&data.lengths) {
        reasons.push("edge lengths are commensurable over {-1,0,1}".into());
        Verdict::No
    } else {
        Verdict::Yes
    };
    let odd: Vec<usize> = (0..n).filter(|&i| classes[i].is_odd()).collect();
    if !odd.is_empty() {
        reasons.push(format!("odd angles at vertices {odd:?}"));
        adm = Verdict::No;
    }
    let groups = reduced_groups(&classes);
    let red: Vec<Q> = match &groups {
        None => vec![data.perimeter()],
        Some(g) => g
            .iter()
            .map(|(edges, _)| edges.iter().fold(Q::zero(), |acc, &e| acc + &data.lengths[e]))
            .collect(),
    };
    let weak = if exact_commensurable(&red) {
        reasons.push("reduced edge lengths are commensurable".into());
        Verdict::No
    } else {
        Verdict::Yes
    };
    let f = data.to_float();
    AdmissibilityReport {
        admissible: adm,
        weakly_edge_admissible: weak,
        classes,
        min_combination: min_signed_combination(&f.lengths),
        reduced_min_combination: min_signed_combination(
            &red.iter().map(crate::exact::q_to_f64).collect::<Vec<_>>(),
        ),
        reasons,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantVector {
    pub c: Vec<f64>,
    pub c_abs: Vec<f64>,
}

pub fn invariant_vectors(data: &BoundaryData) -> InvariantVector {
    let c: Vec<f64> = data
        .angles
        .iter()
        .map(|a| c_of_angle(*a).unwrap_or(f64::NAN))
        .collect();
    let c_abs = c.iter().map(|v| v.abs()).collect();
    InvariantVector { c, c_abs }
}

/// Boundary arc between consecutive even vertices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExceptionalComponent {
    /// Even vertex the arc leaves from, and the one it ends at.
    pub start_vertex: usize,
    pub end_vertex: usize,
    pub edges: Vec<usize>,
    pub lengths: Vec<f64>,
    /// c-values at the interior vertices, in boundary order.
    pub c: Vec<f64>,
    pub reversed: bool,
}

impl ExceptionalComponent {
    /// The same arc traversed the other way.
    pub fn inverse(&self) -> Self {
        let mut r = self.clone();
        r.lengths.reverse();
        r.c.reverse();
        r.edges.reverse();
        std::mem::swap(&mut r.start_vertex, &mut r.end_vertex);
        r.reversed = !self.reversed;
        r
    }
}

/// Components in boundary order. With one even vertex the single component
/// runs all the way round.
pub fn exceptional_components(
    data: &BoundaryData,
    angle_tol: f64,
) -> Result<Vec<ExceptionalComponent>, String> {
    let n = data.n();
    let evens: Vec<usize> = (0..n)
        .filter(|&i| classify_angle(data.angles[i], angle_tol).is_even())
        .collect();
    if evens.is_empty() {
        return Err("no even angles: the boundary has no exceptional components".into());
    }
    let iv = invariant_vectors(data);
    let mut out = Vec::with_capacity(evens.len());
    for (i, &a) in evens.iter().enumerate() {
        let b = evens[(i + 1) % evens.len()];
        let span = if b > a { b - a } else { b + n - a };
        let edges: Vec<usize> = (1..=span).map(|s| (a + s) % n).collect();
        let interior: Vec<usize> = (1..span).map(|s| (a + s) % n).collect();
        out.push(ExceptionalComponent {
            start_vertex: a,
            end_vertex: b,
            lengths: edges.iter().map(|&e| data.lengths[e]).collect(),
            c: interior.iter().map(|&v| iv.c[v]).collect(),
            edges,
            reversed: false,
        });
    }
    Ok(out)
}

/// Every way of reorienting the components of `(lengths, values)` split at the
/// `even` positions, with the first component's orientation fixed. Even
/// positions stay put; each flip reverses its edges and interior values.
pub fn component_reorientations<T: Clone>(
    lengths: &[f64],
    values: &[T],
    even: &[bool],
) -> Vec<(Vec<f64>, Vec<T>)> {
    let n = lengths.len();
    let evens: Vec<usize> = (0..n).filter(|&i| even[i]).collect();
    if evens.len() < 2 {
        return vec![(lengths.to_vec(), values.to_vec())];
    }
    let k = evens.len();
    let mut out = Vec::new();
    let mut seen: Vec<Vec<u64>> = Vec::new();
    for mask in 0..(1u32 << (k - 1)) {
        let mut l = lengths.to_vec();
        let mut v = values.to_vec();
        for c in 1..k {
            if (mask >> (c - 1)) & 1 == 0 {
                continue;
            }
            let a = evens[c];
            let b = evens[(c + 1) % k];
            let span = if b > a { b - a } else { b + n - a };
            let edges: Vec<usize> = (1..=span).map(|s| (a + s) % n).collect();
            let interior: Vec<usize> = (1..span).map(|s| (a + s) % n).collect();
            for (i, &e) in edges.iter().enumerate() {
                l[e] = lengths[edges[span - 1 - i]];
            }
            for (i, &w) in interior.iter().enumerate() {
                v[w] = values[interior[interior.len() - 1 - i]].clone();
            }
        }
        let key: Vec<u64> = l.iter().map(|x| x.to_bits()).collect();
        if !seen.contains(&key) {
            seen.push(key);
            out.push((l, v));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReducedEdge {
    pub length: f64,
    pub curved: bool,
    /// Original edges merged into this one.
    pub edges: Vec<usize>,
}

/// The curvilinear polygon left after removing odd vertices. Reduced angle `j`
/// sits between reduced edges `j` and `j + 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReducedPolygon {
    pub edges: Vec<ReducedEdge>,
    pub angles: Vec<f64>,
    /// Original index of each surviving vertex.
    pub vertices: Vec<usize>,
    pub removed: Vec<usize>,
    /// Product of the parities of the removed odd angles.
    pub removed_parity: i8,
    pub smooth_domain: bool,
}

impl ReducedPolygon {
    pub fn perimeter(&self) -> f64 {
        self.edges.iter().map(|e| e.length).sum()
    }

    pub fn lengths(&self) -> Vec<f64> {
        self.edges.iter().map(|e| e.length).collect()
    }

    pub fn charpoly(&self) -> TrigPoly {
        if self.smooth_domain {
            smooth_charpoly(self.perimeter()).expect("reduced perimeter is positive")
        } else {
            charpoly_from_parts(&self.lengths(), &self.angles)
        }
    }
}

/// `(edges, surviving vertex)` per reduced edge; `None` when no vertex survives.
fn reduced_groups(classes: &[AngleClass]) -> Option<Vec<(Vec<usize>, usize)>> {
    let n = classes.len();
    let keep: Vec<usize> = (0..n).filter(|&i| !classes[i].is_odd()).collect();
    if keep.is_empty() {
        return None;
    }
    let m = keep.len();
    Some(
        (0..m)
            .map(|j| {
                let prev = keep[(j + m - 1) % m];
                let cur = keep[j];
                let span = if cur > prev { cur - prev } else { cur + n - prev };
                ((1..=span).map(|s| (prev + s) % n).collect(), cur)
            })
            .collect(),
    )
}

fn reduce_polygon_with(data: &BoundaryData, classes: &[AngleClass]) -> ReducedPolygon {
    let removed: Vec<usize> = (0..data.n()).filter(|&i| classes[i].is_odd()).collect();
    let removed_parity = removed.iter().map(|&i| classes[i].parity).product();
    match reduced_groups(classes) {
        None => ReducedPolygon {
            edges: vec![ReducedEdge {
                length: data.perimeter(),
                curved: true,
                edges: (0..data.n()).collect(),
            }],
            angles: Vec::new(),
            vertices: Vec::new(),
            removed,
            removed_parity,
            smooth_domain: true,
        },
        Some(groups) => ReducedPolygon {
            edges: groups
                .iter()
                .map(|(edges, _)| ReducedEdge {
                    length: edges.iter().map(|&e| data.lengths[e]).sum(),
                    curved: edges.len() > 1,
                    edges: edges.clone(),
                })
                .collect(),
            angles: groups.iter().map(|(_, v)| data.angles[*v]).collect(),
            vertices: groups.iter().map(|(_, v)| *v).collect(),
            removed,
            removed_parity,
            smooth_domain: false,
        },
    }
}

pub fn reduce_polygon(data: &BoundaryData, angle_tol: f64) -> ReducedPolygon {
    let classes: Vec<AngleClass> = data.angles.iter().map(|a| classify_angle(*a, angle_tol)).collect();
    reduce_polygon_with(data, &classes)
}

/// All `alpha in (alpha_min, pi)` with `|c(alpha)| = s`, ascending.
pub fn inverse_c_preimages(s: f64, alpha_min: f64) -> Result<Vec<f64>, String> {
    if !(0.0..=1.0).contains(&s) {
        return Err(format!("|c| value {s} outside [0, 1]"));
    }
    if !(alpha_min > 0.0) {
        return Err(format!("alpha_min must be positive, got {alpha_min}"));
    }
    // x = pi^2 / (2 alpha) ranges over (pi/2, x_max)
    let x_max = PI * PI / (2.0 * alpha_min);
    let lo = PI / 2.0;
    let bases = [s.acos(), (-s).acos()];
    let mut xs: Vec<f64> = Vec::new();
    let kmax = (x_max / (2.0 * PI)).ceil() as i64 + 1;
    for k in 0..=kmax {
        let shift = 2.0 * PI * k as f64;
        for b in bases {
            for x in [shift + b, shift - b] {
                if x > lo + 1e-15 && x < x_max {
                    xs.push(x);
                }
            }
        }
    }
    xs.sort_by(f64::total_cmp);
    xs.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    let mut out: Vec<f64> = xs.into_iter().map(|x| PI * PI / (2.0 * x)).collect();
    out.reverse();
    Ok(out)
}

/// The unique obtuse angle with `|c| = s`, for `0 < s < 1`.
pub fn obtuse_preimage(s: f64) -> f64 {
    PI * PI / (2.0 * (-s).acos())
}

/// Branches `q / (2kq + 1)` and `q / (2kq - 1)` lying in `(0, 1)`.
pub fn rational_angle_transfer(q: &Q, k: i64) -> Vec<Q> {
    if k == 0 {
        return vec![q.clone()];
    }
    let two_kq = Q::from_integer(BigInt::from(2 * k)) * q;
    let mut out: Vec<Q> = Vec::new();
    for sign in [1i64, -1] {
        let den = &two_kq + Q::from_integer(BigInt::from(sign));
        if den.is_zero() {
            continue;
        }
        let v = q / den;
        if v.is_positive() && v < Q::one() && !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// Odd-angle sum of the quadrilateral obtained after moving odd vertices, as a
/// function of the original odd-angle sum `pi x`.
pub fn s_function(x: f64) -> f64 {
    PI * (2.0 - x * x) / (3.0 - 2.0 * x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::regular_polygon;

    #[test]
    fn classes() {
        let c = classify_angle(PI / 3.0, ANGLE_TOL);
        assert_eq!(c.kind, AngleKind::Odd(1));
        assert_eq!(c.parity, -1);
        let c = classify_angle(PI / 4.0, ANGLE_TOL);
        assert_eq!(c.kind, AngleKind::Even(2));
        assert_eq!(c.parity, 1);
        assert_eq!(classify_angle(2.0 * PI / 5.0, ANGLE_TOL).kind, AngleKind::Generic);
        assert_eq!(classify_angle_exact(&Q::new(1.into(), 7.into())).kind, AngleKind::Odd(3));
    }

    #[test]
    fn min_combination_matches_brute_force() {
        let x = [1.3, 0.7, 2.9, 1.1, 0.45];
        let mut best = f64::INFINITY;
        for code in 1..3usize.pow(5) {
            let (mut c, mut s) = (code, 0.0);
            for v in x {
                s += match c % 3 {
                    0 => 0.0,
                    1 => v,
                    _ => -v,
                };
                c /= 3;
            }
            best = best.min(s.abs());
        }
        assert!((min_signed_combination(&x) - best).abs() < 1e-15);
    }

    #[test]
    fn equilateral_reduces_to_smooth() {
        let d = regular_polygon(3, 1.0 / 3.0);
        let r = reduce_polygon(&d, ANGLE_TOL);
        assert!(r.smooth_domain);
        assert_eq!(r.removed_parity, -1);
        let rep = admissibility(&d, ANGLE_TOL, 1e-9);
        assert_eq!(rep.admissible, Verdict::No);
        assert_eq!(rep.weakly_edge_admissible, Verdict::Yes);
    }

    #[test]
    fn transfer_branches() {
        let half = Q::new(1.into(), 2.into());
        assert_eq!(rational_angle_transfer(&half, 1), vec![Q::new(1.into(), 4.into())]);
        assert_eq!(rational_angle_transfer(&half, 0), vec![half]);
    }

    #[test]
    fn reorientation_flips_second_component() {
        let l = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
        let v = [0, 1, 2, 3, 4, 5];
        let even = [false, true, false, false, true, false];
        let r = component_reorientations(&l, &v, &even);
        assert_eq!(r.len(), 2);
        // second component: edges 5,0,1 with interior vertices 5,0
        assert_eq!(r[1].0, vec![1.0, 6.0, 3.0, 4.0, 5.0, 2.0]);
        assert_eq!(r[1].1[5], 0);
        assert_eq!(r[1].1[0], 5);
    }
}
