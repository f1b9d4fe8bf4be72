//! Explicit upper bounds on Steklov eigenvalues and the angle lower bound they imply.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::exact::{q_to_f64, Q};
use crate::geometry::{build_polygon, BoundaryData, PlanarPoint};

const PI2: f64 = PI * PI;
const PI3: f64 = PI * PI * PI;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    /// Unset when the hypotheses fail.
    pub value: Option<f64>,
    pub formula: String,
    pub hypotheses_ok: bool,
    pub hypothesis_report: String,
}

impl BoundResult {
    fn ok(formula: &str, value: f64, report: impl Into<String>) -> Self {
        Self {
            value: Some(value),
            formula: formula.to_string(),
            hypotheses_ok: true,
            hypothesis_report: report.into(),
        }
    }

    fn fail(formula: &str, report: impl Into<String>) -> Self {
        Self {
            value: None,
            formula: formula.to_string(),
            hypotheses_ok: false,
            hypothesis_report: report.into(),
        }
    }
}

pub fn bound_rectangle(ell: f64, w: f64, k: u32) -> BoundResult {
    if !(ell > 0.0 && w > 0.0) {
        return BoundResult::fail("rectangle", format!("need l, w > 0 (l={ell}, w={w})"));
    }
    let k2 = (k as f64).powi(2);
    BoundResult::ok(
        "rectangle",
        2.0 * PI2 * k2 * w / (ell * ell),
        format!("rectangle {ell} x {w} with long sides on the boundary"),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarRectangle {
    pub r1: f64,
    pub r2: f64,
    pub alpha: f64,
}

impl PolarRectangle {
    pub fn new(r1: f64, r2: f64, alpha: f64) -> Option<Self> {
        (r1 >= 0.0 && r2 > r1 && alpha > 0.0 && alpha < 2.0 * PI).then_some(Self { r1, r2, alpha })
    }

    /// Radial side length.
    pub fn radial_length(&self) -> f64 {
        self.r2 - self.r1
    }

    pub fn s1(&self) -> f64 {
        self.r1 * self.alpha
    }

    pub fn s2(&self) -> f64 {
        self.r2 * self.alpha
    }
}

/// Evaluates both algebraic forms and checks they agree.
pub fn bound_polar_rectangle(s: &PolarRectangle, k: u32) -> BoundResult {
    let l = s.radial_length();
    let k2 = (k as f64).powi(2);
    let a = s.alpha * k2 * PI2 / l * (1.0 + 2.0 * s.r1 / l);
    let b = k2 * PI2 * (s.s1() + s.s2()) / (l * l);
    let agree = (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
    assert!(agree, "polar rectangle forms disagree: {a} vs {b}");
    BoundResult::ok(
        "polar_rectangle",
        a,
        format!("polar rectangle r1={} r2={} opening {}", s.r1, s.r2, s.alpha),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PassageShape {
    Quad { ell: f64, w: f64 },
    Tri { ell: f64, w: f64 },
}

pub fn bound_passage(shape: PassageShape, k: u32) -> BoundResult {
    let k2 = (k as f64).powi(2);
    match shape {
        PassageShape::Quad { ell, w } => {
            if !(w > 0.0 && ell > 3.0 * w) {
                return BoundResult::fail("passage_quad", format!("need l > 3w (l={ell}, w={w})"));
            }
            BoundResult::ok(
                "passage_quad",
                2.0 * k2 * PI3 * w / (ell - 3.0 * w).powi(2),
                format!("quadrilateral passage l={ell}, w={w}"),
            )
        }
        PassageShape::Tri { ell, w } => {
            if !(w > 0.0 && w < ell / 2.0) {
                return BoundResult::fail("passage_tri", format!("need w < l/2 (l={ell}, w={w})"));
            }
            BoundResult::ok(
                "passage_tri",
                k2 * PI3 * w / (ell - 2.0 * w).powi(2),
                format!("triangular passage l={ell}, w={w}"),
            )
        }
    }
}

/// Smallest angle `alpha` of a triangle of the given perimeter.
pub fn bound_triangle_min_angle(alpha: f64, perimeter: f64, k: u32) -> BoundResult {
    if !(alpha > 0.0 && alpha <= PI / 3.0 + 1e-12) {
        return BoundResult::fail("triangle", format!("not a smallest triangle angle: {alpha}"));
    }
    if !(perimeter > 0.0) {
        return BoundResult::fail("triangle", format!("perimeter must be positive: {perimeter}"));
    }
    let k2 = (k as f64).powi(2);
    BoundResult::ok(
        "triangle",
        8.0 * 3f64.sqrt() / 3.0 * PI2 * k2 * alpha / perimeter,
        format!("smallest angle {alpha}"),
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsoscelesBounds {
    /// Bound on `sigma_{2k} L`.
    pub sharp: BoundResult,
    pub simplified: BoundResult,
}

/// Isosceles triangle whose two equal angles `alpha` are at most the third.
pub fn bound_isosceles_even(alpha: f64, k: u32) -> IsoscelesBounds {
    if !(alpha > 0.0 && alpha <= PI / 3.0 + 1e-12) {
        let r = format!("equal angles must lie in (0, pi/3], got {alpha}");
        return IsoscelesBounds {
            sharp: BoundResult::fail("isosceles_sharp", r.clone()),
            simplified: BoundResult::fail("isosceles_simplified", r),
        };
    }
    let k2 = (k as f64).powi(2);
    let c = alpha.cos();
    IsoscelesBounds {
        sharp: BoundResult::ok(
            "isosceles_sharp",
            PI2 * k2 * 2.0 * (1.0 + c) / c * alpha,
            format!("bounds sigma_{} L", 2 * k),
        ),
        simplified: BoundResult::ok(
            "isosceles_simplified",
            6.0 * PI2 * k2 * alpha,
            format!("bounds sigma_{} L", 2 * k),
        ),
    }
}

pub fn bound_thin_ngon(ell_star: f64, w_star: f64, n: usize, k: u32) -> BoundResult {
    let m = (n as f64 - 1.0).max(1.0);
    if !(w_star > 0.0 && w_star < ell_star / (3.0 * m)) {
        return BoundResult::fail(
            "thin_ngon",
            format!("need w* < l*/(3(n-1)) (l*={ell_star}, w*={w_star}, n={n})"),
        );
    }
    let k2 = (k as f64).powi(2);
    BoundResult::ok(
        "thin_ngon",
        2.0 * k2 * m * m * PI3 * w_star / (ell_star - 3.0 * m * w_star).powi(2),
        format!("contained in a {ell_star} x {w_star} box"),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NgonConstants {
    pub delta_n: f64,
    pub c_n: f64,
}

/// Supremum of admissible `delta_n`: `0.98 / (3n - 2)`.
pub fn delta_sup(n: usize) -> f64 {
    0.98 / (3.0 * n as f64 - 2.0)
}

/// `C_n` for an arbitrary admissible `delta < 0.98/(3n-2)`.
///
/// The gap `1/2 - (3n-2) delta / 1.96` is evaluated exactly, since near the
/// supremum it cancels to a few ulps of `1/2` in floating point.
pub fn c_n_for_delta(n: usize, delta: f64) -> f64 {
    let nn = n as f64;
    let d = Q::from_float(delta).expect("finite delta");
    let m = Q::from_integer((3 * n as i64 - 2).into());
    let gap = Q::new(1.into(), 2.into()) - m * d * Q::new(100.into(), 196.into());
    let gap = q_to_f64(&gap);
    (nn - 1.0).powi(2) * PI3 / (0.98 * gap * gap)
}

/// Margin below the open bound on `delta_n`. A fixed absolute margin keeps
/// `C_n` increasing in `n`; an ulp-sized one would make it depend on rounding.
pub const DELTA_MARGIN: f64 = 5e-13;

/// `delta_n` just below the open bound, and the matching `C_n`.
pub fn convex_ngon_constants(n: usize) -> NgonConstants {
    let delta_n = delta_sup(n) - DELTA_MARGIN;
    NgonConstants {
        delta_n,
        c_n: c_n_for_delta(n, delta_n),
    }
}

pub fn bound_convex_ngon_with(
    consts: NgonConstants,
    alpha_min: f64,
    perimeter: f64,
    k: u32,
) -> BoundResult {
    if !(alpha_min > 0.0 && alpha_min < consts.delta_n) {
        return BoundResult::fail(
            "convex_ngon",
            format!("smallest angle {alpha_min} not below delta_n = {}", consts.delta_n),
        );
    }
    let k2 = (k as f64).powi(2);
    BoundResult::ok(
        "convex_ngon",
        consts.c_n * k2 * alpha_min / perimeter,
        format!("smallest angle {alpha_min} < delta_n = {}", consts.delta_n),
    )
}

pub fn bound_convex_ngon(n: usize, alpha_min: f64, perimeter: f64, k: u32) -> BoundResult {
    bound_convex_ngon_with(convex_ngon_constants(n), alpha_min, perimeter, k)
}

/// `min{delta_n, sigma_k L / (C_n k^2)}`.
pub fn angle_lower_bound(n: usize, sigma_k: f64, perimeter: f64, k: u32) -> f64 {
    let c = convex_ngon_constants(n);
    angle_lower_bound_with(c, sigma_k, perimeter, k)
}

pub fn angle_lower_bound_with(c: NgonConstants, sigma_k: f64, perimeter: f64, k: u32) -> f64 {
    let k2 = (k.max(1) as f64).powi(2);
    c.delta_n.min(sigma_k * perimeter / (c.c_n * k2))
}

/// Best floor over all admissible `delta`: solves `delta = sigma_k L / (C(delta) k^2)`.
pub fn angle_floor_optimized(n: usize, sigma_k: f64, perimeter: f64, k: u32) -> f64 {
    if !(sigma_k > 0.0) {
        return 0.0;
    }
    let x = sigma_k * perimeter / (k.max(1) as f64).powi(2);
    let g = |d: f64| d - x / c_n_for_delta(n, d);
    let (mut lo, mut hi) = (0.0, delta_sup(n) * (1.0 - 1e-12));
    if g(hi) <= 0.0 {
        return hi;
    }
    for _ in 0..200 {
        let m = 0.5 * (lo + hi);
        if g(m) > 0.0 {
            hi = m;
        } else {
            lo = m;
        }
    }
    lo
}

/// Floor valid for triangles from the smallest-angle bound (no smallness hypothesis).
pub fn triangle_angle_floor(sigma_k: f64, perimeter: f64, k: u32) -> f64 {
    let k2 = (k.max(1) as f64).powi(2);
    (sigma_k * perimeter / (8.0 * 3f64.sqrt() / 3.0 * PI2 * k2)).min(PI / 3.0)
}

/// Largest angle floor available for n-gons given `sigma_k`.
pub fn best_angle_floor(n: usize, sigma_k: f64, perimeter: f64, k: u32) -> f64 {
    let f = angle_floor_optimized(n, sigma_k, perimeter, k);
    if n == 3 {
        f.max(triangle_angle_floor(sigma_k, perimeter, k))
    } else {
        f
    }
}

/// A bound that applies to `sigma_index` of a specific polygon.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AppliedBound {
    pub sigma_index: u32,
    pub result: BoundResult,
}

fn seg_line_dist(p: PlanarPoint, a: PlanarPoint, b: PlanarPoint) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    ((p.x - a.x) * dy - (p.y - a.y) * dx).abs() / dx.hypot(dy)
}

/// Every bound whose hypotheses can be certified from the geometry of `data`,
/// each bounding `sigma_k` (the isosceles bound is applied to `sigma_{2 ceil(k/2)}`).
pub fn applicable_bounds(data: &BoundaryData, k: u32) -> Vec<AppliedBound> {
    let mut out = Vec::new();
    let Ok(poly) = build_polygon(data) else {
        return out;
    };
    let v = poly.vertices();
    let n = v.len();
    let l = &data.lengths;
    let perim = data.perimeter();
    let at = |r: BoundResult| AppliedBound {
        sigma_index: k,
        result: r,
    };

    // disk sectors at each vertex: vertex i sits at P[i+1], between edges i and i+1
    let mut best_sector: Option<BoundResult> = None;
    for i in 0..n {
        let c = v[(i + 1) % n];
        let mut r = l[i].min(l[(i + 1) % n]);
        for e in 0..n {
            if e == i || e == (i + 1) % n {
                continue;
            }
            r = r.min(seg_line_dist(c, v[e], v[(e + 1) % n]));
        }
        if let Some(s) = PolarRectangle::new(0.0, r, data.angles[i]) {
            let b = bound_polar_rectangle(&s, k);
            if best_sector.as_ref().map_or(true, |x| b.value < x.value) {
                best_sector = Some(b);
            }
        }
    }
    if let Some(b) = best_sector {
        out.push(at(b));
    }

    let dirs = data.directions();
    for e1 in 0..n {
        for e2 in e1 + 1..n {
            let (a, b) = (v[e1], v[(e1 + 1) % n]);
            let (c, d) = (v[e2], v[(e2 + 1) % n]);
            let adjacent = e2 == e1 + 1 || (e1 == 0 && e2 == n - 1);
            if adjacent {
                // triangle with apex at the shared vertex
                let (p, q1, q2) = if e2 == e1 + 1 { (b, a, d) } else { (a, b, c) };
                let ell = p.dist(&q1).min(p.dist(&q2));
                let w = q1.dist(&q2);
                let r = bound_passage(PassageShape::Tri { ell, w }, k);
                if r.hypotheses_ok {
                    out.push(at(r));
                }
                continue;
            }
            // quadrilateral a, b, c, d with long sides ab, cd on the boundary
            let w = a.dist(&d).max(b.dist(&c));
            let ell = l[e1].min(l[e2]);
            let r = bound_passage(PassageShape::Quad { ell, w }, k);
            if r.hypotheses_ok {
                out.push(at(r));
            }
            // antiparallel edges bound a rectangle
            let (u1, u2) = (dirs[e1], dirs[e2]);
            if (u1.0 + u2.0).abs() < 1e-12 && (u1.1 + u2.1).abs() < 1e-12 {
                let proj = |p: PlanarPoint| p.x * u1.0 + p.y * u1.1;
                let lo = proj(a).max(proj(d));
                let hi = proj(b).min(proj(c));
                let width = seg_line_dist(c, a, b);
                if hi - lo > 0.0 {
                    out.push(at(bound_rectangle(hi - lo, width, k)));
                }
            }
        }
    }

    // thin n-gon: any orientation of the bounding box works
    let mut best_thin: Option<BoundResult> = None;
    let mut thetas: Vec<f64> = data.edge_headings();
    thetas.extend((0..720).map(|i| PI * i as f64 / 720.0));
    for th in thetas {
        let (cx, sy) = (th.cos(), th.sin());
        let xs = v.iter().map(|p| p.x * cx + p.y * sy);
        let ys = v.iter().map(|p| -p.x * sy + p.y * cx);
        let (xmin, xmax) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |m, x| (m.0.min(x), m.1.max(x)));
        let (ymin, ymax) = ys.fold((f64::INFINITY, f64::NEG_INFINITY), |m, y| (m.0.min(y), m.1.max(y)));
        let r = bound_thin_ngon(xmax - xmin, ymax - ymin, n, k);
        if r.hypotheses_ok && best_thin.as_ref().map_or(true, |x| r.value < x.value) {
            best_thin = Some(r);
        }
    }
    if let Some(b) = best_thin {
        out.push(at(b));
    }

    let amin = data.min_angle();
    if n == 3 {
        out.push(at(bound_triangle_min_angle(amin, perim, k)));
        // isosceles with the two equal angles not exceeding the third
        for i in 0..3 {
            let (x, y, z) = (data.angles[i], data.angles[(i + 1) % 3], data.angles[(i + 2) % 3]);
            if (x - y).abs() < 1e-12 && x <= z + 1e-12 {
                let kk = k.div_ceil(2);
                let iso = bound_isosceles_even(x, kk);
                if let Some(val) = iso.sharp.value {
                    let mut r = iso.sharp.clone();
                    r.value = Some(val / perim);
                    out.push(AppliedBound {
                        sigma_index: 2 * kk,
                        result: r,
                    });
                }
                break;
            }
        }
    }
    let cn = bound_convex_ngon(n, amin, perim, k);
    if cn.hypotheses_ok {
        out.push(at(cn));
    }
    out
}
