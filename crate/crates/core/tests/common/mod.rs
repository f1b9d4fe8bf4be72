//! Independent oracles and samplers shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use rand::Rng;
use steklov::geometry::BoundaryData;
use steklov::inverse::{admissibility, Verdict, ANGLE_TOL};
use steklov::sampling::{random_angles, random_polygon_with_angles};

/// `P(t)` summed straight from the definition over all `2^n` sign vectors.
pub fn brute_charpoly_eval(lengths: &[f64], angles: &[f64], t: f64) -> f64 {
    let n = lengths.len();
    let c: Vec<f64> = angles.iter().map(|a| (PI * PI / (2.0 * a)).cos()).collect();
    let mut sum = 0.0;
    for mask in 0u32..(1 << n) {
        let xi = |j: usize| if (mask >> (j % n)) & 1 == 1 { -1.0 } else { 1.0 };
        let mut a = 1.0;
        let mut f = 0.0;
        for j in 0..n {
            if xi(j) != xi(j + 1) {
                a *= c[j];
            }
            f += xi(j) * lengths[j];
        }
        sum += a * (f.abs() * t).cos();
    }
    0.5 * sum - angles.iter().map(|a| (PI * PI / (2.0 * a)).sin()).product::<f64>()
}

/// `(frequency, coefficient)` pairs from the definition, merging frequencies
/// equal within `tol`, dropping zero coefficients; frequency 0 goes to the constant.
pub fn brute_charpoly_terms(lengths: &[f64], angles: &[f64], tol: f64) -> (Vec<(f64, f64)>, f64) {
    let n = lengths.len();
    let c: Vec<f64> = angles.iter().map(|a| (PI * PI / (2.0 * a)).cos()).collect();
    let mut terms: Vec<(f64, f64)> = Vec::new();
    let mut constant = -angles.iter().map(|a| (PI * PI / (2.0 * a)).sin()).product::<f64>();
    for mask in 0u32..(1 << n) {
        let xi = |j: usize| if (mask >> (j % n)) & 1 == 1 { -1.0 } else { 1.0 };
        let mut a = 0.5;
        let mut f = 0.0;
        for j in 0..n {
            if xi(j) != xi(j + 1) {
                a *= c[j];
            }
            f += xi(j) * lengths[j];
        }
        let f = f.abs();
        if f <= tol {
            constant += a;
        } else if let Some(t) = terms.iter_mut().find(|t| (t.0 - f).abs() <= tol) {
            t.1 += a;
        } else {
            terms.push((f, a));
        }
    }
    terms.retain(|t| t.1.abs() > 1e-13);
    terms.sort_by(|x, y| x.0.total_cmp(&y.0));
    (terms, constant)
}

/// Vertices by walking the edges with exterior turns `pi - angle`.
pub fn walk(d: &BoundaryData) -> Vec<(f64, f64)> {
    let mut pts = vec![(0.0, 0.0)];
    let mut heading: f64 = 0.0;
    for i in 0..d.n() {
        let p = *pts.last().unwrap();
        pts.push((p.0 + d.lengths[i] * heading.cos(), p.1 + d.lengths[i] * heading.sin()));
        heading += PI - d.angles[i];
    }
    pts
}

/// Cyclic or reversed-cyclic match of the (length, angle) sequences.
pub fn same_shape(a: &BoundaryData, b: &BoundaryData, tol: f64) -> bool {
    let n = a.n();
    if n != b.n() {
        return false;
    }
    for s in 0..n {
        let fwd = (0..n).all(|k| {
            (a.lengths[(k + s) % n] - b.lengths[k]).abs() <= tol
                && (a.angles[(k + s) % n] - b.angles[k]).abs() <= tol
        });
        // reversed traversal: edge k <- edge s-k, angle k <- angle s-k-1
        let rev = (0..n).all(|k| {
            (a.lengths[(s + n - k) % n] - b.lengths[k]).abs() <= tol
                && (a.angles[(s + 2 * n - k - 1) % n] - b.angles[k]).abs() <= tol
        });
        if fwd || rev {
            return true;
        }
    }
    false
}

pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Convex polygon with random edge lengths and angles, perimeter one.
pub fn random_polygon<R: Rng>(rng: &mut R, n: usize) -> BoundaryData {
    steklov::sampling::random_convex_polygon(rng, n, 0.05, 0.02)
}

/// A random admissible target with `e` even angles, or `None` if sampling fails.
pub fn admissible_target<R: Rng>(rng: &mut R, n: usize, e: usize, obtuse: bool) -> Option<(BoundaryData, Vec<usize>)> {
    let mut pos: Vec<usize> = (0..n).collect();
    for k in 0..e {
        let j = rng.gen_range(k..n);
        pos.swap(k, j);
    }
    let mut evens: Vec<usize> = pos[..e].to_vec();
    evens.sort();
    let fixed: Vec<(usize, f64)> = evens.iter().map(|&i| (i, PI / (2.0 * rng.gen_range(1..4) as f64))).collect();
    let angles = random_angles(rng, n, &fixed, 0.2)?;
    if obtuse && angles.iter().any(|a| *a <= PI / 2.0) {
        return None;
    }
    let d = random_polygon_with_angles(rng, &angles, 0.03)?;
    (admissibility(&d, ANGLE_TOL, 1e-9).admissible == Verdict::Yes).then_some((d, evens))
}
