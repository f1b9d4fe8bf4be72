//! Characteristic trigonometric polynomials of polygons.
//!
//! `P(t) = sum over sign vectors xi with xi_0 = +1 of a_xi cos(|xi . l| t)
//!         - prod_j sin(pi^2 / (2 alpha_j))`,
//! where `a_xi` multiplies `c(alpha_j)` over the vertices at which `xi` flips.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{c_of_angle_pi, q_to_f64, sin_of_angle_pi, ExactBoundaryData, Q};
use crate::geometry::BoundaryData;

pub const COEF_TOL: f64 = 1e-12;
pub const FREQ_TOL_REL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CharPolyError {
    #[error("angle {0} is outside (0, pi)")]
    AngleOutOfRange(f64),
    #[error("perimeter must be positive, got {0}")]
    NonPositivePerimeter(f64),
    #[error("{0}")]
    NotWeaklyEdgeAdmissible(String),
}

/// `sum a_f cos(f t) + constant`, frequencies ascending.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct TrigPoly {
    pub terms: Vec<(f64, f64)>,
    pub constant: f64,
}

impl TrigPoly {
    pub fn eval(&self, t: f64) -> f64 {
        self.constant + self.terms.iter().map(|(f, a)| a * (f * t).cos()).sum::<f64>()
    }

    /// k-th derivative in t.
    pub fn deriv(&self, k: u32, t: f64) -> f64 {
        if k == 0 {
            return self.eval(t);
        }
        self.terms
            .iter()
            .map(|(f, a)| {
                let ft = f * t;
                let v = match k % 4 {
                    0 => ft.cos(),
                    1 => -ft.sin(),
                    2 => -ft.cos(),
                    _ => ft.sin(),
                };
                a * f.powi(k as i32) * v
            })
            .sum()
    }

    /// `sum |a_f| f^k`, plus `|constant|` when k = 0: the natural size of the k-th derivative.
    pub fn derivative_scale(&self, k: u32) -> f64 {
        let s: f64 = self.terms.iter().map(|(f, a)| a.abs() * f.powi(k as i32)).sum();
        if k == 0 {
            s + self.constant.abs()
        } else {
            s
        }
    }

    pub fn top_frequency(&self) -> f64 {
        self.terms.last().map(|t| t.0).unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.constant == 0.0
    }

    /// Frequencies multiplied by `c`, coefficients unchanged.
    pub fn scale_frequencies(&self, c: f64) -> Self {
        Self {
            terms: self.terms.iter().map(|(f, a)| (f * c, *a)).collect(),
            constant: self.constant,
        }
    }
}

pub fn c_of_angle(alpha: f64) -> Result<f64, CharPolyError> {
    if !(alpha > 0.0 && alpha < PI) {
        return Err(CharPolyError::AngleOutOfRange(alpha));
    }
    Ok((PI * PI / (2.0 * alpha)).cos())
}

/// `-prod_j sin(pi^2 / (2 alpha_j))`.
pub fn constant_term(angles: &[f64]) -> f64 {
    -angles.iter().map(|a| (PI * PI / (2.0 * a)).sin()).product::<f64>()
}

/// Unmerged `(|xi . l|, a_xi)` over the sign vectors with `xi_0 = +1`.
pub fn sign_vector_terms(lengths: &[f64], cvals: &[f64]) -> Vec<(f64, f64)> {
    let n = lengths.len();
    if n == 0 {
        return Vec::new();
    }
    let half = 1usize << (n - 1);
    let mut out = Vec::with_capacity(half);
    for mask in 0..half {
        // bit j-1 set means xi_j = -1, for j >= 1
        let sign = |j: usize| j != 0 && (mask >> (j - 1)) & 1 == 1;
        let mut f = 0.0;
        let mut a = 1.0;
        for j in 0..n {
            f += if sign(j) { -lengths[j] } else { lengths[j] };
            if sign(j) != sign((j + 1) % n) {
                a *= cvals[j];
            }
        }
        out.push((f.abs(), a));
    }
    out
}

/// Charpoly of arbitrary (lengths, angles); no closure required, so curvilinear
/// reduced polygons use it too.
pub fn charpoly_from_parts(lengths: &[f64], angles: &[f64]) -> TrigPoly {
    let cvals: Vec<f64> = angles.iter().map(|a| (PI * PI / (2.0 * a)).cos()).collect();
    let raw = TrigPoly {
        terms: sign_vector_terms(lengths, &cvals),
        constant: constant_term(angles),
    };
    let l: f64 = lengths.iter().sum();
    canonicalize(&raw, FREQ_TOL_REL * l, COEF_TOL)
}

pub fn build_charpoly(data: &BoundaryData) -> TrigPoly {
    charpoly_from_parts(&data.lengths, &data.angles)
}

pub fn smooth_charpoly(perimeter: f64) -> Result<TrigPoly, CharPolyError> {
    if !(perimeter > 0.0 && perimeter.is_finite()) {
        return Err(CharPolyError::NonPositivePerimeter(perimeter));
    }
    Ok(TrigPoly {
        terms: vec![(perimeter, 1.0)],
        constant: -1.0,
    })
}

/// Merges frequencies within `freq_tol`, folds near-zero frequencies into the
/// constant and drops coefficients below `coef_tol`.
pub fn canonicalize(p: &TrigPoly, freq_tol: f64, coef_tol: f64) -> TrigPoly {
    let mut constant = p.constant;
    let mut terms: Vec<(f64, f64)> = Vec::with_capacity(p.terms.len());
    let mut sorted = p.terms.clone();
    sorted.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
    let mut i = 0;
    while i < sorted.len() {
        let start = sorted[i].0;
        let mut j = i;
        let mut coef = 0.0;
        let mut fmax = start;
        while j < sorted.len() && sorted[j].0 - start <= freq_tol {
            coef += sorted[j].1;
            fmax = fmax.max(sorted[j].0);
            j += 1;
        }
        // the largest member keeps the perimeter exact for the all-plus vector
        let f = fmax;
        if start < freq_tol {
            constant += coef;
        } else {
            terms.push((f, coef));
        }
        i = j;
    }
    terms.retain(|(_, a)| a.abs() >= coef_tol);
    if constant.abs() < coef_tol {
        constant = 0.0;
    }
    TrigPoly { terms, constant }
}

/// Largest coefficient discrepancy after pairing frequencies within
/// `freq_tol`; unpaired terms count with their full coefficient.
pub fn charpoly_distance(p: &TrigPoly, q: &TrigPoly, freq_tol: f64) -> f64 {
    let mut d = (p.constant - q.constant).abs();
    let (mut i, mut j) = (0, 0);
    while i < p.terms.len() || j < q.terms.len() {
        match (p.terms.get(i), q.terms.get(j)) {
            (Some(a), Some(b)) if (a.0 - b.0).abs() <= freq_tol => {
                d = d.max((a.1 - b.1).abs());
                i += 1;
                j += 1;
            }
            (Some(a), Some(b)) if a.0 < b.0 => {
                d = d.max(a.1.abs());
                i += 1;
            }
            (Some(_), Some(b)) => {
                d = d.max(b.1.abs());
                j += 1;
            }
            (Some(a), None) => {
                d = d.max(a.1.abs());
                i += 1;
            }
            (None, Some(b)) => {
                d = d.max(b.1.abs());
                j += 1;
            }
            (None, None) => break,
        }
    }
    d
}

/// Equal within `tol` in every coefficient and, relative to the top frequency, every frequency.
pub fn equal_charpoly(p: &TrigPoly, q: &TrigPoly, tol: f64) -> bool {
    let ftol = tol * p.top_frequency().max(q.top_frequency()).max(1.0);
    charpoly_distance(p, q, ftol) <= tol
}

/// Charpoly with exact rational frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactTrigPoly {
    pub terms: Vec<(Q, f64)>,
    pub constant: f64,
}

impl ExactTrigPoly {
    pub fn to_float(&self) -> TrigPoly {
        TrigPoly {
            terms: self.terms.iter().map(|(f, a)| (q_to_f64(f), *a)).collect(),
            constant: self.constant,
        }
    }
}

/// Exact-frequency expansion; merging is by exact equality.
pub fn build_charpoly_exact(data: &ExactBoundaryData) -> ExactTrigPoly {
    let n = data.n();
    let cvals: Vec<f64> = data.angles_pi.iter().map(c_of_angle_pi).collect();
    let constant = -data.angles_pi.iter().map(sin_of_angle_pi).product::<f64>();
    let mut merged: BTreeMap<Q, f64> = BTreeMap::new();
    let mut constant_acc = constant;
    for mask in 0..(1usize << (n - 1)) {
        let sign = |j: usize| j != 0 && (mask >> (j - 1)) & 1 == 1;
        let mut f = Q::from_integer(0.into());
        let mut a = 1.0;
        for j in 0..n {
            if sign(j) {
                f -= &data.lengths[j];
            } else {
                f += &data.lengths[j];
            }
            if sign(j) != sign((j + 1) % n) {
                a *= cvals[j];
            }
        }
        if a == 0.0 {
            continue;
        }
        let f = if f < Q::from_integer(0.into()) { -f } else { f };
        if f == Q::from_integer(0.into()) {
            constant_acc += a;
        } else {
            *merged.entry(f).or_insert(0.0) += a;
        }
    }
    let terms = merged
        .into_iter()
        .filter(|(_, a)| a.abs() >= COEF_TOL)
        .collect();
    if constant_acc.abs() < COEF_TOL {
        constant_acc = 0.0;
    }
    ExactTrigPoly {
        terms,
        constant: constant_acc,
    }
}

/// Outcome of comparing a polygon's charpoly with its reduced polygon's.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedCheck {
    pub matches: bool,
    pub constant_sign_flip: bool,
}

/// Non-constant terms agree; constants agree up to the product of the removed
/// odd angles' parities.
pub fn reduced_charpoly_check(data: &BoundaryData) -> Result<ReducedCheck, CharPolyError> {
    use crate::inverse::{admissibility, reduce_polygon, Verdict, ANGLE_TOL};
    let adm = admissibility(data, ANGLE_TOL, 1e-9);
    if adm.weakly_edge_admissible == Verdict::No {
        return Err(CharPolyError::NotWeaklyEdgeAdmissible(adm.reasons.join("; ")));
    }
    let red = reduce_polygon(data, ANGLE_TOL);
    let full = build_charpoly(data);
    let reduced = red.charpoly();
    let parity = red.removed_parity;
    let tol = 1e-10;
    let ftol = tol * full.top_frequency().max(1.0);
    let strip = |p: &TrigPoly| TrigPoly {
        terms: p.terms.clone(),
        constant: 0.0,
    };
    let terms_match = charpoly_distance(&strip(&full), &strip(&reduced), ftol) <= tol;
    let const_match = (full.constant - parity as f64 * reduced.constant).abs() <= tol;
    Ok(ReducedCheck {
        matches: terms_match && const_match,
        constant_sign_flip: parity < 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c_values() {
        assert!((c_of_angle(PI / 2.0).unwrap() + 1.0).abs() < 1e-15);
        assert!(c_of_angle(PI / 3.0).unwrap().abs() < 1e-15);
        assert!((c_of_angle(2.0 * PI / 3.0).unwrap() + 0.5f64.sqrt()).abs() < 1e-15);
        assert!(c_of_angle(PI).is_err());
        assert!(c_of_angle(0.0).is_err());
    }

    #[test]
    fn canonicalize_examples() {
        let p = TrigPoly {
            terms: vec![(2.0, 1.0), (2.0 + 1e-12, 1.0), (1e-13, 5.0), (3.0, 1e-15)],
            constant: 0.0,
        };
        let c = canonicalize(&p, 1e-9, 1e-12);
        assert_eq!(c.terms.len(), 1);
        assert!((c.terms[0].0 - 2.0).abs() < 1e-11);
        assert_eq!(c.terms[0].1, 2.0);
        assert_eq!(c.constant, 5.0);
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let p = TrigPoly {
            terms: vec![(1.3, 0.7), (2.9, -0.4)],
            constant: 0.2,
        };
        let h = 1e-5;
        for k in 0..4 {
            let fd = (p.deriv(k, 0.8 + h) - p.deriv(k, 0.8 - h)) / (2.0 * h);
            assert!((fd - p.deriv(k + 1, 0.8)).abs() < 1e-7);
        }
    }
}
