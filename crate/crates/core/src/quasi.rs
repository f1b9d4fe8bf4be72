//! Nonnegative roots of a cosine series, with multiplicities, as quasi-eigenvalues.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::charpoly::{build_charpoly, TrigPoly};
use crate::geometry::BoundaryData;

/// Sampling density: samples per half-period of the fastest cosine.
const SAMPLES_PER_HALF_PERIOD: f64 = 8.0;
/// `|p(t)| / S_0` below this at a local minimum counts as a tangential root.
pub const TOUCH_TOL: f64 = 1e-8;
/// `|p^(k)(t)| / S_k` below this counts as a vanishing derivative.
const DERIV_TOL: f64 = 1e-3;
const MAX_ORDER: u32 = 6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RootError {
    #[error("polynomial has no cosine terms")]
    Empty,
    #[error("t_max must be positive, got {0}")]
    BadRange(f64),
    #[error("index {index} beyond the {available} enumerated values; extend t_max")]
    OutOfRange { index: usize, available: usize },
    #[error("sigma has {sigma} values but nu has {nu}")]
    Mismatch { sigma: usize, nu: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootKind {
    SignChange,
    Touch,
    Zero,
}

impl RootKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            RootKind::SignChange => "sign_change",
            RootKind::Touch => "touch",
            RootKind::Zero => "zero",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuasiRoot {
    pub t: f64,
    pub multiplicity: u32,
    pub kind: RootKind,
    /// False when no derivative up to order 6 was found nonvanishing.
    pub resolved: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuasiSpectrum {
    pub roots: Vec<QuasiRoot>,
    /// Nondecreasing nu_0, nu_1, ...
    pub values: Vec<f64>,
    /// Index into `roots` for each value.
    pub source: Vec<usize>,
    pub t_max: f64,
}

impl QuasiSpectrum {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("index,nu,multiplicity_source\n");
        for (j, (v, r)) in self.values.iter().zip(&self.source).enumerate() {
            let root = &self.roots[*r];
            let tag = if root.resolved { root.kind.as_str() } else { "unresolved" };
            s.push_str(&format!("{j},{v:.15},{}:{}\n", root.multiplicity, tag));
        }
        s
    }
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    if fa == 0.0 {
        return a;
    }
    if f(b) == 0.0 {
        return b;
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    for _ in 0..200 {
        if f(c) < f(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - g * (b - a);
        d = a + g * (b - a);
        if (b - a).abs() < 1e-15 * (1.0 + a.abs()) {
            break;
        }
    }
    0.5 * (a + b)
}

/// Maximum bisection depth when refining a grid cell.
const MAX_REFINE: u32 = 48;

/// Uniform grid, with each same-sign cell bisected until the curvature bound
/// `|p''| <= m2` rules out a zero inside it. Cells whose endpoints are both
/// below `touch` are left to the tangential-root search.
fn refined_grid(p: &TrigPoly, step: f64, cells: usize, m2: f64, touch: f64) -> (Vec<f64>, Vec<f64>) {
    fn split(
        p: &TrigPoly,
        (a, va): (f64, f64),
        (b, vb): (f64, f64),
        m2: f64,
        touch: f64,
        depth: u32,
        out: &mut (Vec<f64>, Vec<f64>),
    ) {
        let same_sign = va != 0.0 && vb != 0.0 && (va < 0.0) == (vb < 0.0);
        let h = b - a;
        let certified = va.abs().min(vb.abs()) > m2 * h * h / 8.0;
        let flat = va.abs() < touch && vb.abs() < touch;
        if !same_sign || certified || flat || depth >= MAX_REFINE {
            return;
        }
        let m = 0.5 * (a + b);
        let vm = p.eval(m);
        split(p, (a, va), (m, vm), m2, touch, depth + 1, out);
        out.0.push(m);
        out.1.push(vm);
        split(p, (m, vm), (b, vb), m2, touch, depth + 1, out);
    }
    let mut out = (Vec::with_capacity(cells + 1), Vec::with_capacity(cells + 1));
    let mut prev = (0.0, p.eval(0.0));
    out.0.push(prev.0);
    out.1.push(prev.1);
    for i in 1..=cells {
        let t = i as f64 * step;
        let cur = (t, p.eval(t));
        split(p, prev, cur, m2, touch, 0, &mut out);
        out.0.push(cur.0);
        out.1.push(cur.1);
        prev = cur;
    }
    out
}

struct Finder<'a> {
    p: &'a TrigPoly,
    scales: Vec<f64>,
    step: f64,
}

impl Finder<'_> {
    fn normalized(&self, k: u32, t: f64) -> f64 {
        let s = self.scales[k as usize];
        if s == 0.0 {
            0.0
        } else {
            self.p.deriv(k, t).abs() / s
        }
    }

    /// Smallest order >= `from` whose normalized derivative is not small.
    fn first_nonvanishing(&self, t: f64, from: u32) -> Option<u32> {
        (from..=MAX_ORDER).find(|&k| self.normalized(k, t) >= DERIV_TOL)
    }

    /// Locates a simple root of p^(m-1) near `t` and checks p and its lower
    /// derivatives vanish there.
    fn relocate(&self, t: f64, m: u32) -> Option<f64> {
        let g = |x: f64| self.p.deriv(m - 1, x);
        let w = 0.5 * self.step;
        let (a, b) = (t - w, t + w);
        let (ga, gb) = (g(a), g(b));
        let r = if ga == 0.0 {
            a
        } else if gb == 0.0 {
            b
        } else if (ga < 0.0) != (gb < 0.0) {
            bisect(g, a, b)
        } else {
            return None;
        };
        let ok = self.normalized(0, r) < TOUCH_TOL
            && (1..m - 1).all(|k| self.normalized(k, r) < DERIV_TOL);
        ok.then_some(r)
    }

    /// Multiplicity of the root near `t` with the given parity (1 odd, 0 even).
    fn classify(&self, t: f64, odd: bool) -> (f64, u32, bool) {
        let base = if odd { 1 } else { 2 };
        let Some(k) = self.first_nonvanishing(t, 1) else {
            return (t, base, false);
        };
        let mut m = k.max(base);
        if (m % 2 == 1) != odd {
            m += 1;
        }
        if m > MAX_ORDER {
            return (t, base, false);
        }
        if m == base {
            return (t, m, true);
        }
        match self.relocate(t, m) {
            Some(r) => (r, m, true),
            None => (t, base, true),
        }
    }
}

/// All roots in `[0, t_max]`; a root at 0 of multiplicity m contributes
/// `floor(m/2)` values.
pub fn find_roots(p: &TrigPoly, t_max: f64) -> Result<QuasiSpectrum, RootError> {
    if p.terms.is_empty() {
        return Err(RootError::Empty);
    }
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(RootError::BadRange(t_max));
    }
    let top = p.top_frequency();
    let step = PI / (SAMPLES_PER_HALF_PERIOD * top);
    let finder = Finder {
        p,
        scales: (0..=MAX_ORDER).map(|k| p.derivative_scale(k)).collect(),
        step,
    };
    let s0 = finder.scales[0];
    let touch = TOUCH_TOL * s0;
    let coarse = (t_max / step).ceil() as usize + 2;
    let (ts, vs) = refined_grid(p, step, coarse, finder.scales[2], touch);
    let n = ts.len() - 1;

    let mut roots: Vec<QuasiRoot> = Vec::new();
    // t = 0: p is even, so odd derivatives vanish and the multiplicity is even
    let mut zero_root = false;
    if vs[0].abs() < touch {
        zero_root = true;
        let k = (2..=MAX_ORDER).step_by(2).find(|&k| finder.normalized(k, 0.0) >= DERIV_TOL);
        let (m, resolved) = match k {
            Some(k) => (k, true),
            None => (2, false),
        };
        roots.push(QuasiRoot {
            t: 0.0,
            multiplicity: m,
            kind: RootKind::Zero,
            resolved,
        });
    }
    for i in 0..n {
        let (a, b) = (vs[i], vs[i + 1]);
        let interior = i > 0 || !zero_root;
        // sign change strictly inside (t_i, t_{i+1}]
        if a != 0.0 && b != 0.0 && (a < 0.0) != (b < 0.0) {
            let r = bisect(|t| p.eval(t), ts[i], ts[i + 1]);
            let (r, m, res) = finder.classify(r, true);
            roots.push(QuasiRoot {
                t: r,
                multiplicity: m,
                kind: RootKind::SignChange,
                resolved: res,
            });
            continue;
        }
        if i == 0 || !interior {
            continue;
        }
        let (prev, cur, next) = (vs[i - 1], a, b);
        if cur == 0.0 {
            let odd = prev != 0.0 && next != 0.0 && (prev < 0.0) != (next < 0.0);
            let (r, m, res) = finder.classify(ts[i], odd);
            roots.push(QuasiRoot {
                t: r,
                multiplicity: m,
                kind: if odd { RootKind::SignChange } else { RootKind::Touch },
                resolved: res,
            });
            continue;
        }
        let is_local_min = cur.abs() <= prev.abs()
            && cur.abs() <= next.abs()
            && (prev < 0.0) == (cur < 0.0)
            && (next < 0.0) == (cur < 0.0)
            && prev != 0.0
            && next != 0.0;
        if !is_local_min {
            continue;
        }
        let dp = |t: f64| p.deriv(1, t);
        let (l, h) = (ts[i - 1], ts[i + 1]);
        let r = if (dp(l) < 0.0) != (dp(h) < 0.0) {
            bisect(dp, l, h)
        } else {
            golden_min(|t| p.eval(t).abs(), l, h)
        };
        if p.eval(r).abs() < touch {
            let (r, m, res) = finder.classify(r, false);
            roots.push(QuasiRoot {
                t: r,
                multiplicity: m,
                kind: RootKind::Touch,
                resolved: res,
            });
        }
    }
    roots.sort_by(|x, y| x.t.total_cmp(&y.t));
    // a tangential root sitting on a grid point can be seen from both sides
    roots.dedup_by(|b, a| (a.t - b.t).abs() < 1e-9 * step && a.kind == b.kind);
    let limit = t_max * (1.0 + 1e-12);
    roots.retain(|r| r.t <= limit);

    let mut values = Vec::new();
    let mut source = Vec::new();
    for (idx, r) in roots.iter().enumerate() {
        let copies = if r.kind == RootKind::Zero {
            r.multiplicity / 2
        } else {
            r.multiplicity
        };
        for _ in 0..copies {
            values.push(r.t);
            source.push(idx);
        }
    }
    Ok(QuasiSpectrum {
        roots,
        values,
        source,
        t_max,
    })
}

pub fn nu(spectrum: &QuasiSpectrum, j: usize) -> Result<f64, RootError> {
    spectrum.values.get(j).copied().ok_or(RootError::OutOfRange {
        index: j,
        available: spectrum.values.len(),
    })
}

/// Enough roots for indices `0..count`, enlarging `t_max` as needed.
pub fn quasi_spectrum_for(p: &TrigPoly, count: usize) -> Result<QuasiSpectrum, RootError> {
    let top = p.top_frequency();
    if top <= 0.0 {
        return Err(RootError::Empty);
    }
    let mut t_max = PI * (count as f64 + 4.0) / top;
    loop {
        let s = find_roots(p, t_max)?;
        if s.values.len() >= count + 1 || t_max > 1e7 / top {
            return Ok(s);
        }
        t_max *= 1.5;
    }
}

/// `min({pi/(2 alpha_k) - 1/2} U {1/4})`.
pub fn epsilon_ceiling(angles: &[f64]) -> f64 {
    angles
        .iter()
        .map(|a| PI / (2.0 * a) - 0.5)
        .fold(0.25, f64::min)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticOptions {
    /// Leading indices excluded from the fit.
    pub head_skip: usize,
    /// Explicit inclusive index window; defaults to the top half after `head_skip`.
    pub window: Option<(usize, usize)>,
}

impl Default for AsymptoticOptions {
    fn default() -> Self {
        Self {
            head_skip: 8,
            window: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticReport {
    pub sigma: Vec<f64>,
    pub nu: Vec<f64>,
    pub diffs: Vec<f64>,
    /// Inclusive index window used for the fit.
    pub fit_window: (usize, usize),
    /// Least-squares slope of log|d_j| against log j.
    pub slope: Option<f64>,
    /// `-slope`; `None` when fewer than two nonzero differences are in the window.
    pub epsilon_hat: Option<f64>,
    pub epsilon_ceiling: f64,
}

impl AsymptoticReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("index,sigma,nu,diff\n");
        for j in 0..self.diffs.len() {
            s.push_str(&format!(
                "{j},{:.12},{:.12},{:.6e}\n",
                self.sigma[j], self.nu[j], self.diffs[j]
            ));
        }
        s.push_str(&format!(
            "# fit_window={}..={} slope={} epsilon_hat={} epsilon_ceiling={:.6}\n",
            self.fit_window.0,
            self.fit_window.1,
            fmt_opt(self.slope),
            fmt_opt(self.epsilon_hat),
            self.epsilon_ceiling
        ));
        s
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.6}")).unwrap_or_else(|| "undefined".into())
}

/// Least-squares slope of `log|d_j|` against `log j` over `lo..=hi`.
pub fn loglog_slope(diffs: &[f64], lo: usize, hi: usize) -> Option<f64> {
    let pts: Vec<(f64, f64)> = (lo.max(1)..=hi.min(diffs.len().saturating_sub(1)))
        .filter(|&j| diffs[j].abs() > 1e-300 && diffs[j] != 0.0)
        .map(|j| ((j as f64).ln(), diffs[j].abs().ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

pub fn asymptotic_compare_with(
    sigma: &[f64],
    nu: &[f64],
    angles: &[f64],
    opts: AsymptoticOptions,
) -> Result<AsymptoticReport, RootError> {
    if sigma.len() != nu.len() {
        return Err(RootError::Mismatch {
            sigma: sigma.len(),
            nu: nu.len(),
        });
    }
    let m = sigma.len();
    let diffs: Vec<f64> = sigma.iter().zip(nu).map(|(s, v)| s - v).collect();
    let fit_window = opts.window.unwrap_or_else(|| {
        let lo = opts.head_skip.max(m / 2);
        (lo, m.saturating_sub(1))
    });
    let slope = loglog_slope(&diffs, fit_window.0, fit_window.1);
    Ok(AsymptoticReport {
        sigma: sigma.to_vec(),
        nu: nu.to_vec(),
        diffs,
        fit_window,
        slope,
        epsilon_hat: slope.map(|s| -s),
        epsilon_ceiling: epsilon_ceiling(angles),
    })
}

/// Compares a computed spectrum with the quasi-eigenvalues of `data`.
pub fn asymptotic_compare(
    sigma: &[f64],
    data: &BoundaryData,
    opts: AsymptoticOptions,
) -> Result<AsymptoticReport, RootError> {
    let p = build_charpoly(data);
    let spec = quasi_spectrum_for(&p, sigma.len())?;
    if spec.values.len() < sigma.len() {
        return Err(RootError::OutOfRange {
            index: sigma.len() - 1,
            available: spec.values.len(),
        });
    }
    asymptotic_compare_with(sigma, &spec.values[..sigma.len()], &data.angles, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk_roots() {
        let p = TrigPoly {
            terms: vec![(1.0, 1.0)],
            constant: -1.0,
        };
        let s = find_roots(&p, 7.0).unwrap();
        assert_eq!(s.values.len(), 3);
        assert_eq!(s.values[0], 0.0);
        assert!((s.values[1] - 2.0 * PI).abs() < 1e-10);
        assert!((s.values[2] - 2.0 * PI).abs() < 1e-10);
    }

    #[test]
    fn tangential_roots() {
        let p = TrigPoly {
            terms: vec![(1.0, 1.0)],
            constant: 1.0,
        };
        let s = find_roots(&p, 10.0).unwrap();
        let want = [PI, PI, 3.0 * PI, 3.0 * PI];
        assert_eq!(s.values.len(), 4);
        for (v, w) in s.values.iter().zip(want) {
            assert!((v - w).abs() < 1e-10);
        }
    }

    #[test]
    fn simple_roots() {
        let p = TrigPoly {
            terms: vec![(1.0, 1.0)],
            constant: 0.0,
        };
        let s = find_roots(&p, 5.0).unwrap();
        assert_eq!(s.values.len(), 2);
        assert!((s.values[0] - PI / 2.0).abs() < 1e-12);
        assert!(s.roots.iter().all(|r| r.multiplicity == 1));
    }

    #[test]
    fn triple_root() {
        // cos^3 t = (3 cos t + cos 3t) / 4
        let p = TrigPoly {
            terms: vec![(1.0, 0.75), (3.0, 0.25)],
            constant: 0.0,
        };
        let s = find_roots(&p, 2.0).unwrap();
        assert_eq!(s.roots.len(), 1);
        assert_eq!(s.roots[0].multiplicity, 3);
        assert!((s.roots[0].t - PI / 2.0).abs() < 1e-10);
    }

    #[test]
    fn empty_rejected() {
        let p = TrigPoly {
            terms: vec![],
            constant: 1.0,
        };
        assert_eq!(find_roots(&p, 1.0).unwrap_err(), RootError::Empty);
    }

    #[test]
    fn out_of_range_index() {
        let p = TrigPoly {
            terms: vec![(1.0, 1.0)],
            constant: -1.0,
        };
        let s = find_roots(&p, 1.0).unwrap();
        assert!(matches!(nu(&s, 5), Err(RootError::OutOfRange { .. })));
    }

    #[test]
    fn ceiling() {
        assert_eq!(epsilon_ceiling(&[PI / 2.0; 4]), 0.25);
        let c = epsilon_ceiling(&[0.9 * PI, 0.05 * PI, 0.05 * PI]);
        assert!((c - (1.0 / 1.8 - 0.5)).abs() < 1e-12);
    }
}
