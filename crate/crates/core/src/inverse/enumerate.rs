use std::f64::consts::PI;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    admissibility, classify_angle, component_reorientations, invariant_vectors,
    inverse_c_preimages, obtuse_preimage, reduce_polygon, AngleClass, InverseError, Verdict,
};
use crate::bounds::best_angle_floor;
use crate::charpoly::{build_charpoly, c_of_angle, equal_charpoly, TrigPoly};
use crate::exact::{q_to_f64, ExactBoundaryData, Q};
use crate::geometry::{
    congruent, cross, dot, edge_split_solve, lex_cmp, quad_from_asa_perimeter,
    reconstruct_missing_angles, BoundaryData, DeformationFamily, EdgeSplitInput, EdgeSplitOutcome,
    PartialBoundaryData,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnumerationOptions {
    /// Charpoly agreement tolerance.
    pub tol: f64,
    /// `|c|` agreement tolerance for reconstructed angles.
    pub c_tol: f64,
    pub angle_tol: f64,
    /// Incommensurability tolerance, relative to the perimeter.
    pub admissibility_tol: f64,
    /// Candidates with a smaller angle are discarded.
    pub angle_floor: f64,
    /// Use the sign of `C` to forbid obtuse angles where `c > 0`.
    pub sign_refinement: bool,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            c_tol: 1e-7,
            angle_tol: super::ANGLE_TOL,
            admissibility_tol: 1e-9,
            angle_floor: 0.0,
            sign_refinement: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetVerdict {
    Finite,
    Continuum,
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateSet {
    pub cap: Option<usize>,
    pub candidates: Vec<BoundaryData>,
    pub verdict: SetVerdict,
    pub case: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<DeformationFamily>,
    pub notes: Vec<String>,
    pub configurations: usize,
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn cyclic_adjacent(i: usize, j: usize, n: usize) -> bool {
    (i + 1) % n == j || (j + 1) % n == i
}

/// Cardinality cap for a target with even vertices at `evens`, refined by the
/// count `b` of angles with `0 < c < 1` when given.
pub fn admissible_cap(n: usize, evens: &[usize], b: Option<usize>) -> usize {
    match evens.len() {
        0 => binom(n - b.unwrap_or(0), 3),
        1 => match b {
            Some(b) => binom(n - 1 - b, 2usize.saturating_sub(b)),
            None => binom(n - 1, 2),
        },
        2 => {
            if cyclic_adjacent(evens[0], evens[1], n) {
                2 * (n - 2)
            } else {
                4 * (n - 2)
            }
        }
        3 => {
            let adj = [(0, 1), (1, 2), (0, 2)]
                .iter()
                .filter(|(a, b)| cyclic_adjacent(evens[*a], evens[*b], n))
                .count();
            match adj {
                0 => 8,
                1 => 4,
                _ => 2,
            }
        }
        _ => 1,
    }
}

fn sign_refinement_applies(n: usize, evens: usize, b: usize) -> bool {
    match evens {
        0 => n >= 5,
        1 => n >= 6 || (n == 5 && b <= 1),
        _ => false,
    }
}

fn combinations(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(pool: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..pool.len() {
            cur.push(pool[i]);
            rec(pool, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(pool, k, 0, &mut cur, &mut out);
    out
}

/// Canonically labeled, mutually non-congruent, sorted.
fn dedupe(found: Vec<BoundaryData>) -> Vec<BoundaryData> {
    let mut out: Vec<BoundaryData> = Vec::new();
    for c in found {
        let c = c.canonical_labeling();
        let tol = 1e-7 * c.perimeter();
        if !out.iter().any(|o| congruent(o, &c, tol)) {
            out.push(c);
        }
    }
    out.sort_by(lex_cmp);
    out
}

fn accepts(cand: &BoundaryData, target_poly: &TrigPoly, opts: &EnumerationOptions) -> bool {
    cand.validate_with(1e-8).is_ok()
        && cand.min_angle() >= opts.angle_floor * (1.0 - 1e-12)
        && equal_charpoly(&build_charpoly(cand), target_poly, opts.tol)
}

/// Candidates sharing the target's charpoly. Lengths and `|c|` are fixed,
/// components may be reoriented, `n - 3` obtuse positions are chosen and the rest reconstructed.
pub fn enumerate_admissible_candidates(
    target: &BoundaryData,
    opts: &EnumerationOptions,
) -> Result<CandidateSet, InverseError> {
    target
        .validate()
        .map_err(|e| InverseError::Contract(format!("invalid target: {e}")))?;
    let rep = admissibility(target, opts.angle_tol, opts.admissibility_tol);
    if rep.admissible == Verdict::No {
        return Err(InverseError::NotAdmissible(rep.reasons.join("; ")));
    }
    let n = target.n();
    let classes = &rep.classes;
    let even: Vec<bool> = classes.iter().map(AngleClass::is_even).collect();
    let evens: Vec<usize> = (0..n).filter(|&i| even[i]).collect();
    if evens.len() > 3 {
        return Err(InverseError::Contract(format!(
            "{} even angles; a convex polygon has at most 3 non-obtuse angles",
            evens.len()
        )));
    }
    let iv = invariant_vectors(target);
    let positive: Vec<bool> = (0..n).map(|i| !even[i] && iv.c[i] > 0.0).collect();
    let b = positive.iter().filter(|p| **p).count();
    let refine = opts.sign_refinement && sign_refinement_applies(n, evens.len(), b);
    let target_poly = build_charpoly(target);
    let values: Vec<(f64, bool)> = iv.c_abs.iter().cloned().zip(positive.iter().cloned()).collect();

    let mut jobs: Vec<(Vec<f64>, Vec<(f64, bool)>, Vec<usize>)> = Vec::new();
    for (lengths, vals) in component_reorientations(&target.lengths, &values, &even) {
        let forced: Vec<usize> = if refine {
            (0..n).filter(|&i| vals[i].1).collect()
        } else {
            Vec::new()
        };
        let pool: Vec<usize> = (0..n).filter(|&i| !even[i] && !forced.contains(&i)).collect();
        let extra = 3usize.saturating_sub(evens.len() + forced.len());
        if evens.len() + forced.len() > 3 {
            continue;
        }
        for pick in combinations(&pool, extra) {
            let mut blanks: Vec<usize> = evens.iter().chain(&forced).chain(&pick).cloned().collect();
            blanks.sort_unstable();
            jobs.push((lengths.clone(), vals.clone(), blanks));
        }
    }
    let configurations = jobs.len();
    let found: Vec<BoundaryData> = jobs
        .par_iter()
        .filter_map(|(lengths, vals, blanks)| {
            let mut angles = Vec::with_capacity(n);
            for i in 0..n {
                if blanks.contains(&i) {
                    angles.push(None);
                } else {
                    let s = vals[i].0;
                    if !(s > 0.0 && s < 1.0) {
                        return None;
                    }
                    angles.push(Some(obtuse_preimage(s)));
                }
            }
            let cand = reconstruct_missing_angles(&PartialBoundaryData::new(lengths.clone(), angles)).ok()?;
            let c_ok = blanks.iter().all(|&i| {
                c_of_angle(cand.angles[i]).map(|c| (c.abs() - vals[i].0).abs() <= opts.c_tol).unwrap_or(false)
            });
            (c_ok && accepts(&cand, &target_poly, opts)).then_some(cand)
        })
        .collect();

    let mut notes = Vec::new();
    if refine {
        notes.push(format!("sign refinement applied with b = {b}"));
    }
    let (cap, verdict) = match rep.admissible {
        Verdict::Yes => (
            Some(admissible_cap(n, &evens, refine.then_some(b))),
            SetVerdict::Finite,
        ),
        _ => {
            notes.push("admissibility is indeterminate at this tolerance; no cap is certified".into());
            (None, SetVerdict::Indeterminate)
        }
    };
    Ok(CandidateSet {
        cap,
        candidates: dedupe(found),
        verdict,
        case: format!("admissible, {} even angle(s)", evens.len()),
        family: None,
        notes,
        configurations,
    })
}

/// One place an odd vertex can go: reduced edge `edge` is split by `count`
/// odd vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Curve {
    edge: usize,
    count: usize,
}

fn curve_layouts(m: usize, k: usize) -> Vec<Vec<Curve>> {
    let mut out = Vec::new();
    match k {
        1 => {
            for e in 0..m {
                out.push(vec![Curve { edge: e, count: 1 }]);
            }
        }
        2 => {
            for e in 0..m {
                out.push(vec![Curve { edge: e, count: 2 }]);
            }
            for p in combinations(&(0..m).collect::<Vec<_>>(), 2) {
                out.push(vec![Curve { edge: p[0], count: 1 }, Curve { edge: p[1], count: 1 }]);
            }
        }
        _ => {}
    }
    out
}

/// Full n-gon layout: angles, known lengths, and groups of unknown edges with
/// their known sums.
struct Layout {
    angles: Vec<f64>,
    lengths: Vec<Option<f64>>,
    groups: Vec<(Vec<usize>, f64)>,
}

fn build_layout(red_lengths: &[f64], red_angles: &[f64], curves: &[Curve], odd: &[f64]) -> Layout {
    let mut angles = Vec::new();
    let mut lengths = Vec::new();
    let mut groups = Vec::new();
    let mut odd_iter = odd.iter();
    for (j, (&l, &a)) in red_lengths.iter().zip(red_angles).enumerate() {
        let count = curves.iter().find(|c| c.edge == j).map(|c| c.count).unwrap_or(0);
        if count == 0 {
            lengths.push(Some(l));
        } else {
            let mut idx = Vec::new();
            for s in 0..=count {
                idx.push(lengths.len());
                lengths.push(None);
                if s < count {
                    angles.push(*odd_iter.next().expect("one odd value per odd vertex"));
                }
            }
            groups.push((idx, l));
        }
        angles.push(a);
    }
    Layout { angles, lengths, groups }
}

enum Closed {
    Unique(BoundaryData),
    Family,
    Fail,
}

fn close_layout(lay: &Layout) -> Closed {
    let n = lay.angles.len();
    let dummy = BoundaryData::from_raw(vec![1.0; n], lay.angles.clone());
    let u = dummy.directions();
    let (mut cx, mut cy) = (0.0, 0.0);
    for (i, l) in lay.lengths.iter().enumerate() {
        if let Some(l) = l {
            cx += l * u[i].0;
            cy += l * u[i].1;
        }
    }
    let total: f64 = lay.lengths.iter().flatten().sum::<f64>() + lay.groups.iter().map(|g| g.1).sum::<f64>();
    let fill = |vals: &[(usize, f64)]| {
        let mut l: Vec<f64> = lay.lengths.iter().map(|x| x.unwrap_or(0.0)).collect();
        for &(i, v) in vals {
            l[i] = v;
        }
        BoundaryData::from_raw(l, lay.angles.clone())
    };
    match lay.groups.as_slice() {
        [(g, s)] if g.len() == 2 => {
            // a u0 + (s - a) u1 = -c
            let (e0, e1) = (g[0], g[1]);
            let w = (u[e0].0 - u[e1].0, u[e0].1 - u[e1].1);
            let r = (-cx - s * u[e1].0, -cy - s * u[e1].1);
            let a = dot(r, w) / dot(w, w);
            if ((r.0 - a * w.0).hypot(r.1 - a * w.1)) > 1e-9 * total {
                return Closed::Fail;
            }
            Closed::Unique(fill(&[(e0, a), (e1, s - a)]))
        }
        [(g, s)] if g.len() == 3 => {
            if n == 4 {
                let known = (0..4).find(|i| lay.lengths[*i].is_some()).expect("one straight edge");
                let angles: [f64; 4] = std::array::from_fn(|i| lay.angles[i]);
                return match quad_from_asa_perimeter(angles, known, lay.lengths[known].unwrap(), total) {
                    Ok(d) => Closed::Unique(d),
                    Err(_) => Closed::Fail,
                };
            }
            let (e0, e1, e2) = (g[0], g[1], g[2]);
            let w0 = (u[e0].0 - u[e2].0, u[e0].1 - u[e2].1);
            let w1 = (u[e1].0 - u[e2].0, u[e1].1 - u[e2].1);
            let r = (-cx - s * u[e2].0, -cy - s * u[e2].1);
            let det = cross(w0, w1);
            if det.abs() < 1e-14 {
                return Closed::Fail;
            }
            let a = cross(r, w1) / det;
            let b = cross(w0, r) / det;
            Closed::Unique(fill(&[(e0, a), (e1, b), (e2, s - a - b)]))
        }
        [(g0, h), (g1, k)] => {
            // rotate so the first odd vertex sits at 0
            let off = g0[0];
            let p = (g1[0] + n - off) % n;
            let rot = |v: &[f64]| -> Vec<f64> { (0..n).map(|i| v[(i + off) % n]).collect() };
            let input = EdgeSplitInput {
                angles: rot(&lay.angles),
                lengths: rot(&lay.lengths.iter().map(|x| x.unwrap_or(0.0)).collect::<Vec<_>>()),
                h: *h,
                k: *k,
                hint: None,
            };
            let unrot = |d: &BoundaryData| {
                let mut l = vec![0.0; n];
                let mut a = vec![0.0; n];
                for i in 0..n {
                    l[(i + off) % n] = d.lengths[i];
                    a[(i + off) % n] = d.angles[i];
                }
                BoundaryData::from_raw(l, a)
            };
            match edge_split_solve(&input, p) {
                Ok(EdgeSplitOutcome::Unique(d)) => Closed::Unique(unrot(&d)),
                Ok(EdgeSplitOutcome::Family(_)) => Closed::Family,
                Err(_) => Closed::Fail,
            }
        }
        _ => Closed::Fail,
    }
}

/// Values for one reduced vertex: obtuse preimage (if any) and non-obtuse ones.
fn reduced_vertex_choices(s: f64, is_even: bool, floor: f64) -> (Option<f64>, Vec<f64>) {
    if is_even {
        let ev = inverse_c_preimages(1.0, floor.max(1e-6)).unwrap_or_default();
        return (None, ev.into_iter().filter(|a| *a <= PI / 2.0 + 1e-12).collect());
    }
    let obtuse = (s > 0.0 && s < 1.0).then(|| obtuse_preimage(s));
    let acute = inverse_c_preimages(s.clamp(0.0, 1.0), floor.max(1e-6))
        .unwrap_or_default()
        .into_iter()
        .filter(|a| *a <= PI / 2.0 + 1e-12)
        .collect();
    (obtuse, acute)
}

/// Odd angles `pi/(2j+1)` not below `floor`.
fn odd_values(floor: f64) -> Vec<f64> {
    let floor = floor.max(1e-6);
    (1..)
        .map(|j| PI / (2 * j + 1) as f64)
        .take_while(|a| *a >= floor)
        .collect()
}

/// Assignments of reduced angles and odd angles with the right angle sum and
/// at most three non-obtuse angles overall.
fn angle_assignments(
    choices: &[(Option<f64>, Vec<f64>)],
    k: usize,
    odd: &[f64],
    target_sum: f64,
    tol: f64,
) -> Vec<(Vec<f64>, Vec<f64>)> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(choices.len());
    #[allow(clippy::too_many_arguments)]
    fn rec(
        choices: &[(Option<f64>, Vec<f64>)],
        budget: usize,
        k: usize,
        odd: &[f64],
        rest: f64,
        tol: f64,
        cur: &mut Vec<f64>,
        out: &mut Vec<(Vec<f64>, Vec<f64>)>,
    ) {
        let i = cur.len();
        if i == choices.len() {
            let is_odd = |a: f64| {
                let c = classify_angle(a, tol);
                c.is_odd() && odd.last().map_or(false, |lo| a >= lo * (1.0 - 1e-12))
            };
            match k {
                1 => {
                    if is_odd(rest) {
                        out.push((cur.clone(), vec![PI / (PI / rest).round()]));
                    }
                }
                2 => {
                    for &o in odd {
                        let r = rest - o;
                        if r > 0.0 && is_odd(r) {
                            out.push((cur.clone(), vec![o, PI / (PI / r).round()]));
                        }
                    }
                }
                _ => {}
            }
            return;
        }
        let (obtuse, acute) = &choices[i];
        if let Some(a) = obtuse {
            cur.push(*a);
            rec(choices, budget, k, odd, rest - a, tol, cur, out);
            cur.pop();
        }
        if budget > 0 {
            for &a in acute {
                if a < rest {
                    cur.push(a);
                    rec(choices, budget - 1, k, odd, rest - a, tol, cur, out);
                    cur.pop();
                }
            }
        }
    }
    rec(choices, 3 - k, k, odd, target_sum, tol, &mut cur, &mut out);
    out
}

/// Candidates sharing the target's charpoly among weakly edge-admissible
/// n-gons, with the angle floor implied by `sigma_k`.
pub fn enumerate_weak_candidates(
    target: &BoundaryData,
    sigma_k: f64,
    k: u32,
    opts: &EnumerationOptions,
) -> Result<CandidateSet, InverseError> {
    target
        .validate()
        .map_err(|e| InverseError::Contract(format!("invalid target: {e}")))?;
    if !(sigma_k > 0.0) || k == 0 {
        return Err(InverseError::Contract("need sigma_k > 0 and k >= 1 for the angle floor".into()));
    }
    let n = target.n();
    let l_total = target.perimeter();
    let floor = best_angle_floor(n, sigma_k, l_total, k).max(opts.angle_floor);
    let opts = EnumerationOptions { angle_floor: floor, ..*opts };
    let rep = admissibility(target, opts.angle_tol, opts.admissibility_tol);
    if rep.weakly_edge_admissible == Verdict::No {
        return Err(InverseError::NotWeaklyEdgeAdmissible(rep.reasons.join("; ")));
    }
    let indeterminate = rep.weakly_edge_admissible == Verdict::Indeterminate;
    let odd: Vec<usize> = (0..n).filter(|&i| rep.classes[i].is_odd()).collect();
    let floor_note = format!("angle floor {floor:e} from sigma_{k} = {sigma_k}");

    if odd.is_empty() {
        let mut set = enumerate_admissible_candidates(target, &opts)?;
        set.notes.push(floor_note);
        return Ok(set);
    }
    if odd.len() == 3 {
        return Ok(CandidateSet {
            cap: None,
            candidates: vec![target.canonical_labeling()],
            verdict: if indeterminate { SetVerdict::Indeterminate } else { SetVerdict::Finite },
            case: "equilateral triangle".into(),
            family: None,
            notes: vec!["the perimeter fixes the equilateral triangle".into()],
            configurations: 1,
        });
    }
    if odd.len() == 2 && !cyclic_adjacent(odd[0], odd[1], n) {
        let off = odd[0];
        let rotated = target.relabel(crate::geometry::DihedralLabeling { offset: off, reflected: false });
        let p = (odd[1] + n - off) % n;
        if let Ok(EdgeSplitOutcome::Family(f)) = edge_split_solve(&EdgeSplitInput::from_data(&rotated, p), p) {
            return Ok(CandidateSet {
                cap: None,
                candidates: vec![rotated],
                verdict: SetVerdict::Continuum,
                case: "two non-adjacent odd angles with equal turning on both sides".into(),
                family: Some(f),
                notes: vec![
                    "not finitely determined: the edge lengths deform continuously with the charpoly fixed".into(),
                ],
                configurations: 1,
            });
        }
    }

    let target_poly = build_charpoly(target);
    let red = reduce_polygon(target, opts.angle_tol);
    let m = red.edges.len();
    let kodd = odd.len();
    let red_lengths = red.lengths();
    let red_classes: Vec<AngleClass> = red.angles.iter().map(|a| classify_angle(*a, opts.angle_tol)).collect();
    let red_even: Vec<bool> = red_classes.iter().map(AngleClass::is_even).collect();
    let red_cabs: Vec<f64> = red.angles.iter().map(|a| c_of_angle(*a).map(f64::abs).unwrap_or(f64::NAN)).collect();
    let odd_list = odd_values(floor);
    let target_sum = (n as f64 - 2.0) * PI;

    let mut jobs: Vec<(Vec<f64>, Vec<f64>, Vec<f64>, Vec<Curve>)> = Vec::new();
    let mut assignment_sets: Vec<Vec<f64>> = Vec::new();
    for (lengths, cabs) in component_reorientations(&red_lengths, &red_cabs, &red_even) {
        let choices: Vec<(Option<f64>, Vec<f64>)> = (0..m)
            .map(|i| reduced_vertex_choices(cabs[i], red_even[i], floor))
            .collect();
        let assigns = angle_assignments(&choices, kodd, &odd_list, target_sum, 1e-9 * n as f64);
        for (ra, oa) in assigns {
            if !assignment_sets.iter().any(|s| s.iter().zip(&ra).all(|(a, b)| (a - b).abs() < 1e-9)) {
                assignment_sets.push(ra.clone());
            }
            for layout in curve_layouts(m, kodd) {
                jobs.push((lengths.clone(), ra.clone(), oa.clone(), layout));
            }
        }
    }
    let configurations = jobs.len();
    let results: Vec<(Option<BoundaryData>, bool)> = jobs
        .par_iter()
        .map(|(lengths, ra, oa, layout)| {
            let lay = build_layout(lengths, ra, layout, oa);
            match close_layout(&lay) {
                Closed::Unique(d) => (accepts(&d, &target_poly, &opts).then_some(d), false),
                Closed::Family => (None, true),
                Closed::Fail => (None, false),
            }
        })
        .collect();
    let continuum_hits = results.iter().filter(|r| r.1).count();
    let found: Vec<BoundaryData> = results.into_iter().filter_map(|r| r.0).collect();

    let mut notes = vec![floor_note];
    if assignment_sets.len() > 1 {
        notes.push(format!(
            "reduced angles are not uniquely determined: {} assignments satisfy the angle sum",
            assignment_sets.len()
        ));
    }
    if continuum_hits > 0 {
        notes.push(format!(
            "{continuum_hits} configuration(s) with equal turning sums: continuum, excluded by hypothesis"
        ));
    }
    let case = match (kodd, odd.len() == 2 && !cyclic_adjacent(odd[0], odd[1], n)) {
        (1, _) => "one odd angle",
        (_, false) => "two adjacent odd angles",
        _ => "two non-adjacent odd angles",
    };
    Ok(CandidateSet {
        cap: None,
        candidates: dedupe(found),
        verdict: if indeterminate { SetVerdict::Indeterminate } else { SetVerdict::Finite },
        case: case.into(),
        family: None,
        notes,
        configurations,
    })
}

/// Rational multiples of pi for each candidate angle, found from the
/// `|c|`-preimage relation with the target's rational angles. `None` when an
/// angle has no such form or the exact angle sum fails.
pub fn exact_candidate_angles(cand: &BoundaryData, target: &ExactBoundaryData) -> Option<Vec<Q>> {
    let two = Q::from_integer(BigInt::from(2));
    let mut refs: Vec<Q> = target.angles_pi.iter().map(|q| q.recip() / &two).collect();
    refs.push(Q::from_integer(BigInt::from(0)));
    refs.push(Q::new(BigInt::from(1), BigInt::from(2)));
    let mut out = Vec::with_capacity(cand.n());
    for &a in &cand.angles {
        let x = PI / (2.0 * a);
        let mut hit = None;
        'search: for y in &refs {
            let yf = q_to_f64(y);
            for sgn in [1.0, -1.0] {
                let j = (x - sgn * yf).round();
                if (x - (j + sgn * yf)).abs() < 1e-9 * x.max(1.0) {
                    let xq = Q::from_integer(BigInt::from(j as i64))
                        + if sgn > 0.0 { y.clone() } else { -y.clone() };
                    if xq > Q::new(BigInt::from(1), BigInt::from(4)) {
                        hit = Some(xq.recip() / &two);
                        break 'search;
                    }
                }
            }
        }
        out.push(hit?);
    }
    let sum = out.iter().fold(Q::from_integer(BigInt::from(0)), |acc, q| acc + q);
    (sum == Q::from_integer(BigInt::from(cand.n() as i64 - 2))).then_some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caps() {
        assert_eq!(admissible_cap(6, &[], None), 20);
        assert_eq!(admissible_cap(6, &[2], None), 10);
        assert_eq!(admissible_cap(6, &[1, 2], None), 8);
        assert_eq!(admissible_cap(6, &[1, 4], None), 16);
        assert_eq!(admissible_cap(6, &[0, 1, 2], None), 2);
        assert_eq!(admissible_cap(6, &[0, 1, 3], None), 4);
        assert_eq!(admissible_cap(6, &[0, 2, 4], None), 8);
        assert_eq!(admissible_cap(6, &[], Some(1)), 10);
    }

    #[test]
    fn combos() {
        assert_eq!(combinations(&[0, 1, 2, 3], 2).len(), 6);
        assert_eq!(combinations(&[0, 1], 0), vec![Vec::<usize>::new()]);
    }
}
