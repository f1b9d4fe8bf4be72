mod common;

use std::f64::consts::PI;

use common::{admissible_target, random_polygon, same_shape};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use steklov::charpoly::{build_charpoly, equal_charpoly};
use steklov::exact::{decimal_rational, parse_rational, ExactBoundaryData, Q};
use steklov::geometry::BoundaryData;
use steklov::inverse::{
    admissible_cap, classify_angle, classify_angle_exact, enumerate_admissible_candidates,
    exact_candidate_angles, exceptional_components, invariant_vectors, reduce_polygon,
    rational_angle_transfer, s_function, AngleKind, EnumerationOptions, ANGLE_TOL,
};
use steklov::sampling::{random_angles, random_polygon_with_angles};

/// Random polygon with the given angles prescribed at the given vertices.
fn with_fixed(seed: u64, n: usize, fixed: &[(usize, f64)]) -> Option<BoundaryData> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = random_angles(&mut rng, n, fixed, 0.1)?;
    random_polygon_with_angles(&mut rng, &a, 0.02)
}

fn special_angles(seed: u64, n: usize, count: usize) -> Vec<(usize, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut pos: Vec<usize> = (0..n).collect();
    for k in 0..count {
        let j = rng.gen_range(k..n);
        pos.swap(k, j);
    }
    // pi/2, pi/3, pi/4, pi/5, pi/6
    pos[..count].iter().map(|&i| (i, PI / rng.gen_range(2..=6) as f64)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn reduction_keeps_perimeter(seed in any::<u64>(), n in 3usize..9, count in 0usize..3) {
        let fixed = special_angles(seed, n, count.min(n - 1));
        let d = with_fixed(seed, n, &fixed);
        prop_assume!(d.is_some());
        let d = d.unwrap();
        let red = reduce_polygon(&d, ANGLE_TOL);
        prop_assert!((red.perimeter() - d.perimeter()).abs() <= 1e-12 * d.perimeter());
        let odd: Vec<usize> = (0..n).filter(|&i| classify_angle(d.angles[i], ANGLE_TOL).is_odd()).collect();
        prop_assert_eq!(&red.removed, &odd);
        let curved = red.edges.iter().filter(|e| e.curved).count();
        prop_assert_eq!(curved > 0, !odd.is_empty());
        for e in &red.edges {
            prop_assert_eq!(e.curved, e.edges.len() > 1 || red.smooth_domain);
        }
        prop_assert_eq!(red.edges.iter().map(|e| e.edges.len()).sum::<usize>(), n);
    }

    #[test]
    fn invariant_entries_in_range(seed in any::<u64>(), n in 3usize..9) {
        let d = random_polygon(&mut ChaCha8Rng::seed_from_u64(seed), n);
        let iv = invariant_vectors(&d);
        for (c, a) in iv.c.iter().zip(&iv.c_abs) {
            prop_assert!((-1.0..=1.0).contains(c));
            prop_assert_eq!(c.abs(), *a);
        }
    }

    #[test]
    fn components_round_trip(seed in any::<u64>(), n in 3usize..9, count in 1usize..4) {
        let count = count.min(n - 1);
        let fixed: Vec<(usize, f64)> = special_angles(seed, n, count)
            .into_iter()
            .map(|(i, _)| (i, PI / 2.0 / (1 + (seed as usize + i) % 3) as f64))
            .collect();
        let d = with_fixed(seed, n, &fixed);
        prop_assume!(d.is_some());
        let d = d.unwrap();
        let comps = exceptional_components(&d, ANGLE_TOL).unwrap();
        let iv = invariant_vectors(&d);
        let mut lengths = Vec::new();
        let mut c = Vec::new();
        for comp in &comps {
            prop_assert!(classify_angle(d.angles[comp.start_vertex], ANGLE_TOL).is_even());
            prop_assert!(classify_angle(d.angles[comp.end_vertex], ANGLE_TOL).is_even());
            lengths.extend_from_slice(&comp.lengths);
            c.extend_from_slice(&comp.c);
            c.push(iv.c[comp.end_vertex]);
            let inv = comp.inverse();
            prop_assert_eq!(&inv.inverse(), comp);
            let mut rl = comp.lengths.clone();
            rl.reverse();
            prop_assert_eq!(inv.lengths, rl);
        }
        // component lengths start after the first even vertex
        let s = comps[0].start_vertex;
        let want_l: Vec<f64> = (1..=n).map(|k| d.lengths[(s + k) % n]).collect();
        let want_c: Vec<f64> = (1..=n).map(|k| iv.c[(s + k) % n]).collect();
        prop_assert_eq!(lengths, want_l);
        prop_assert_eq!(c, want_c);
    }

    #[test]
    fn enumeration_closed_under_charpoly(seed in any::<u64>(), n in 4usize..7, e in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = admissible_target(&mut rng, n, e.min(n - 1), false);
        prop_assume!(t.is_some());
        let (d, evens) = t.unwrap();
        let opts = EnumerationOptions::default();
        let set = enumerate_admissible_candidates(&d, &opts).unwrap();
        let target = build_charpoly(&d);
        prop_assert!(set.candidates.len() <= admissible_cap(n, &evens, None));
        prop_assert!(set.candidates.iter().any(|c| same_shape(c, &d, 1e-7)));
        for c in &set.candidates {
            prop_assert!(equal_charpoly(&build_charpoly(c), &target, opts.tol));
        }
    }
}

#[test]
fn s_function_exceeds_two_thirds_pi() {
    // S(0) = 2 pi / 3 and S' has numerator 2 (x - 1)(x - 2) > 0 on [0, 1)
    assert!((s_function(0.0) - 2.0 * PI / 3.0).abs() < 1e-15);
    for i in 1..=100_000 {
        let x = (2.0 / 3.0) * i as f64 / 100_000.0;
        assert!(s_function(x) > 2.0 * PI / 3.0, "S({x}) = {}", s_function(x));
        assert!(2.0 * (x - 1.0) * (x - 2.0) > 0.0);
    }
    assert!((s_function(2.0 / 3.0) - 14.0 * PI / 15.0).abs() < 1e-14);
}

#[test]
fn classification_parity() {
    for k in 2..40u32 {
        let c = classify_angle(PI / k as f64, ANGLE_TOL);
        let e = classify_angle_exact(&Q::new(1.into(), (k as i64).into()));
        assert_eq!(c, e);
        let (kind, idx) = if k % 2 == 1 { (AngleKind::Odd((k - 1) / 2), (k - 1) / 2) } else { (AngleKind::Even(k / 2), k / 2) };
        assert_eq!(c.kind, kind);
        assert_eq!(c.parity, if idx % 2 == 0 { 1 } else { -1 });
    }
    assert_eq!(classify_angle(2.0, ANGLE_TOL).kind, AngleKind::Generic);
    assert_eq!(classify_angle_exact(&parse_rational("2/5").unwrap()).kind, AngleKind::Generic);
}

#[test]
fn rational_transfer_same_c() {
    let q = parse_rational("3/7").unwrap();
    let c = |q: &Q| (PI / (2.0 * steklov::exact::q_to_f64(q))).cos().abs();
    for k in 1..5 {
        for r in rational_angle_transfer(&q, k) {
            assert!((c(&r) - c(&q)).abs() < 1e-12);
        }
    }
}

#[test]
fn rational_angles_propagate() {
    // lengths solved from closure
    let fracs = ["7/10", "3/5", "4/5", "3/5", "3/10"];
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let angles: Vec<f64> = fracs.iter().map(|f| steklov::exact::q_to_f64(&parse_rational(f).unwrap()) * PI).collect();
    let mut checked = 0;
    for _ in 0..20 {
        let Some(d) = random_polygon_with_angles(&mut rng, &angles, 0.05) else { continue };
        let exact = ExactBoundaryData {
            lengths: d.lengths.iter().map(|l| decimal_rational(*l)).collect(),
            angles_pi: fracs.iter().map(|f| parse_rational(f).unwrap()).collect(),
        };
        let Ok(set) = enumerate_admissible_candidates(&d, &EnumerationOptions::default()) else { continue };
        for c in &set.candidates {
            assert!(exact_candidate_angles(c, &exact).is_some(), "candidate {c:?}");
        }
        checked += 1;
    }
    assert!(checked > 0);
}
