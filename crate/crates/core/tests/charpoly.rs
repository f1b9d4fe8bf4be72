mod common;

use std::f64::consts::PI;

use common::{brute_charpoly_eval, brute_charpoly_terms, random_polygon};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use steklov::charpoly::{
    build_charpoly, build_charpoly_exact, charpoly_from_parts, equal_charpoly, reduced_charpoly_check,
    smooth_charpoly,
};
use steklov::exact::{parse_rational, ExactBoundaryData};
use steklov::geometry::{congruent, triangle_angles, BoundaryData, DihedralLabeling};

fn polygon(seed: u64, n: usize) -> BoundaryData {
    random_polygon(&mut ChaCha8Rng::seed_from_u64(seed), n)
}

proptest! {
    #[test]
    fn matches_brute_force_expansion(seed in any::<u64>(), n in 3usize..9, t in 0.0f64..40.0) {
        let d = polygon(seed, n);
        let p = build_charpoly(&d);
        let direct = brute_charpoly_eval(&d.lengths, &d.angles, t);
        prop_assert!((p.eval(t) - direct).abs() < 1e-10 * (1u64 << n) as f64);
    }

    #[test]
    fn merged_terms_match_oracle(seed in any::<u64>(), n in 3usize..9) {
        let d = polygon(seed, n);
        let p = build_charpoly(&d);
        let (terms, constant) = brute_charpoly_terms(&d.lengths, &d.angles, 1e-9 * d.perimeter());
        let oracle = steklov::charpoly::TrigPoly { terms, constant };
        prop_assert!(equal_charpoly(&p, &oracle, 1e-10));
    }

    #[test]
    fn value_at_zero_consistent(seed in any::<u64>(), n in 3usize..9) {
        let d = polygon(seed, n);
        let p = build_charpoly(&d);
        let direct = brute_charpoly_eval(&d.lengths, &d.angles, 0.0);
        prop_assert!((p.eval(0.0) - direct).abs() <= 1e-12 * direct.abs().max(1.0) * (1u64 << n) as f64);
    }

    #[test]
    fn top_term_is_perimeter(seed in any::<u64>(), n in 3usize..9) {
        let d = polygon(seed, n);
        let p = build_charpoly(&d);
        let (f, a) = *p.terms.last().unwrap();
        prop_assert_eq!(a, 1.0);
        prop_assert!((f - d.perimeter()).abs() < 1e-12);
    }

    #[test]
    fn even_in_t(seed in any::<u64>(), n in 3usize..8, t in 0.0f64..50.0) {
        let p = build_charpoly(&polygon(seed, n));
        prop_assert_eq!(p.eval(t), p.eval(-t));
    }

    #[test]
    fn dihedral_invariance(seed in any::<u64>(), n in 3usize..8) {
        let d = polygon(seed, n);
        let p = build_charpoly(&d);
        for lab in DihedralLabeling::all(n) {
            prop_assert!(equal_charpoly(&p, &build_charpoly(&d.relabel(lab)), 1e-12));
        }
    }

    #[test]
    fn scale_covariance(seed in any::<u64>(), n in 3usize..8, c in 0.1f64..10.0) {
        let d = polygon(seed, n);
        let p = build_charpoly(&d);
        let q = build_charpoly(&d.scaled(c));
        prop_assert!(equal_charpoly(&p.scale_frequencies(c), &q, 1e-11));
        prop_assert_eq!(p.terms.len(), q.terms.len());
    }
}

#[test]
fn parallelograms_share_charpoly() {
    let a = [PI / 5.0, 4.0 * PI / 5.0, PI / 5.0, 4.0 * PI / 5.0];
    let p1 = BoundaryData::new(vec![2.0, 1.0, 2.0, 1.0], a.to_vec()).unwrap();
    let p2 = BoundaryData::new(vec![1.5, 1.5, 1.5, 1.5], a.to_vec()).unwrap();
    assert!(equal_charpoly(&build_charpoly(&p1), &build_charpoly(&p2), 1e-12));
    assert!(!congruent(&p1, &p2, 1e-6));
}

#[test]
fn exact_and_float_agree() {
    let q = |s: &str| parse_rational(s).unwrap();
    for (l, a) in [
        (vec!["1", "1", "1"], vec!["1/3", "1/3", "1/3"]),
        (vec!["2", "1", "2", "1"], vec!["1/2", "1/2", "1/2", "1/2"]),
        (vec!["1", "1", "1", "1", "1", "1"], vec!["2/3", "2/3", "2/3", "2/3", "2/3", "2/3"]),
    ] {
        let e = ExactBoundaryData {
            lengths: l.into_iter().map(q).collect(),
            angles_pi: a.into_iter().map(q).collect(),
        };
        let exact = build_charpoly_exact(&e).to_float();
        assert!(equal_charpoly(&exact, &build_charpoly(&e.to_float()), 1e-12));
    }
}

#[test]
fn equilateral_matches_closed_form() {
    // cos(l t) + (-1)^(m+1) with pi/3 = pi/(2m+1), m = 1
    let p = charpoly_from_parts(&[1.0; 3], &[PI / 3.0; 3]);
    for i in 0..50 {
        let t = i as f64 * 0.37;
        assert!((p.eval(t) - ((3.0 * t).cos() + 1.0)).abs() < 1e-12);
    }
    let s = smooth_charpoly(3.0).unwrap();
    assert!((s.eval(1.0) - (3.0f64.cos() - 1.0)).abs() < 1e-15);
}

#[test]
fn thirty_sixty_ninety_reduced_sign_flip() {
    let l = [3f64.sqrt(), 2.0, 1.0];
    let a = triangle_angles(l).unwrap();
    let d = BoundaryData::new(l.to_vec(), a.to_vec()).unwrap();
    let chk = reduced_charpoly_check(&d).unwrap();
    assert!(chk.matches);
    assert!(chk.constant_sign_flip);
}
