use std::f64::consts::PI;

use proptest::prelude::*;
use steklov::bounds::{
    angle_floor_optimized, angle_lower_bound, bound_convex_ngon, bound_isosceles_even, bound_passage,
    bound_polar_rectangle, bound_rectangle, bound_thin_ngon, bound_triangle_min_angle, c_n_for_delta,
    convex_ngon_constants, delta_sup, BoundResult, PassageShape, PolarRectangle,
};

fn value(b: &BoundResult) -> f64 {
    assert!(b.hypotheses_ok, "{}", b.hypothesis_report);
    let v = b.value.unwrap();
    assert!(v >= 0.0);
    v
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs())
}

proptest! {
    #[test]
    fn rectangle_homogeneous(ell in 0.1f64..10.0, w in 0.01f64..5.0, c in 0.1f64..10.0, k in 1u32..6) {
        prop_assert!(close(value(&bound_rectangle(c * ell, c * w, k)), value(&bound_rectangle(ell, w, k)) / c));
    }

    #[test]
    fn polar_rectangle_homogeneous(r1 in 0.0f64..5.0, dr in 0.01f64..5.0, alpha in 0.01f64..6.0, c in 0.1f64..10.0, k in 1u32..6) {
        let a = PolarRectangle::new(r1, r1 + dr, alpha).unwrap();
        let b = PolarRectangle::new(c * r1, c * (r1 + dr), alpha).unwrap();
        prop_assert!(close(value(&bound_polar_rectangle(&b, k)), value(&bound_polar_rectangle(&a, k)) / c));
    }

    #[test]
    fn passages_homogeneous(w in 0.01f64..1.0, extra in 0.01f64..10.0, c in 0.1f64..10.0, k in 1u32..6) {
        let ell = 3.0 * w + extra;
        for (s, t) in [
            (PassageShape::Quad { ell, w }, PassageShape::Quad { ell: c * ell, w: c * w }),
            (PassageShape::Tri { ell, w }, PassageShape::Tri { ell: c * ell, w: c * w }),
        ] {
            prop_assert!(close(value(&bound_passage(t, k)), value(&bound_passage(s, k)) / c));
        }
    }

    #[test]
    fn thin_ngon_homogeneous(n in 3usize..12, w in 0.001f64..0.1, extra in 0.01f64..5.0, c in 0.1f64..10.0, k in 1u32..6) {
        let ell = 3.0 * (n as f64 - 1.0) * w + extra;
        prop_assert!(close(value(&bound_thin_ngon(c * ell, c * w, n, k)), value(&bound_thin_ngon(ell, w, n, k)) / c));
    }

    #[test]
    fn angle_bounds_homogeneous(alpha in 0.001f64..1.0, l in 0.1f64..10.0, c in 0.1f64..10.0, n in 3usize..12, k in 1u32..6) {
        prop_assert!(close(value(&bound_triangle_min_angle(alpha, c * l, k)), value(&bound_triangle_min_angle(alpha, l, k)) / c));
        let a = alpha * delta_sup(n) * 0.99;
        prop_assert!(close(value(&bound_convex_ngon(n, a, c * l, k)), value(&bound_convex_ngon(n, a, l, k)) / c));
    }

    #[test]
    fn isosceles_sharp_below_simplified(alpha in 1e-6f64..(PI / 3.0), k in 1u32..8) {
        let b = bound_isosceles_even(alpha, k);
        let k2 = (k as f64).powi(2);
        prop_assert!(value(&b.sharp) <= 6.0 * PI * PI * k2 * alpha * (1.0 + 1e-12));
        prop_assert!(close(value(&b.simplified), 6.0 * PI * PI * k2 * alpha));
    }

    #[test]
    fn convex_ngon_round_trip(n in 3usize..13, frac in 1e-6f64..0.999, l in 0.1f64..10.0, k in 1u32..6) {
        let c = convex_ngon_constants(n);
        let alpha = frac * c.delta_n;
        let sigma = value(&bound_convex_ngon(n, alpha, l, k));
        prop_assert!((angle_lower_bound(n, sigma, l, k) - alpha).abs() <= 1e-14 * alpha.max(1e-300) + 1e-300);
    }

    #[test]
    fn optimized_floor_not_worse(n in 3usize..13, sigma in 0.01f64..1e30, l in 0.1f64..10.0, k in 1u32..6) {
        let fixed = angle_lower_bound(n, sigma, l, k);
        let opt = angle_floor_optimized(n, sigma, l, k);
        prop_assert!(opt >= fixed * (1.0 - 1e-12));
        prop_assert!(opt < delta_sup(n));
    }
}

#[test]
fn huge_sigma_saturates() {
    for n in 3..=12 {
        assert_eq!(angle_lower_bound(n, 1e300, 1.0, 1), convex_ngon_constants(n).delta_n);
    }
}

#[test]
fn constants_strictly_inside() {
    let mut prev = 0.0;
    for n in 3..=12 {
        let c = convex_ngon_constants(n);
        assert!(c.delta_n < delta_sup(n) && delta_sup(n) - c.delta_n <= 1e-12);
        assert!(c.c_n > prev);
        prev = c.c_n;
    }
}

#[test]
fn c_n_at_zero_delta() {
    // gap 1/2: C = 4 (n-1)^2 pi^3 / 0.98
    for n in 3..=12 {
        let want = 4.0 * ((n - 1) as f64).powi(2) * PI.powi(3) / 0.98;
        assert!(close(c_n_for_delta(n, 0.0), want));
    }
}

#[test]
fn hypotheses_reported() {
    assert!(!bound_rectangle(0.0, 1.0, 1).hypotheses_ok);
    assert!(!bound_passage(PassageShape::Quad { ell: 1.0, w: 0.5 }, 1).hypotheses_ok);
    assert!(!bound_convex_ngon(5, 0.5, 1.0, 1).hypotheses_ok);
    assert!(!bound_triangle_min_angle(1.2, 1.0, 1).hypotheses_ok);
    assert!(!bound_isosceles_even(1.2, 1).sharp.hypotheses_ok);
}
