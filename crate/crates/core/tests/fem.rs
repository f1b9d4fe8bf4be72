mod common;

use std::f64::consts::PI;

use common::random_polygon;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use steklov::fem::{steklov_spectrum, steklov_spectrum_extrapolated, triangulate, SteklovSolution};
use steklov::geometry::{build_polygon, rectangle, regular_polygon, BoundaryData, DihedralLabeling};

fn polygon(seed: u64, n: usize) -> BoundaryData {
    random_polygon(&mut ChaCha8Rng::seed_from_u64(seed), n)
}

/// Boundary L2 inner product of two traces, P1 on the closed boundary polyline.
fn boundary_inner(sol: &SteklovSolution, u: &[f64], v: &[f64]) -> f64 {
    let p = &sol.boundary_points;
    let m = p.len();
    (0..m)
        .map(|i| {
            let j = (i + 1) % m;
            let l = p[i].dist(&p[j]);
            l / 6.0 * (2.0 * u[i] * v[i] + u[i] * v[j] + u[j] * v[i] + 2.0 * u[j] * v[j])
        })
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn mesh_invariants(seed in any::<u64>(), n in 3usize..8, h in 0.02f64..0.2) {
        let d = polygon(seed, n);
        let poly = build_polygon(&d).unwrap();
        let mesh = triangulate(&poly, h).unwrap();
        prop_assert!((0..mesh.triangles.len()).all(|t| mesh.triangle_area(t) > 0.0));
        prop_assert!((mesh.boundary_length() - d.perimeter()).abs() < 1e-12);
        for v in poly.vertices() {
            prop_assert!(mesh.nodes.iter().any(|p| p.dist(v) < 1e-14));
        }
        prop_assert!(mesh.h <= h * (1.0 + 1e-12));
        for [a, b] in &mesh.boundary_edges {
            prop_assert!(mesh.nodes[*a].dist(&mesh.nodes[*b]) <= h * (1.0 + 1e-12));
        }
        let total: f64 = (0..mesh.triangles.len()).map(|t| mesh.triangle_area(t)).sum();
        prop_assert!((total - poly.area()).abs() < 1e-12);
    }

    #[test]
    fn spectrum_structure(seed in any::<u64>(), n in 3usize..8) {
        let sol = steklov_spectrum(&polygon(seed, n), 0.05, 6).unwrap();
        prop_assert!(sol.sigmas[0].abs() < 1e-8);
        prop_assert!(sol.sigmas.windows(2).all(|w| w[0] <= w[1]));
        for i in 0..sol.sigmas.len() {
            for j in 0..i {
                if sol.sigmas[i] - sol.sigmas[j] > 1e-6 * sol.sigmas[i] {
                    let (u, v) = (&sol.boundary_traces[i], &sol.boundary_traces[j]);
                    let c = boundary_inner(&sol, u, v);
                    let norm = (boundary_inner(&sol, u, u) * boundary_inner(&sol, v, v)).sqrt();
                    prop_assert!(c.abs() < 1e-8 * norm, "traces {i}, {j}: {c} vs {norm}");
                }
            }
        }
    }

    #[test]
    fn ritz_values_decrease_under_refinement(seed in any::<u64>(), n in 3usize..8) {
        let ex = steklov_spectrum_extrapolated(&polygon(seed, n), 0.1, 10).unwrap();
        for j in 1..=10 {
            let s: Vec<f64> = ex.levels.iter().map(|l| l.sigmas[j]).collect();
            prop_assert!(s[0] >= s[1] * (1.0 - 1e-12) && s[1] >= s[2] * (1.0 - 1e-12), "sigma_{j}: {s:?}");
        }
    }

    #[test]
    fn congruent_polygons_same_spectrum(seed in any::<u64>(), n in 3usize..7, lab in 0usize..14) {
        let d = polygon(seed, n);
        let labs = DihedralLabeling::all(n);
        let e = d.relabel(labs[lab % labs.len()]);
        let a = steklov_spectrum(&d, 0.08, 5).unwrap();
        let b = steklov_spectrum(&e, 0.08, 5).unwrap();
        for (x, y) in a.sigmas.iter().zip(&b.sigmas).skip(1) {
            prop_assert!((x - y).abs() < 1e-10 * x);
        }
    }

    #[test]
    fn scaling(seed in any::<u64>(), n in 3usize..7, c in 0.2f64..5.0) {
        let d = polygon(seed, n);
        let a = steklov_spectrum(&d, 0.08, 5).unwrap();
        let b = steklov_spectrum(&d.scaled(c), 0.08 * c, 5).unwrap();
        for (x, y) in a.sigmas.iter().zip(&b.sigmas).skip(1) {
            prop_assert!((x / c - y).abs() < 1e-9 * x / c);
        }
    }

    #[test]
    fn weinstock(seed in any::<u64>(), n in 3usize..8) {
        let d = polygon(seed, n);
        let sol = steklov_spectrum(&d, 0.03, 1).unwrap();
        prop_assert!(sol.sigmas[1] * d.perimeter() <= 2.0 * PI * 1.01);
    }
}

#[test]
fn square_low_modes() {
    let sol = steklov_spectrum(&rectangle(1.0, 1.0), 0.25, 5).unwrap();
    assert!(sol.sigmas[0].abs() < 1e-8);
    assert_eq!(sol.sigmas.len(), 6);
}

#[test]
fn weyl_law() {
    let d = regular_polygon(6, 1.0);
    let sol = steklov_spectrum(&d, 0.02, 40).unwrap();
    for m in 20..=40 {
        let r = sol.sigmas[m] * d.perimeter() / (PI * m as f64);
        assert!((r - 1.0).abs() < 0.1, "m = {m}: ratio {r}");
    }
}
