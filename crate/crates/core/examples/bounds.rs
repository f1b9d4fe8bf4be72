//! Eigenvalue bounds: the constants table, bounds for a few shapes, and the
//! minimal-angle floor implied by a known eigenvalue.

use std::f64::consts::PI;

use steklov::bounds::{
    applicable_bounds, best_angle_floor, bound_convex_ngon, bound_rectangle, convex_ngon_constants,
    delta_sup,
};
use steklov::geometry::{rectangle, regular_polygon};

fn main() {
    println!("{:>3} {:>20} {:>20} {:>12}", "n", "delta_n", "sup", "C_n");
    for n in 3..=12 {
        let c = convex_ngon_constants(n);
        println!("{n:>3} {:>20.17} {:>20.17} {:>12.4e}", c.delta_n, delta_sup(n), c.c_n);
    }

    let r = bound_rectangle(4.0, 0.5, 3);
    println!("4 x 0.5 rectangle, sigma_3 <= {:?} ({})", r.value, r.formula);
    for alpha in [0.01, PI / 20.0] {
        let b = bound_convex_ngon(6, alpha, 6.0, 2);
        println!("hexagon, smallest angle {alpha:.4}: sigma_2 <= {:?} ({})", b.value, b.hypothesis_report);
    }

    for (name, d) in [("2 x 1 rectangle", rectangle(2.0, 1.0)), ("regular pentagon", regular_polygon(5, 1.0))] {
        println!("{name}:");
        for a in applicable_bounds(&d, 4) {
            println!("  sigma_{} <= {:?}  [{}]", a.sigma_index, a.result.value, a.result.formula);
        }
    }

    let floor = best_angle_floor(5, 3.0, 5.0, 3);
    println!("pentagon, perimeter 5, sigma_3 = 3: smallest angle >= {floor:.6e}");
}
