//! Finite-element Steklov spectrum of a regular polygon, a square and a
//! triangle, with Richardson extrapolation over three nested meshes.

use std::f64::consts::PI;
use std::time::Instant;

use steklov::fem::steklov_spectrum_extrapolated;
use steklov::geometry::{rectangle, regular_polygon};

fn main() {
    let n = 64;
    // inscribed in the unit circle
    let side = 2.0 * (PI / n as f64).sin();
    let shapes = [
        ("regular 64-gon", regular_polygon(n, side), 0.2),
        ("unit square", rectangle(1.0, 1.0), 0.1),
    ];
    for (name, data, h) in shapes {
        let t = Instant::now();
        let ex = steklov_spectrum_extrapolated(&data, h, 6).expect("solve");
        println!("{name}: {:.2?}", t.elapsed());
        for j in 0..=6 {
            let raw: Vec<String> = ex.levels.iter().map(|l| format!("{:.6}", l.sigmas[j])).collect();
            println!("  sigma_{j} = {:.6}  levels [{}]", ex.sigmas[j], raw.join(", "));
        }
    }
}
