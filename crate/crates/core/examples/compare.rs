//! FEM eigenvalues against quasi-eigenvalues for the unit square and a
//! scalene triangle, with the fitted decay exponent of the differences.
//!
//! `cargo run --release --example compare -- [h] [k] [square|3-4-5]`
//!
//! `h` is the coarsest mesh size for perimeter 4; the solver refines twice.

use steklov::fem::steklov_spectrum_extrapolated;
use steklov::geometry::{rectangle, BoundaryData};
use steklov::quasi::{asymptotic_compare, AsymptoticOptions};

fn main() {
    let mut args = std::env::args().skip(1);
    let h: f64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(0.05);
    let k: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(32);
    let only = args.next();
    let tri = BoundaryData::new(vec![3.0, 4.0, 5.0], vec![
        std::f64::consts::FRAC_PI_2,
        (4.0f64 / 5.0).acos(),
        (3.0f64 / 5.0).acos(),
    ])
    .expect("3-4-5 triangle")
    .normalized();
    let opts = AsymptoticOptions { head_skip: 8, window: Some((8, k)) };
    for (name, data) in [("square", rectangle(1.0, 1.0)), ("3-4-5 triangle", tri)] {
        if only.as_deref().is_some_and(|o| !name.starts_with(o)) {
            continue;
        }
        let ex = steklov_spectrum_extrapolated(&data, h * data.perimeter() / 4.0, k).expect("solve");
        let raw = asymptotic_compare(&ex.finest().sigmas, &data, opts).expect("compare");
        let rich = asymptotic_compare(&ex.sigmas, &data, opts).expect("compare");
        println!("{name}, finest mesh h = {:.5}", ex.finest().mesh_h);
        println!("{:>3} {:>12} {:>12} {:>12} {:>11} {:>11}", "j", "nu", "finest", "extrap", "diff", "diff_ex");
        for j in 0..=k {
            println!(
                "{j:>3} {:>12.6} {:>12.6} {:>12.6} {:>11.3e} {:>11.3e}",
                raw.nu[j], raw.sigma[j], rich.sigma[j], raw.diffs[j], rich.diffs[j]
            );
        }
        println!("log-log slope over 8..={k}: finest {:?}, extrapolated {:?}\n", raw.slope, rich.slope);
    }
}
