//! Quasi-eigenvalues: roots of the characteristic polynomial with multiplicity.

use steklov::charpoly::{build_charpoly, smooth_charpoly};
use steklov::geometry::{rectangle, regular_polygon};
use steklov::quasi::{find_roots, quasi_spectrum_for};

fn main() {
    let square = build_charpoly(&rectangle(1.0, 1.0));
    let spec = find_roots(&square, 6.0).expect("roots");
    println!("unit square, t <= 6");
    for r in &spec.roots {
        println!("  t = {:.10}  mult {}  {}", r.t, r.multiplicity, r.kind.as_str());
    }

    let disk = smooth_charpoly(2.0 * std::f64::consts::PI).expect("disk");
    let d = quasi_spectrum_for(&disk, 9).expect("roots");
    println!("smooth domain of perimeter 2 pi: {:?}", d.values);

    let hex = build_charpoly(&regular_polygon(6, 1.0));
    let h = quasi_spectrum_for(&hex, 12).expect("roots");
    print!("{}", h.to_csv());
}
