//! Characteristic polynomial of a few polygons, exact and floating.

use std::f64::consts::PI;

use steklov::charpoly::{build_charpoly, build_charpoly_exact, equal_charpoly, reduced_charpoly_check};
use steklov::exact::{parse_rational, ExactBoundaryData};
use steklov::geometry::{rectangle, regular_polygon, BoundaryData};
use steklov::io::parse_polygon_spec;

fn show(name: &str, d: &BoundaryData) {
    let p = build_charpoly(d);
    println!("{name}: {} terms, constant {:+.6}", p.terms.len(), p.constant);
    for (f, a) in &p.terms {
        println!("  {a:+.6} cos({f:.6} t)");
    }
}

fn main() {
    show("unit square", &rectangle(1.0, 1.0));
    show("equilateral triangle", &regular_polygon(3, 1.0));
    let para = BoundaryData::new(vec![2.0, 1.0, 2.0, 1.0], vec![PI / 5.0, 4.0 * PI / 5.0, PI / 5.0, 4.0 * PI / 5.0])
        .expect("parallelogram");
    show("parallelogram pi/5", &para);

    let q = |s: &str| parse_rational(s).unwrap();
    let exact = ExactBoundaryData {
        lengths: vec![q("1"), q("1"), q("1")],
        angles_pi: vec![q("1/3"), q("1/3"), q("1/3")],
    };
    let ep = build_charpoly_exact(&exact);
    println!(
        "exact equilateral agrees with float: {}",
        equal_charpoly(&ep.to_float(), &build_charpoly(&exact.to_float()), 1e-12)
    );
    let kite = parse_polygon_spec(include_str!("../specs/kite_odd.json")).expect("spec");
    show("kite with odd angles", &kite.data);
    let chk = reduced_charpoly_check(&kite.data).expect("weakly edge admissible");
    println!("kite vs its reduced polygon: {chk:?}");
}
