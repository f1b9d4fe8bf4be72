//! Angle classes, admissibility verdicts and the invariants shared by every
//! polygon with the same characteristic polynomial.

use std::f64::consts::PI;

use steklov::geometry::{rectangle, BoundaryData};
use steklov::io::parse_polygon_spec;
use steklov::inverse::{admissibility, exceptional_components, invariant_vectors, reduce_polygon, ANGLE_TOL};

fn report(name: &str, d: &BoundaryData) {
    let rep = admissibility(d, ANGLE_TOL, 1e-9);
    println!("{name}");
    println!("  admissible {:?}, weakly edge admissible {:?}", rep.admissible, rep.weakly_edge_admissible);
    for (i, c) in rep.classes.iter().enumerate() {
        println!("  angle {i}: {:?}", c.kind);
    }
    println!("  |c| = {:?}", invariant_vectors(d).c_abs);
    let red = reduce_polygon(d, ANGLE_TOL);
    println!("  reduced perimeter {:.6}, removed {:?}", red.perimeter(), red.removed);
    match exceptional_components(d, ANGLE_TOL) {
        Ok(comps) => {
            for comp in comps {
                println!("  component {} -> {}: lengths {:?}", comp.start_vertex, comp.end_vertex, comp.lengths);
            }
        }
        Err(e) => println!("  no components: {e}"),
    }
    for r in &rep.reasons {
        println!("  note: {r}");
    }
}

fn main() {
    report("unit square", &rectangle(1.0, 1.0));
    let kite = parse_polygon_spec(include_str!("../specs/kite_odd.json")).expect("spec");
    report("kite with odd angles", &kite.data);
    let hex = parse_polygon_spec(include_str!("../specs/hexagon_obtuse.json")).expect("spec");
    report("obtuse hexagon", &hex.data);
    let odd = BoundaryData::new(
        vec![1.0, 1.0, 1.0],
        vec![PI / 3.0, PI / 3.0, PI / 3.0],
    )
    .expect("triangle");
    report("equilateral triangle", &odd);
}
