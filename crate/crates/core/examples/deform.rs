//! Edge splitting: recovering erased lengths, and the one-parameter family
//! of polygons with equal characteristic polynomial when the split is balanced.

use std::f64::consts::PI;

use steklov::charpoly::{build_charpoly, charpoly_distance};
use steklov::geometry::{edge_split_solve, psi_phi, BoundaryData, EdgeSplitInput, EdgeSplitOutcome};

fn main() {
    let para = BoundaryData::new(vec![2.0, 1.0, 2.0, 1.0], vec![PI / 5.0, 4.0 * PI / 5.0, PI / 5.0, 4.0 * PI / 5.0])
        .expect("parallelogram");
    let (psi, phi) = psi_phi(&para.angles, 2);
    println!("parallelogram, split at 0 and 2: psi {psi:.6}, phi {phi:.6}");
    let base = build_charpoly(&para);
    match edge_split_solve(&EdgeSplitInput::from_data(&para, 2), 2).expect("solve") {
        EdgeSplitOutcome::Unique(d) => println!("unique: {:?}", d.lengths),
        EdgeSplitOutcome::Family(f) => {
            println!("family: x in ({:.4}, {:.4}), y = {:.4} x", f.x_min, f.x_max, f.ratio);
            for x in f.sweep(7) {
                let m = f.member(x);
                let drift = charpoly_distance(&build_charpoly(&m), &base, 1e-9);
                let l: Vec<String> = m.lengths.iter().map(|v| format!("{v:.4}")).collect();
                println!("  x {x:+.4}  lengths [{}]  drift {drift:.1e}", l.join(", "));
            }
        }
    }
}
