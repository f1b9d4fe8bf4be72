//! Enumerating the polygons that share a characteristic polynomial.

use std::f64::consts::PI;

use rand::SeedableRng;
use steklov::geometry::{rectangle, BoundaryData};
use steklov::inverse::{admissible_cap, enumerate_admissible_candidates, enumerate_weak_candidates, EnumerationOptions};
use steklov::io::parse_polygon_spec;
use steklov::sampling::random_convex_polygon;

fn show(name: &str, d: &BoundaryData) {
    let opts = EnumerationOptions::default();
    match enumerate_admissible_candidates(d, &opts) {
        Ok(set) => {
            println!(
                "{name}: {} candidate(s), cap {:?}, {:?}, case {}",
                set.candidates.len(),
                set.cap,
                set.verdict,
                set.case
            );
            for c in &set.candidates {
                let a: Vec<String> = c.angles.iter().map(|x| format!("{:.4}", x / PI)).collect();
                println!("  angles/pi [{}]", a.join(", "));
            }
        }
        Err(e) => println!("{name}: {e}"),
    }
}

fn main() {
    println!("caps for n = 6: none even {}, one {}, two apart {}, two adjacent {}", 
        admissible_cap(6, &[], None),
        admissible_cap(6, &[0], None),
        admissible_cap(6, &[0, 3], None),
        admissible_cap(6, &[0, 1], None));
    let hex = parse_polygon_spec(include_str!("../specs/hexagon_obtuse.json")).expect("spec");
    show("obtuse hexagon", &hex.data);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    show("random pentagon", &random_convex_polygon(&mut rng, 5, 0.05, 0.02));

    let set = enumerate_weak_candidates(&rectangle(2.0, 1.0), 2.0, 4, &EnumerationOptions::default());
    match set {
        Ok(s) => println!("2 x 1 rectangle, weak mode: {} candidate(s), {:?}", s.candidates.len(), s.verdict),
        Err(e) => println!("2 x 1 rectangle, weak mode: {e}"),
    }
}
