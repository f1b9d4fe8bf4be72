//! Recovering blank angles from the side lengths, and a quadrilateral from
//! its angles, one side and the perimeter.

use std::f64::consts::PI;

use steklov::geometry::{
    congruent, quad_from_asa_perimeter, reconstruct_missing_angles, triangle_angles, PartialBoundaryData,
};
use steklov::sampling::random_convex_polygon;
use rand::SeedableRng;

fn main() {
    let t = triangle_angles([3.0, 4.0, 5.0]).expect("triangle");
    println!("3-4-5 angles / pi: {:?}", t.map(|a| a / PI));

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let d = random_convex_polygon(&mut rng, 7, 0.05, 0.02);
    for blanks in [[0usize, 1, 2], [0, 3, 5], [1, 4, 6]] {
        let partial = PartialBoundaryData::blanking(&d, &blanks);
        let back = reconstruct_missing_angles(&partial).expect("reconstruct");
        let err = blanks.iter().map(|&i| (back.angles[i] - d.angles[i]).abs()).fold(0.0, f64::max);
        println!("heptagon, blanks {blanks:?}: max angle error {err:.2e}, congruent {}", congruent(&d, &back, 1e-9));
    }

    let angles = [PI / 2.0, 2.0 * PI / 3.0, PI / 3.0, PI / 2.0];
    let q = quad_from_asa_perimeter(angles, 0, 1.0, 5.0).expect("quad");
    println!("quad from angles, side 1, perimeter 5: lengths {:?}", q.lengths);
}
