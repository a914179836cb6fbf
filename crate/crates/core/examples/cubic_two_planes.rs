//! Cubics containing two disjoint n-planes are rational: the secant
//! through one point of each plane meets the cubic in a third point.

use birat::constructions::{cubic_two_planes_param, random_through_coordinate_planes};
use birat::geom::Hypersurface;
use birat::{FieldSpec, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let f = FieldSpec::prime(101)?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 1..=2 {
        let x = Hypersurface::projective(random_through_coordinate_planes(f, 2 * n + 2, 3, &mut rng)?)?;
        let c = cubic_two_planes_param(&x)?;
        println!("n = {n}: {} table entries", c.table.entries.len());
        println!("  s = {}", c.s);
        println!("  t = {}", c.t);
        println!("  dominant {}, certified {}", c.dominant, c.certified());
    }
    Ok(())
}
