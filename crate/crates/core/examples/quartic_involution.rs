//! A quartic through two disjoint n-planes carries a birational involution:
//! the fourth point on the transversal line.

use birat::constructions::{
    fermat_hypersurface, fermat_lines, quartic_two_planes_involution, random_through_coordinate_planes,
    split_coordinates,
};
use birat::geom::{random_point_on, subspaces_disjoint, Hypersurface};
use birat::ratmap::{evaluate, Evaluation};
use birat::{FieldSpec, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let f = FieldSpec::prime(101)?;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let x = Hypersurface::projective(random_through_coordinate_planes(f, 4, 4, &mut rng)?)?;
    let inv = quartic_two_planes_involution(&x)?;
    println!("certified: {}", inv.report.certified());
    for _ in 0..3 {
        let Some(p) = random_point_on(&x, &mut rng, 100)? else { continue };
        match evaluate(&inv.map, &p)? {
            Evaluation::Defined(q) => {
                let back = evaluate(&inv.map, &q)?;
                println!("  {p} -> {q} -> {:?}", back.point().map(|b| b.to_string()));
            }
            Evaluation::Undefined => println!("  {p}: undefined"),
        }
    }

    let f17 = FieldSpec::prime(17)?;
    let lines = fermat_lines(4, 1, f17)?;
    let l1 = &lines.lines[0].subspace;
    let l2 = lines.lines.iter().map(|l| &l.subspace).find(|l| subspaces_disjoint(l1, l).unwrap_or(false)).expect("disjoint pair");
    let (y, _) = split_coordinates(&fermat_hypersurface(4, 4, f17)?, l1, l2)?;
    println!("Fermat quartic in split coordinates: {}", y.defining());
    println!("certified: {}", quartic_two_planes_involution(&y)?.report.certified());
    Ok(())
}
