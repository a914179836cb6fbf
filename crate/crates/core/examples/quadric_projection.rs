//! Projection of random smooth quadrics from one of their points.

use birat::constructions::quadric_projection;
use birat::geom::{is_smooth_at, random_point_on, Hypersurface, LinearSubspace};
use birat::{FieldSpec, Polynomial, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let f = FieldSpec::prime(101)?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut done = 0;
    while done < 3 {
        let q = Hypersurface::projective(Polynomial::random_homogeneous(f, 4, 2, &mut rng))?;
        let Some(p) = random_point_on(&q, &mut rng, 100)? else { continue };
        if !is_smooth_at(&q, &p)? {
            continue;
        }
        let coeffs: Vec<_> = (0..4).map(|_| f.random(&mut rng)).collect();
        let h = LinearSubspace::hyperplane(f, &coeffs)?;
        let proj = match quadric_projection(&q, &p, &h) {
            Ok(proj) => proj,
            Err(_) => continue,
        };
        println!("Q = {}", q.defining());
        println!("  from {p}: forward degree {}, inverse degree {}", proj.forward.degree(), proj.inverse.degree());
        println!("  certified: {}", proj.report.certified());
        done += 1;
    }
    Ok(())
}
